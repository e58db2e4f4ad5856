/* Copyright 2026 The kwire authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <utility>

#include "kwire/errors.hpp"
#include "kwire/model.hpp"

namespace kwire {

/// Closed-form perturbed Green functions of the coupled lead-wire-lead
/// system at one frequency.
///
/// The self-energy couples terminal alpha to site 1 and terminal alpha' to
/// site L with amplitude T', so the Dyson equations close on those four
/// orbitals and every perturbed quantity reduces to quotients of unperturbed
/// ones. Construction precomputes the factors shared by all site indices
/// (lead functions, wire corner entries, the two 2x2 determinants); the
/// per-column and per-entry accessors are cheap.
///
/// Retarded quantities are obtained from the advanced chain by conjugation;
/// the unperturbed inputs satisfy that identity exactly and the Dyson
/// equations preserve it.
class PerturbedGreens {
public:
    /// All column-j pieces of the chain at this frequency: the advanced
    /// boundary entries, the advanced terminal entries, and the Keldysh
    /// terminal entries.
    struct Column {
        int j = 0;
        cplx Ga1j, GaLj;    // G^a_{1j}, G^a_{Lj}
        cplx GaAj, GaApj;   // G^a_{alpha j}, G^a_{alpha' j}
        cplx FAj, FApj;     // F_{alpha j}, F_{alpha' j}
    };

    PerturbedGreens(double omega, const ModelParams& p)
        : omega_(omega), p_(p), T_(p.t_prime), T2_(p.t_prime * p.t_prime) {
        const int L = p_.L;
        ga_lead_ = g_lead_a(omega, p_);  // both terminals share the Lorentzian
        gr_lead_ = g_lead_r(omega, p_);
        f_aa_ = f_lead(omega, Side::Left, p_);
        f_apap_ = f_lead(omega, Side::Right, p_);

        ga11_ = g_wire_a(omega, 1, 1, p_);
        gaLL_ = ga11_;                       // depends on |i-j| only
        ga1L_ = g_wire_a(omega, 1, L, p_);
        gaL1_ = ga1L_;
        gr11_ = g_wire_r(omega, 1, 1, p_);
        grLL_ = gr11_;
        gr1L_ = g_wire_r(omega, 1, L, p_);
        grL1_ = gr1L_;
        f11_ = f_wire(omega, 1, 1, p_);
        fLL_ = f11_;
        f1L_ = f_wire(omega, 1, L, p_);
        fL1_ = f1L_;

        den_a_ = (1.0 - ga11_ * T2_ * ga_lead_) * (1.0 - gaLL_ * T2_ * ga_lead_) -
                 ga1L_ * T2_ * ga_lead_ * gaL1_ * T2_ * ga_lead_;
        den_r_ = (1.0 - gr_lead_ * T2_ * gr11_) * (1.0 - gr_lead_ * T2_ * grLL_) -
                 gr_lead_ * T2_ * gr1L_ * gr_lead_ * T2_ * grL1_;
        if (std::abs(den_a_) < 1e-300 || std::abs(den_r_) < 1e-300)
            throw SingularPointError(omega, "vanishing Dyson denominator");
    }

    double omega() const noexcept { return omega_; }
    const ModelParams& params() const noexcept { return p_; }

    /// Determinant of the advanced 2x2 boundary system,
    /// (1 - g^a_11 T'^2 g^a_aa)(1 - g^a_LL T'^2 g^a_a'a')
    ///   - g^a_1L T'^2 g^a_a'a' g^a_L1 T'^2 g^a_aa.
    cplx advanced_denominator() const noexcept { return den_a_; }

    /// Retarded analogue; equals conj(advanced_denominator()).
    cplx retarded_denominator() const noexcept { return den_r_; }

    Column column(int j) const {
        detail::check_site(j, p_);
        const int L = p_.L;
        Column c;
        c.j = j;
        const cplx ga1j = g_wire_a(omega_, 1, j, p_);
        const cplx gaLj = g_wire_a(omega_, L, j, p_);
        c.Ga1j = (ga1j * (1.0 - gaLL_ * T2_ * ga_lead_) + ga1L_ * T2_ * ga_lead_ * gaLj) / den_a_;
        c.GaLj = (gaLj * (1.0 - ga11_ * T2_ * ga_lead_) + ga1j * T2_ * ga_lead_ * gaL1_) / den_a_;
        c.GaAj = ga_lead_ * T_ * c.Ga1j;
        c.GaApj = ga_lead_ * T_ * c.GaLj;
        const cplx f1j = f_wire(omega_, 1, j, p_);
        const cplx fLj = f_wire(omega_, L, j, p_);
        const cplx P = gr_lead_ * T_ * (f1j + f11_ * T_ * c.GaAj + f1L_ * T_ * c.GaApj) +
                       f_aa_ * T_ * c.Ga1j;
        const cplx Q = gr_lead_ * T_ * (fLj + fL1_ * T_ * c.GaAj + fLL_ * T_ * c.GaApj) +
                       f_apap_ * T_ * c.GaLj;
        c.FAj = ((1.0 - gr_lead_ * T2_ * grLL_) * P + gr_lead_ * T2_ * gr1L_ * Q) / den_r_;
        c.FApj = ((1.0 - gr_lead_ * T2_ * gr11_) * Q + gr_lead_ * T2_ * grL1_ * P) / den_r_;
        return c;
    }

    /// (G^a_{1j}, G^a_{Lj})
    std::pair<cplx, cplx> ga_boundary(int j) const {
        const Column c = column(j);
        return {c.Ga1j, c.GaLj};
    }

    /// (G^a_{alpha j}, G^a_{alpha' j})
    std::pair<cplx, cplx> ga_terminal(int j) const {
        const Column c = column(j);
        return {c.GaAj, c.GaApj};
    }

    /// (F_{alpha j}, F_{alpha' j})
    std::pair<cplx, cplx> f_terminal(int j) const {
        const Column c = column(j);
        return {c.FAj, c.FApj};
    }

    /// F_{ij} given a precomputed column j.
    cplx f_full(int i, const Column& c) const {
        detail::check_site(i, p_);
        const int L = p_.L;
        return f_wire(omega_, i, c.j, p_) +
               g_wire_r(omega_, i, 1, p_) * T_ * c.FAj +
               g_wire_r(omega_, i, L, p_) * T_ * c.FApj +
               f_wire(omega_, i, 1, p_) * T_ * c.GaAj +
               f_wire(omega_, i, L, p_) * T_ * c.GaApj;
    }

    cplx f_full(int i, int j) const { return f_full(i, column(j)); }

    /// (G^r_{1L}, G^a_{L1}) with G^r_{1L} = conj(G^a_{L1}); their product is
    /// |G^a_{L1}|^2, the transmission-like factor of the current integrand.
    std::pair<cplx, cplx> gr_1L_and_ga_L1() const {
        const cplx GaL1 = column(1).GaLj;
        return {std::conj(GaL1), GaL1};
    }

private:
    double omega_;
    ModelParams p_;
    double T_, T2_;
    cplx ga_lead_, gr_lead_;    // local lead Green functions (sides identical)
    cplx f_aa_, f_apap_;        // lead Keldysh components, left / right
    cplx ga11_, ga1L_, gaL1_, gaLL_;
    cplx gr11_, gr1L_, grL1_, grLL_;
    cplx f11_, f1L_, fL1_, fLL_;
    cplx den_a_, den_r_;
};

// Single-shot wrappers. For many evaluations at one frequency construct a
// PerturbedGreens once and reuse it.

inline cplx advanced_denominator(double omega, const ModelParams& p) {
    return PerturbedGreens(omega, p).advanced_denominator();
}

inline std::pair<cplx, cplx> ga_boundary(double omega, int j, const ModelParams& p) {
    return PerturbedGreens(omega, p).ga_boundary(j);
}

inline std::pair<cplx, cplx> ga_terminal(double omega, int j, const ModelParams& p) {
    return PerturbedGreens(omega, p).ga_terminal(j);
}

inline std::pair<cplx, cplx> f_terminal(double omega, int j, const ModelParams& p) {
    return PerturbedGreens(omega, p).f_terminal(j);
}

inline cplx f_full(double omega, int i, int j, const ModelParams& p) {
    return PerturbedGreens(omega, p).f_full(i, j);
}

inline std::pair<cplx, cplx> gr_1L_and_ga_L1(double omega, const ModelParams& p) {
    return PerturbedGreens(omega, p).gr_1L_and_ga_L1();
}

}  // namespace kwire
