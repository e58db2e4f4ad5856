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

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace kwire {

using cplx = std::complex<double>;

/// Sign with the symmetric convention sgn(0) = 0. The point is measure-zero
/// for the frequency integrals and this choice keeps the Keldysh components
/// exactly odd.
constexpr double sgn(double x) noexcept {
    return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
}

/// Which lead a terminal belongs to. Left couples at wire site 1 and sits at
/// chemical potential +eV/2, Right couples at site L and sits at -eV/2.
enum class Side { Left, Right };

constexpr Side mirror(Side s) noexcept {
    return s == Side::Left ? Side::Right : Side::Left;
}

/// Physical parameters of the lead-wire-lead system, in units e = hbar = 1
/// with time and length measured isotropically (v_F = 1, a = 1 by default).
struct ModelParams {
    double W = 2.0;        ///< lead band width (Lorentzian half-width)
    double t_prime = 0.5;  ///< lead-wire transfer amplitude T'
    int L = 20;            ///< wire sites; terminals inject at sites 1 and L
    double eV = 0.0;       ///< chemical-potential drop between the leads
    double v_F = 1.0;      ///< Fermi velocity of the linearized wire band
    double a = 1.0;        ///< lattice constant

    /// Density of states of the linearized band.
    static constexpr double rho = 1.0 / (2.0 * std::numbers::pi);

    /// High-energy cutoff of the wire, always recomputed as v_F * pi / a.
    double omega_c() const noexcept { return v_F * std::numbers::pi / a; }

    /// Chemical potential of one lead.
    double mu(Side s) const noexcept { return s == Side::Left ? 0.5 * eV : -0.5 * eV; }

    void validate() const {
        if (!(W > 0.0)) throw std::invalid_argument("ModelParams: W must be > 0");
        if (!(t_prime >= 0.0)) throw std::invalid_argument("ModelParams: t_prime must be >= 0");
        if (L < 2) throw std::invalid_argument("ModelParams: L must be >= 2");
        if (!(v_F > 0.0)) throw std::invalid_argument("ModelParams: v_F must be > 0");
        if (!(a > 0.0)) throw std::invalid_argument("ModelParams: a must be > 0");
    }
};

namespace detail {

inline void check_site(int i, const ModelParams& p) {
    if (i < 1 || i > p.L)
        throw std::out_of_range("wire site index " + std::to_string(i) +
                                " outside 1.." + std::to_string(p.L));
}

}  // namespace detail

// Unperturbed (decoupled, T' = 0) Green functions. Leads are Lorentzian,
// the wire has a linear dispersion with Fermi points shifted to the origin
// and an exponential cutoff at omega_c.

/// Retarded local Green function of either terminal: 1 / (omega + iW).
inline cplx g_lead_r(double omega, const ModelParams& p) noexcept {
    return 1.0 / cplx(omega, p.W);
}

/// Advanced local Green function of either terminal: 1 / (omega - iW).
inline cplx g_lead_a(double omega, const ModelParams& p) noexcept {
    return 1.0 / cplx(omega, -p.W);
}

/// Keldysh component of a lead held at chemical potential +-eV/2:
/// -2iW sgn(omega - mu) / (omega^2 + W^2). Purely imaginary.
inline cplx f_lead(double omega, Side s, const ModelParams& p) noexcept {
    return cplx(0.0, -2.0 * p.W * sgn(omega - p.mu(s)) / (omega * omega + p.W * p.W));
}

/// Retarded wire Green function,
/// -(2 pi i rho / v_F) exp(+i omega |i-j| a / v_F) exp(-|omega| / omega_c).
/// Sites enter only through the separation |i - j|.
inline cplx g_wire_r(double omega, int i, int j, const ModelParams& p) {
    detail::check_site(i, p);
    detail::check_site(j, p);
    const double x = std::abs(i - j) * p.a / p.v_F;
    const double amp = 2.0 * std::numbers::pi * ModelParams::rho / p.v_F;
    const double damp = std::exp(-std::abs(omega) / p.omega_c());
    return cplx(0.0, -amp) * std::polar(damp, omega * x);
}

/// Advanced wire Green function, the conjugate of g_wire_r.
inline cplx g_wire_a(double omega, int i, int j, const ModelParams& p) {
    detail::check_site(i, p);
    detail::check_site(j, p);
    const double x = std::abs(i - j) * p.a / p.v_F;
    const double amp = 2.0 * std::numbers::pi * ModelParams::rho / p.v_F;
    const double damp = std::exp(-std::abs(omega) / p.omega_c());
    return cplx(0.0, amp) * std::polar(damp, -omega * x);
}

/// Keldysh component of the wire at equilibrium (mu = 0):
/// -(4 pi i rho / v_F) cos(omega (i-j) a / v_F) sgn(omega) exp(-|omega| / omega_c).
/// Purely imaginary, odd in omega, symmetric in i <-> j.
inline cplx f_wire(double omega, int i, int j, const ModelParams& p) {
    detail::check_site(i, p);
    detail::check_site(j, p);
    const double x = (i - j) * p.a / p.v_F;
    const double amp = 4.0 * std::numbers::pi * ModelParams::rho / p.v_F;
    const double damp = std::exp(-std::abs(omega) / p.omega_c());
    return cplx(0.0, -amp * std::cos(omega * x) * sgn(omega) * damp);
}

}  // namespace kwire
