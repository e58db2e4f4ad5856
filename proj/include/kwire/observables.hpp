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
#include <limits>
#include <string>
#include <vector>

#include "kwire/dyson.hpp"
#include "kwire/parallel.hpp"
#include "kwire/quadrature.hpp"

namespace kwire {

struct CorrelationPoint {
    int i = 0, j = 0;
    double eV = 0.0;
    double value = 0.0;
    double est_error = 0.0;
};

struct CurrentPoint {
    double eV = 0.0;
    double value = 0.0;
    double est_error = 0.0;
};

namespace detail {

/// Jump points of the steady-state integrands: the lead sgn factors switch
/// at +-eV/2 and the wire one at 0.
inline std::vector<double> bias_jumps(const ModelParams& p) {
    const double half = 0.5 * std::abs(p.eV);
    if (half == 0.0) return {0.0};
    return {-half, 0.0, half};
}

inline constexpr double inv_two_pi = ModelParams::rho;  // 1/(2 pi)

// frequencies at which the reality of the integrands is spot-checked
inline constexpr double reality_spots[] = {-2.3, -0.7, 0.41, 1.3, 2.9};

}  // namespace detail

/// One-particle correlation C_ij = <c_i^dag c_j + c_j^dag c_i>, evaluated as
/// the frequency integral of -(i/2)(F_ij + F_ji) / (2 pi).
///
/// The anti-Hermiticity of F makes the integrand real and equal to
/// Im F_ij / (2 pi); the real part is integrated and the identity is
/// spot-checked at a few frequencies. Symmetric under i <-> j by
/// construction of the symmetrized integrand.
inline CorrelationPoint correlation(int i, int j, const ModelParams& p, double rel_tol = 1e-10) {
    p.validate();
    detail::check_site(i, p);
    detail::check_site(j, p);

    auto sym_imag = [p, i, j](double w) {
        const PerturbedGreens g(w, p);
        const cplx f_ij = g.f_full(i, g.column(j));
        const cplx f_ji = g.f_full(j, g.column(i));
        return 0.5 * (f_ij.imag() + f_ji.imag());
    };

    for (double w : detail::reality_spots) {
        const PerturbedGreens g(w, p);
        const cplx f_ij = g.f_full(i, g.column(j));
        const cplx f_ji = g.f_full(j, g.column(i));
        const double scale = std::max(1.0, std::abs(f_ij));
        // Im part of -(i/2)(F_ij + F_ji) and the single-path shortcut
        if (std::abs(0.5 * (f_ij.real() + f_ji.real())) > 1e-12 * scale ||
            std::abs(0.5 * (f_ij.imag() + f_ji.imag()) - f_ij.imag()) > 1e-12 * scale)
            throw std::runtime_error("correlation: integrand failed the reality check");
    }

    Integrand<double> f;
    f.eval = [sym_imag](double w) { return sym_imag(w) * detail::inv_two_pi; };
    f.jump_points = detail::bias_jumps(p);
    f.tail_scale = p.omega_c();

    try {
        const QuadratureResult<double> r = integrate_line(f, rel_tol, p);
        return {i, j, p.eV, r.value, r.est_error};
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(e.best_estimate(), e.est_error(), e.panel_lo(), e.panel_hi(),
                               "C_{" + std::to_string(i) + "," + std::to_string(j) +
                                   "} at eV = " + std::to_string(p.eV));
    }
}

/// Steady current through the wire (units e = hbar = 1):
///   I = (T'^4 / 2) Int dw/2pi |G^a_L1|^2
///       { (g^a_aa - g^r_aa) f_a'a' + f_aa (g^r_a'a' - g^a_a'a') }.
/// The braced factor is a product of purely imaginary numbers, hence exactly
/// real; it vanishes identically at eV = 0.
inline CurrentPoint current(const ModelParams& p, double rel_tol = 1e-10) {
    p.validate();
    const double t4 = p.t_prime * p.t_prime * p.t_prime * p.t_prime;

    auto braced = [p](double w) {
        const cplx diff = g_lead_a(w, p) - g_lead_r(w, p);
        return diff * f_lead(w, Side::Right, p) + f_lead(w, Side::Left, p) * (-diff);
    };

    for (double w : detail::reality_spots) {
        if (std::abs(braced(w).imag()) > 1e-12)
            throw std::runtime_error("current: integrand failed the reality check");
    }

    Integrand<double> f;
    f.eval = [p, t4, braced](double w) {
        const PerturbedGreens g(w, p);
        const cplx ga_L1 = g.gr_1L_and_ga_L1().second;
        return 0.5 * t4 * std::norm(ga_L1) * braced(w).real() * detail::inv_two_pi;
    };
    f.jump_points = detail::bias_jumps(p);
    f.tail_scale = p.omega_c();

    const QuadratureResult<double> r = integrate_line(f, rel_tol, p);
    return {p.eV, r.value, r.est_error};
}

/// A tagged table of (independent variable, observable) rows, ready for CSV
/// emission. Failed rows keep their grid position and are flagged not-ok.
struct SweepResult {
    std::string x_name;
    std::string y_name;
    bool integer_x = false;

    struct Row {
        double x = 0.0;
        double value = std::numeric_limits<double>::quiet_NaN();
        double est_error = std::numeric_limits<double>::quiet_NaN();
        bool ok = false;
        std::string error;
    };
    std::vector<Row> rows;

    bool all_ok() const {
        for (const Row& r : rows)
            if (!r.ok) return false;
        return true;
    }
};

namespace detail {

inline void check_grid(const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw std::invalid_argument("sweep: grid must be sorted");
}

template <class Fn>
SweepResult run_sweep(std::string x_name, std::string y_name, bool integer_x,
                      std::size_t n, Fn&& point_at) {
    SweepResult s;
    s.x_name = std::move(x_name);
    s.y_name = std::move(y_name);
    s.integer_x = integer_x;
    s.rows.resize(n);
    parallel_for(n, [&](std::size_t k) {
        SweepResult::Row& row = s.rows[k];
        try {
            point_at(k, row);
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
            row.value = std::numeric_limits<double>::quiet_NaN();
            row.est_error = std::numeric_limits<double>::quiet_NaN();
        }
    });
    return s;
}

}  // namespace detail

/// C_ij against the chemical-potential drop eV, one row per grid value.
inline SweepResult sweep_bias(int i, int j, const std::vector<double>& eV_grid,
                              const ModelParams& p, double rel_tol = 1e-10) {
    p.validate();
    detail::check_site(i, p);
    detail::check_site(j, p);
    detail::check_grid(eV_grid);
    return detail::run_sweep("eV", "C", false, eV_grid.size(),
                             [&](std::size_t k, SweepResult::Row& row) {
                                 row.x = eV_grid[k];
                                 ModelParams q = p;
                                 q.eV = eV_grid[k];
                                 const CorrelationPoint c = correlation(i, j, q, rel_tol);
                                 row.value = c.value;
                                 row.est_error = c.est_error;
                             });
}

/// Distance profile C_{i0,i} for i = 1..L at fixed bias.
inline SweepResult sweep_distance(int i0, const ModelParams& p, double eV,
                                  double rel_tol = 1e-10) {
    p.validate();
    detail::check_site(i0, p);
    ModelParams q = p;
    q.eV = eV;
    return detail::run_sweep("i", "C", true, static_cast<std::size_t>(p.L),
                             [&, q](std::size_t k, SweepResult::Row& row) {
                                 const int i = static_cast<int>(k) + 1;
                                 row.x = i;
                                 const CorrelationPoint c = correlation(i0, i, q, rel_tol);
                                 row.value = c.value;
                                 row.est_error = c.est_error;
                             });
}

/// Fixed-separation profile C_{i,i+d} for i = 1..L-d at fixed bias.
inline SweepResult sweep_position(int d, const ModelParams& p, double eV,
                                  double rel_tol = 1e-10) {
    p.validate();
    if (d < 1 || d >= p.L)
        throw std::invalid_argument("sweep_position: need 1 <= d < L");
    ModelParams q = p;
    q.eV = eV;
    return detail::run_sweep("i", "C", true, static_cast<std::size_t>(p.L - d),
                             [&, q](std::size_t k, SweepResult::Row& row) {
                                 const int i = static_cast<int>(k) + 1;
                                 row.x = i;
                                 const CorrelationPoint c = correlation(i, i + d, q, rel_tol);
                                 row.value = c.value;
                                 row.est_error = c.est_error;
                             });
}

/// Current-voltage characteristic, one row per grid value.
inline SweepResult sweep_iv(const std::vector<double>& eV_grid, const ModelParams& p,
                            double rel_tol = 1e-10) {
    p.validate();
    detail::check_grid(eV_grid);
    return detail::run_sweep("eV", "I", false, eV_grid.size(),
                             [&](std::size_t k, SweepResult::Row& row) {
                                 row.x = eV_grid[k];
                                 ModelParams q = p;
                                 q.eV = eV_grid[k];
                                 const CurrentPoint c = current(q, rel_tol);
                                 row.value = c.value;
                                 row.est_error = c.est_error;
                             });
}

}  // namespace kwire
