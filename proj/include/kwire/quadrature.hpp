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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "kwire/errors.hpp"
#include "kwire/model.hpp"

namespace kwire {

/// A function of frequency together with the structural facts the integrator
/// needs: where it jumps and how fast it decays. The value type T is double
/// or std::complex<double>.
template <class T>
struct Integrand {
    std::function<T(double)> eval;
    std::vector<double> jump_points;  ///< strictly increasing
    double tail_scale = 1.0;          ///< |eval(w)| <= C exp(-|w| / tail_scale) for large |w|
};

template <class T>
struct QuadratureResult {
    T value{};
    double est_error = 0.0;
    int panels = 0;
    std::vector<int> levels_used;  ///< deepest Romberg level of each panel
};

struct RombergOptions {
    double rel_tol = 1e-10;
    int max_level = 22;       // caps a panel at ~4M evaluations
    int min_level = 4;        // never accept before R(4,4); guards against
                              // accidental agreement on oscillatory panels
    double abs_floor = 1e-15; // acceptance floor for near-zero integrals
};

namespace detail {

template <class T>
double qmag(const T& v) {
    return std::abs(v);
}

/// Romberg integration of a single smooth panel: trapezoid refinements
/// accelerated by Richardson extrapolation, stopping when two successive
/// diagonal entries agree within tolerance.
///
/// The two endpoint samples are nudged one ulp into the panel. Panels are
/// split at the integrand's jump points, so this evaluates the one-sided
/// limits of the smooth piece rather than the sgn(0) = 0 convention value,
/// which would spoil the even-power error expansion.
template <class T, class F>
QuadratureResult<T> romberg_core(F&& f, double lo, double hi, const RombergOptions& opt) {
    if (!(lo < hi)) throw std::invalid_argument("romberg: requires lo < hi");

    const double width = hi - lo;
    std::vector<T> row;  // current row of the extrapolation tableau
    row.reserve(16);
    row.push_back(0.5 * width * (f(std::nextafter(lo, hi)) + f(std::nextafter(hi, lo))));

    T prev_diag = row[0];
    double last_diff = detail::qmag<T>(prev_diag);
    double h = width;
    for (int level = 1; level <= opt.max_level; ++level) {
        h *= 0.5;
        const std::size_t n_new = std::size_t{1} << (level - 1);
        T sum{};
        for (std::size_t k = 0; k < n_new; ++k) sum += f(lo + (2.0 * k + 1.0) * h);

        std::vector<T> next(level + 1);
        next[0] = 0.5 * row[0] + h * sum;
        double pow4 = 1.0;
        for (int m = 1; m <= level; ++m) {
            pow4 *= 4.0;
            next[m] = next[m - 1] + (next[m - 1] - row[m - 1]) / (pow4 - 1.0);
        }
        row = std::move(next);

        const T diag = row.back();
        last_diff = qmag<T>(diag - prev_diag);
        if (level >= opt.min_level &&
            last_diff <= std::max(opt.rel_tol * qmag<T>(diag), opt.abs_floor)) {
            QuadratureResult<T> out;
            out.value = diag;
            out.est_error = last_diff;
            out.panels = 1;
            out.levels_used = {level};
            return out;
        }
        prev_diag = diag;
    }
    throw ConvergenceError(cplx(row.back()), last_diff, lo, hi);
}

inline std::vector<double> panel_edges(const std::vector<double>& jumps, double lo, double hi,
                                       double max_panel_width) {
    std::vector<double> edges{lo};
    for (double c : jumps) {
        if (c > edges.back() && c < hi) edges.push_back(c);
    }
    edges.push_back(hi);

    // subdivide wide panels so the trapezoid rule reaches its asymptotic
    // regime quickly on oscillatory integrands
    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double a = edges[k], b = edges[k + 1];
        const int chunks = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel_width)));
        for (int c = 0; c < chunks; ++c) out.push_back(a + (b - a) * c / chunks);
    }
    out.push_back(hi);
    return out;
}

}  // namespace detail

/// Integrate one smooth panel [lo, hi]; the panel must not contain any of
/// the integrand's jump points in its interior.
template <class T>
QuadratureResult<T> romberg_panel(const Integrand<T>& f, double lo, double hi,
                                  double rel_tol = 1e-10, int max_level = 22) {
    RombergOptions opt;
    opt.rel_tol = rel_tol;
    opt.max_level = max_level;
    return detail::romberg_core<T>(f.eval, lo, hi, opt);
}

/// Integrate over the whole real frequency axis.
///
/// The axis is truncated to [-omega_max, omega_max] with
/// omega_max = 30 max(omega_c, W): the exponential wire cutoff then bounds
/// the discarded tails below ~1e-13 of the integrand scale, and the
/// Lorentzian lead factors only decay faster. The window is split at every
/// declared jump point and each piece is Romberg-integrated; est_error
/// aggregates the per-panel residuals plus the analytic tail bound
/// tail_scale * (|f(-omega_max)| + |f(omega_max)|).
template <class T>
QuadratureResult<T> integrate_line(const Integrand<T>& f, double rel_tol, const ModelParams& p,
                                   double max_panel_width = 4.0) {
    if (!std::is_sorted(f.jump_points.begin(), f.jump_points.end()))
        throw std::invalid_argument("integrate_line: jump_points must be sorted");
    if (!(max_panel_width > 0.0))
        throw std::invalid_argument("integrate_line: max_panel_width must be > 0");

    const double omega_max = 30.0 * std::max(p.omega_c(), p.W);
    const std::vector<double> edges =
        detail::panel_edges(f.jump_points, -omega_max, omega_max, max_panel_width);

    RombergOptions opt;
    opt.rel_tol = rel_tol;

    QuadratureResult<T> total;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const QuadratureResult<T> r = detail::romberg_core<T>(f.eval, edges[k], edges[k + 1], opt);
        total.value += r.value;
        total.est_error += r.est_error;
        total.panels += 1;
        total.levels_used.push_back(r.levels_used.front());
    }

    const double edge_mag =
        detail::qmag<T>(f.eval(-omega_max)) + detail::qmag<T>(f.eval(omega_max));
    total.est_error += f.tail_scale * edge_mag;
    return total;
}

}  // namespace kwire
