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

#include <limits>
#include <random>
#include <string>
#include <vector>

#include "kwire/dyson.hpp"
#include "kwire/observables.hpp"
#include "kwire/oracle.hpp"

// Self-contained consistency battery: closed forms against the dense matrix
// solver, structural identities, and the basic nulls and symmetries of the
// observables. Used by the CLI validate subcommand and by the tests.

namespace kwire {

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;      ///< largest violation measure observed
    double threshold = 0.0;  ///< what it was compared against
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    int passed() const {
        int n = 0;
        for (const CheckResult& c : checks) n += c.pass ? 1 : 0;
        return n;
    }
    int total() const { return static_cast<int>(checks.size()); }
    bool all_pass() const { return passed() == total(); }
};

namespace detail {

/// Deviation |x - y| measured against the acceptance band: relative rel_tol
/// for |y| >= 1e-6, absolute 1e-12 below. Returns the ratio to the band, so
/// <= 1 passes.
inline double oracle_excess(cplx x, cplx y, double rel_tol) {
    const double allowed = std::abs(y) < 1e-6 ? 1e-12 : rel_tol * std::abs(y);
    return std::abs(x - y) / allowed;
}

}  // namespace detail

/// Closed-form chain against the dense matrix solve over random
/// (omega, i, j, eV) tuples. Reports the worst deviation in units of the
/// acceptance band (pass iff <= 1).
inline CheckResult check_oracle_equivalence(const ModelParams& p, double rel_tol = 1e-10,
                                            int tuples = 100, unsigned seed = 20260808u) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> omega_dist(-3.0 * p.omega_c(), 3.0 * p.omega_c());
    std::uniform_real_distribution<double> ev_dist(-2.0, 2.0);
    std::uniform_int_distribution<int> site_dist(1, p.L);

    double worst = 0.0;
    for (int t = 0; t < tuples; ++t) {
        ModelParams q = p;
        q.eV = ev_dist(rng);
        const double w = omega_dist(rng);
        const int i = site_dist(rng);
        const int j = site_dist(rng);

        const oracle::DysonSolution sol = oracle::solve_dyson(w, q);
        const int a = oracle::idx_alpha;
        const int ap = oracle::idx_alpha_prime(q);

        const PerturbedGreens g(w, q);
        const PerturbedGreens::Column col = g.column(j);

        auto track = [&](cplx x, cplx y) {
            worst = std::max(worst, detail::oracle_excess(x, y, rel_tol));
        };
        track(col.Ga1j, sol.G_a(1, j));
        track(col.GaLj, sol.G_a(q.L, j));
        track(col.GaAj, sol.G_a(a, j));
        track(col.GaApj, sol.G_a(ap, j));
        track(col.FAj, sol.F(a, j));
        track(col.FApj, sol.F(ap, j));
        track(g.f_full(i, col), sol.F(i, j));
        const auto [gr_1L, ga_L1] = g.gr_1L_and_ga_L1();
        track(gr_1L, sol.G_r(1, q.L));
        track(ga_L1, sol.G_a(q.L, 1));
    }
    return {"oracle equivalence (closed forms vs matrix solve)", worst <= 1.0, worst, 1.0};
}

/// Conjugation and anti-Hermiticity: G_r^dag = G_a and F^dag = -F for the
/// matrix solver, the same identities for the closed forms, and the Dyson
/// residuals of all three solved equations.
inline CheckResult check_identities(const ModelParams& p, int samples = 20,
                                    unsigned seed = 7u) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> omega_dist(-3.0 * p.omega_c(), 3.0 * p.omega_c());
    std::uniform_real_distribution<double> ev_dist(-2.0, 2.0);
    std::uniform_int_distribution<int> site_dist(1, p.L);

    double worst = 0.0;
    for (int t = 0; t < samples; ++t) {
        ModelParams q = p;
        q.eV = ev_dist(rng);
        const double w = omega_dist(rng);

        const oracle::GreenSet u = oracle::unperturbed_matrices(w, q);
        const oracle::CMat sigma = oracle::sigma_matrix(q).cast<cplx>();
        const oracle::DysonSolution sol = oracle::solve_dyson(w, q);

        worst = std::max(worst, (sol.G_r.adjoint() - sol.G_a).cwiseAbs().maxCoeff());
        worst = std::max(worst, (sol.F.adjoint() + sol.F).cwiseAbs().maxCoeff());
        worst = std::max(worst,
                         (sol.G_r - u.g_r - u.g_r * sigma * sol.G_r).cwiseAbs().maxCoeff());
        worst = std::max(worst,
                         (sol.G_a - u.g_a - u.g_a * sigma * sol.G_a).cwiseAbs().maxCoeff());
        worst = std::max(
            worst,
            (sol.F - u.f - u.g_r * sigma * sol.F - u.f * sigma * sol.G_a).cwiseAbs().maxCoeff());

        const PerturbedGreens g(w, q);
        worst = std::max(worst, std::abs(g.retarded_denominator() -
                                         std::conj(g.advanced_denominator())));
        const int i = site_dist(rng);
        const int j = site_dist(rng);
        worst = std::max(worst, std::abs(g.f_full(i, j) + std::conj(g.f_full(j, i))));
    }
    return {"conjugation, anti-Hermiticity, Dyson residuals", worst < 1e-12, worst, 1e-12};
}

/// The three Lorentzian lead forms are mutually consistent:
/// f = (g_r - g_a) sgn(omega - mu) for each side.
inline CheckResult check_lead_consistency(const ModelParams& p, int samples = 100,
                                          unsigned seed = 11u) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> omega_dist(-3.0 * p.omega_c(), 3.0 * p.omega_c());
    std::uniform_real_distribution<double> ev_dist(-2.0, 2.0);

    double worst = 0.0;
    for (int t = 0; t < samples; ++t) {
        ModelParams q = p;
        q.eV = ev_dist(rng);
        const double w = omega_dist(rng);
        for (Side s : {Side::Left, Side::Right}) {
            const cplx expected =
                (g_lead_r(w, q) - g_lead_a(w, q)) * sgn(w - q.mu(s));
            worst = std::max(worst, std::abs(f_lead(w, s, q) - expected));
        }
    }
    return {"lead consistency f = (g_r - g_a) sgn(omega -+ eV/2)", worst < 1e-14, worst, 1e-14};
}

/// The closed-form denominators stay away from zero on the real axis.
inline CheckResult check_denominator_scan(const ModelParams& p, int points = 20001) {
    double min_mag = std::numeric_limits<double>::infinity();
    const double span = 3.0 * p.omega_c();
    for (int k = 0; k < points; ++k) {
        const double w = -span + 2.0 * span * k / (points - 1);
        const PerturbedGreens g(w, p);
        min_mag = std::min(min_mag, std::abs(g.advanced_denominator()));
        min_mag = std::min(min_mag, std::abs(g.retarded_denominator()));
    }
    return {"denominators bounded away from zero", min_mag > 1e-12, min_mag, 1e-12};
}

/// Reduced 4x4 solver agrees with the full dense solve.
inline CheckResult check_reduced_solver(const ModelParams& p, int samples = 10,
                                        unsigned seed = 13u) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> omega_dist(-3.0 * p.omega_c(), 3.0 * p.omega_c());
    std::uniform_real_distribution<double> ev_dist(-2.0, 2.0);

    double worst = 0.0;
    for (int t = 0; t < samples; ++t) {
        ModelParams q = p;
        q.eV = ev_dist(rng);
        const double w = omega_dist(rng);
        const oracle::DysonSolution full = oracle::solve_dyson(w, q);
        const oracle::DysonSolution red = oracle::solve_dyson_reduced(w, q);
        worst = std::max(worst, (full.G_r - red.G_r).cwiseAbs().maxCoeff());
        worst = std::max(worst, (full.G_a - red.G_a).cwiseAbs().maxCoeff());
        worst = std::max(worst, (full.F - red.F).cwiseAbs().maxCoeff());
    }
    return {"reduced coupled-subspace solve matches full solve", worst < 1e-12, worst, 1e-12};
}

/// T' = 0 decouples the wire: correlations and current vanish.
inline CheckResult check_decoupled_null(const ModelParams& p, double rel_tol = 1e-10) {
    ModelParams q = p;
    q.t_prime = 0.0;
    q.eV = 1.0;
    double worst = std::abs(correlation(3, 7, q, rel_tol).value);
    worst = std::max(worst, std::abs(correlation(4, 8, q, rel_tol).value));
    worst = std::max(worst, std::abs(current(q, rel_tol).value));
    return {"decoupled limit nulls (T' = 0)", worst < 1e-12, worst, 1e-12};
}

/// I(0) = 0 and I(-eV) = -I(eV).
inline CheckResult check_current_symmetry(const ModelParams& p, double rel_tol = 1e-10) {
    ModelParams q = p;
    q.eV = 0.0;
    double worst = std::abs(current(q, rel_tol).value);
    for (double ev : {0.5, 1.0, 2.0}) {
        ModelParams qp = p;
        qp.eV = ev;
        ModelParams qm = p;
        qm.eV = -ev;
        worst = std::max(worst,
                         std::abs(current(qp, rel_tol).value + current(qm, rel_tol).value));
    }
    return {"current null at eV = 0 and antisymmetry in eV", worst < 1e-10, worst, 1e-10};
}

/// C_ij(eV) = C_{L+1-i, L+1-j}(-eV).
inline CheckResult check_mirror_bias_symmetry(const ModelParams& p, double rel_tol = 1e-10) {
    double worst = 0.0;
    for (double ev : {0.2, 1.0, 1.6}) {
        ModelParams qp = p;
        qp.eV = ev;
        ModelParams qm = p;
        qm.eV = -ev;
        const double lhs = correlation(4, 8, qp, rel_tol).value;
        const double rhs = correlation(p.L + 1 - 4, p.L + 1 - 8, qm, rel_tol).value;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return {"mirror/bias symmetry of C_ij", worst < 1e-8, worst, 1e-8};
}

/// Run the whole battery at the given parameters. rel_tol loosens only the
/// oracle-equivalence comparison; identity thresholds are structural.
inline ValidationReport run_validation(const ModelParams& p, double rel_tol = 1e-10) {
    p.validate();
    ValidationReport report;
    report.checks.push_back(check_oracle_equivalence(p, rel_tol));
    report.checks.push_back(check_identities(p));
    report.checks.push_back(check_lead_consistency(p));
    report.checks.push_back(check_denominator_scan(p));
    report.checks.push_back(check_reduced_solver(p));
    report.checks.push_back(check_decoupled_null(p));
    report.checks.push_back(check_current_symmetry(p));
    report.checks.push_back(check_mirror_bias_symmetry(p));
    return report;
}

}  // namespace kwire
