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

#include <array>

#include <Eigen/Dense>

#include "kwire/errors.hpp"
#include "kwire/model.hpp"

// Brute-force solver of the Dyson equations by dense linear algebra over the
// finite basis {alpha, 1..L, alpha'}. Deliberately the simplest possible
// route: assemble the full matrices, factorize, solve. It validates every
// closed form in dyson.hpp and generates reference values for the tests.

namespace kwire::oracle {

using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

/// Basis ordering: alpha = 0, wire sites 1..L at their own index, alpha' = L+1.
inline int dim(const ModelParams& p) { return p.L + 2; }
inline constexpr int idx_alpha = 0;
inline int idx_site(int i) { return i; }
inline int idx_alpha_prime(const ModelParams& p) { return p.L + 1; }

struct GreenSet {
    CMat g_r, g_a, f;
};

/// Unperturbed matrices of the disconnected initial state: 1x1 lead blocks
/// at alpha and alpha', an LxL wire block, zero cross blocks.
inline GreenSet unperturbed_matrices(double omega, const ModelParams& p) {
    p.validate();
    const int n = dim(p);
    const int ap = idx_alpha_prime(p);
    GreenSet s{CMat::Zero(n, n), CMat::Zero(n, n), CMat::Zero(n, n)};

    s.g_r(idx_alpha, idx_alpha) = g_lead_r(omega, p);
    s.g_r(ap, ap) = g_lead_r(omega, p);
    s.g_a(idx_alpha, idx_alpha) = g_lead_a(omega, p);
    s.g_a(ap, ap) = g_lead_a(omega, p);
    s.f(idx_alpha, idx_alpha) = f_lead(omega, Side::Left, p);
    s.f(ap, ap) = f_lead(omega, Side::Right, p);

    for (int i = 1; i <= p.L; ++i) {
        for (int j = 1; j <= p.L; ++j) {
            s.g_r(i, j) = g_wire_r(omega, i, j, p);
            s.g_a(i, j) = g_wire_a(omega, i, j, p);
            s.f(i, j) = f_wire(omega, i, j, p);
        }
    }
    return s;
}

/// Self-energy of the lead-wire coupling: exactly four entries of value T',
/// at (alpha,1), (1,alpha), (alpha',L), (L,alpha'). Real symmetric.
inline RMat sigma_matrix(const ModelParams& p) {
    p.validate();
    RMat s = RMat::Zero(dim(p), dim(p));
    const int ap = idx_alpha_prime(p);
    s(idx_alpha, idx_site(1)) = p.t_prime;
    s(idx_site(1), idx_alpha) = p.t_prime;
    s(ap, idx_site(p.L)) = p.t_prime;
    s(idx_site(p.L), ap) = p.t_prime;
    return s;
}

struct DysonSolution {
    CMat G_r, G_a, F;
};

/// Solve the three Dyson equations at one frequency:
///   G_r = (1 - g_r Sigma)^-1 g_r
///   G_a = (1 - g_a Sigma)^-1 g_a
///   F   = (1 - g_r Sigma)^-1 (f + f Sigma G_a)
inline DysonSolution solve_dyson(double omega, const ModelParams& p) {
    const GreenSet s = unperturbed_matrices(omega, p);
    const CMat sigma = sigma_matrix(p).cast<cplx>();
    const int n = dim(p);
    const CMat id = CMat::Identity(n, n);

    const Eigen::PartialPivLU<CMat> lu_r(id - s.g_r * sigma);
    const Eigen::PartialPivLU<CMat> lu_a(id - s.g_a * sigma);
    if (lu_r.rcond() < 1e-14 || lu_a.rcond() < 1e-14)
        throw SingularPointError(omega, "ill-conditioned Dyson system");

    DysonSolution out;
    out.G_r = lu_r.solve(s.g_r);
    out.G_a = lu_a.solve(s.g_a);
    out.F = lu_r.solve(s.f + s.f * sigma * out.G_a);
    return out;
}

/// Fast path restricted to the coupled subspace {alpha, 1, L, alpha'}: the
/// self-energy has rank <= 4, so the Dyson equations close on those four
/// rows and the rest follows by back-substitution. Cross-checked against
/// solve_dyson by the tests; results agree to machine precision.
inline DysonSolution solve_dyson_reduced(double omega, const ModelParams& p) {
    const GreenSet s = unperturbed_matrices(omega, p);
    const int n = dim(p);
    const int ap = idx_alpha_prime(p);
    const std::array<int, 4> sub{idx_alpha, idx_site(1), idx_site(p.L), ap};

    Eigen::Matrix4d sigma4 = Eigen::Matrix4d::Zero();
    sigma4(0, 1) = sigma4(1, 0) = p.t_prime;  // alpha <-> site 1
    sigma4(3, 2) = sigma4(2, 3) = p.t_prime;  // alpha' <-> site L
    const Eigen::Matrix4cd sig4 = sigma4.cast<cplx>();

    auto rows = [&](const CMat& m) {
        CMat r(4, n);
        for (int k = 0; k < 4; ++k) r.row(k) = m.row(sub[k]);
        return r;
    };
    auto cols = [&](const CMat& m) {
        CMat c(n, 4);
        for (int k = 0; k < 4; ++k) c.col(k) = m.col(sub[k]);
        return c;
    };
    auto block4 = [&](const CMat& m) {
        Eigen::Matrix4cd b;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) b(r, c) = m(sub[r], sub[c]);
        return b;
    };

    const Eigen::Matrix4cd id4 = Eigen::Matrix4cd::Identity();
    const Eigen::PartialPivLU<Eigen::Matrix4cd> lu_r(id4 - block4(s.g_r) * sig4);
    const Eigen::PartialPivLU<Eigen::Matrix4cd> lu_a(id4 - block4(s.g_a) * sig4);
    if (lu_r.rcond() < 1e-14 || lu_a.rcond() < 1e-14)
        throw SingularPointError(omega, "ill-conditioned reduced Dyson system");

    DysonSolution out;
    const CMat Gr_rows = lu_r.solve(rows(s.g_r));
    const CMat Ga_rows = lu_a.solve(rows(s.g_a));
    out.G_r = s.g_r + cols(s.g_r) * sig4 * Gr_rows;
    out.G_a = s.g_a + cols(s.g_a) * sig4 * Ga_rows;
    const CMat F_rows = lu_r.solve(rows(s.f) + block4(s.f) * sig4 * Ga_rows);
    out.F = s.f + cols(s.g_r) * sig4 * F_rows + cols(s.f) * sig4 * Ga_rows;
    return out;
}

}  // namespace kwire::oracle
