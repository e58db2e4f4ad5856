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

#include <complex>
#include <stdexcept>
#include <string>

namespace kwire {

/// Thrown when a linear system (or a closed-form denominator) is too close
/// to singular to evaluate. Never observed for W > 0 on the real axis.
class SingularPointError : public std::runtime_error {
public:
    explicit SingularPointError(double omega, const std::string& what_happened)
        : std::runtime_error("singular point at omega = " + std::to_string(omega) +
                             ": " + what_happened),
          omega_(omega) {}

    double omega() const noexcept { return omega_; }

private:
    double omega_;
};

/// Thrown when a Romberg panel fails to reach the requested tolerance at the
/// maximum refinement level. Carries the best estimate obtained so far.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(std::complex<double> best, double est_error, double lo, double hi,
                     const std::string& context = {})
        : std::runtime_error("quadrature did not converge on panel [" +
                             std::to_string(lo) + ", " + std::to_string(hi) +
                             "], residual " + std::to_string(est_error) +
                             (context.empty() ? "" : " (" + context + ")")),
          best_(best), est_error_(est_error), lo_(lo), hi_(hi) {}

    std::complex<double> best_estimate() const noexcept { return best_; }
    double est_error() const noexcept { return est_error_; }
    double panel_lo() const noexcept { return lo_; }
    double panel_hi() const noexcept { return hi_; }

private:
    std::complex<double> best_;
    double est_error_;
    double lo_, hi_;
};

}  // namespace kwire
