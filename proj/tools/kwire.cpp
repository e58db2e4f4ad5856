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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kwire/io.hpp"
#include "kwire/validate.hpp"

namespace {

struct CommonOpts {
    double w = 2.0;
    double t_prime = 0.5;
    int wire_length = 20;
    double rel_tol = 1e-10;
    std::string out = "-";
};

void add_model_flags(CLI::App* cmd, CommonOpts& o, bool with_out = true) {
    cmd->add_option("--w", o.w, "lead band width W")->capture_default_str();
    cmd->add_option("--t-prime", o.t_prime, "lead-wire coupling T'")->capture_default_str();
    cmd->add_option("--wire-length", o.wire_length, "number of wire sites L")
        ->capture_default_str();
    cmd->add_option("--rel-tol", o.rel_tol, "relative quadrature tolerance")
        ->capture_default_str();
    if (with_out)
        cmd->add_option("--out", o.out, "output path, '-' for stdout")->capture_default_str();
}

kwire::ModelParams to_params(const CommonOpts& o) {
    kwire::ModelParams p;
    p.W = o.w;
    p.t_prime = o.t_prime;
    p.L = o.wire_length;
    p.validate();
    return p;
}

/// Write the CSV (possibly partial) and map the sweep status to an exit
/// code: 0 clean, 3 when any row failed to converge.
int emit(const kwire::SweepResult& s, const std::string& out) {
    const std::string csv = kwire::to_csv(s);
    if (out == "-") {
        std::cout << csv;
    } else {
        std::ofstream file(out, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output file '" << out << "'\n";
            return 2;
        }
        file << csv;
    }
    if (!s.all_ok()) {
        for (const auto& r : s.rows)
            if (!r.ok) std::cerr << "error: row " << kwire::format_sig12(r.x) << ": " << r.error
                                 << "\n";
        return 3;
    }
    return 0;
}

int run_validate(const CommonOpts& o) {
    const kwire::ValidationReport report = kwire::run_validation(to_params(o), o.rel_tol);
    for (const kwire::CheckResult& c : report.checks)
        std::printf("[%s] %-55s worst %.3e (limit %.1e)\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.worst, c.threshold);
    if (report.all_pass()) {
        std::printf("PASS %d/%d\n", report.passed(), report.total());
        return 0;
    }
    std::printf("FAIL %d/%d\n", report.total() - report.passed(), report.total());
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "kwire: steady-state correlations and current of a quantum wire between biased "
        "leads.\nRows of a sweep run concurrently; set KWIRE_THREADS to cap the workers."};
    app.require_subcommand(1);

    CommonOpts opts;

    int site_i = 4, site_j = 8, separation = 4;
    std::string ev_grid = "0:2:0.05";
    double ev_scalar = 1.0;

    CLI::App* sweep = app.add_subcommand(
        "sweep-bias", "correlation C_ij against the chemical-potential drop eV");
    add_model_flags(sweep, opts);
    sweep->add_option("--i", site_i, "first site index")->capture_default_str();
    sweep->add_option("--j", site_j, "second site index")->capture_default_str();
    sweep->add_option("--ev", ev_grid, "bias grid start:stop:step or a single value")
        ->capture_default_str();

    CLI::App* profile = app.add_subcommand(
        "profile", "correlation profile over the wire at fixed bias; distance mode (--i) "
                   "sweeps C_{i0,i}, position mode (--d) sweeps C_{i,i+d}");
    add_model_flags(profile, opts);
    CLI::Option* opt_i = profile->add_option("--i", site_i, "anchor site i0 (distance mode)");
    CLI::Option* opt_d = profile->add_option("--d", separation, "separation d (position mode)");
    profile->add_option("--ev", ev_scalar, "bias eV")->capture_default_str();
    opt_i->excludes(opt_d);

    CLI::App* iv = app.add_subcommand("iv", "current against the chemical-potential drop eV");
    add_model_flags(iv, opts);
    std::string iv_grid = "0:2:0.1";
    iv->add_option("--ev", iv_grid, "bias grid start:stop:step or a single value")
        ->capture_default_str();

    CLI::App* validate = app.add_subcommand(
        "validate", "run the internal consistency battery and report PASS/FAIL");
    add_model_flags(validate, opts, /*with_out=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sweep->parsed()) {
            const kwire::ModelParams p = to_params(opts);
            return emit(kwire::sweep_bias(site_i, site_j, kwire::parse_grid(ev_grid), p,
                                          opts.rel_tol),
                        opts.out);
        }
        if (profile->parsed()) {
            if (opt_i->count() == 0 && opt_d->count() == 0)
                throw std::invalid_argument("profile: give --i (distance) or --d (position)");
            const kwire::ModelParams p = to_params(opts);
            const kwire::SweepResult s =
                opt_i->count() > 0 ? kwire::sweep_distance(site_i, p, ev_scalar, opts.rel_tol)
                                   : kwire::sweep_position(separation, p, ev_scalar, opts.rel_tol);
            return emit(s, opts.out);
        }
        if (iv->parsed()) {
            const kwire::ModelParams p = to_params(opts);
            return emit(kwire::sweep_iv(kwire::parse_grid(iv_grid), p, opts.rel_tol), opts.out);
        }
        if (validate->parsed()) return run_validate(opts);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
