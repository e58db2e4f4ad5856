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

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "kwire/observables.hpp"

namespace kwire {

/// Fixed 12-significant-digit scientific notation; diff-able and identical
/// across runs.
inline std::string format_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

/// Parse either a single value "x" or an inclusive grid "start:stop:step".
/// The stop endpoint is included when it lies within half a step.
inline std::vector<double> parse_grid(const std::string& text) {
    const auto bad = [&](const char* why) {
        throw std::invalid_argument("grid '" + text + "': " + why);
    };
    const auto to_double = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            bad("not a number");
        }
        if (used != s.size()) bad("trailing characters");
        return v;
    };

    const std::size_t c1 = text.find(':');
    if (c1 == std::string::npos) return {to_double(text)};

    const std::size_t c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos || text.find(':', c2 + 1) != std::string::npos)
        bad("expected start:stop:step");
    const double start = to_double(text.substr(0, c1));
    const double stop = to_double(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = to_double(text.substr(c2 + 1));
    if (!(step > 0.0)) bad("step must be > 0");
    if (start > stop) bad("start must be <= stop");

    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double v = start + k * step;
        if (v > stop + 0.5 * step) break;
        grid.push_back(v);
    }
    return grid;
}

/// CSV emission: header row, one data row per sweep row, 12 significant
/// digits, LF line endings. Failed rows are flagged nan.
inline std::string to_csv(const SweepResult& s) {
    std::string out;
    out += s.x_name + ',' + s.y_name + ",est_error\n";
    for (const SweepResult::Row& r : s.rows) {
        out += s.integer_x ? std::to_string(static_cast<long long>(r.x)) : format_sig12(r.x);
        if (r.ok)
            out += ',' + format_sig12(r.value) + ',' + format_sig12(r.est_error) + '\n';
        else
            out += ",nan,nan\n";
    }
    return out;
}

inline void write_csv(std::ostream& os, const SweepResult& s) { os << to_csv(s); }

}  // namespace kwire
