/*
Copyright 2026 The ocsched Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "ocsched/harness/run.hpp"
#include "ocsched/harness/scenario_file.hpp"

namespace ocsched::harness {

inline constexpr const char *kCsvHeader = "scenario,algorithm,nodes,ocs,size_mb,mode,cct_us,reconfigs,status,wall_s";

/// Cartesian product of scenario axes; every other parameter is shared.
struct SweepGrid {
    std::vector<Algorithm> algorithms;
    std::vector<std::size_t> nodes;
    std::vector<std::size_t> ocs;
    std::vector<double> sizes_mb;
    std::vector<Mode> modes;
    double bandwidth_gbps = 200.0;
    double t_recfg_us = 200.0;
    double sync_latency_us = 0.0;
    double time_budget_s = kDefaultTimeBudgetS;

    std::size_t point_count() const {
        return algorithms.size() * nodes.size() * ocs.size() * sizes_mb.size();
    }
    std::size_t row_count() const { return point_count() * modes.size(); }
};

/// `lo..hi` doubling from lo while <= hi (with a little slack for decimal
/// sizes such as 1.6 * 2^8 = 409.6).
inline std::vector<double> doubling_range(double lo, double hi) {
    if (!(lo > 0.0) || hi < lo) {
        throw std::invalid_argument("bad doubling range");
    }
    std::vector<double> out;
    for (int n = 0;; ++n) {
        const double v = lo * std::ldexp(1.0, n);
        if (v > hi * (1.0 + 1e-9)) {
            break;
        }
        // snap to the decimal the user would have typed
        out.push_back(std::round(v * 1e9) / 1e9);
    }
    return out;
}

/**
 * @brief Reads a `[sweep]` document:
 *
 *     [sweep]
 *     algorithms = rabenseifner, pairwise, bruck
 *     nodes = 8, 16
 *     ocs_count = 4
 *     sizes_mb = 1.6..409.6      # doubling; or an explicit list
 *     modes = oneshot, strawman, swot-heuristic, ideal
 *     bandwidth_gbps = 200
 *     t_recfg_us = 200
 *     sync_latency_us = 0
 *     time_budget_s = 90
 *
 * Lists may be empty, which yields an empty grid.
 */
inline SweepGrid parse_sweep(std::istream &in) {
    using detail::parse_value;
    auto doc = detail::IniDocument::parse(in);
    SweepGrid g;
    auto list = [&](const std::string &key) {
        std::vector<std::string> items;
        for (auto &s : detail::split_list(doc.require(key))) {
            if (!s.empty()) {
                items.push_back(std::move(s));
            }
        }
        return items;
    };
    for (const auto &s : list("sweep.algorithms")) {
        auto a = parse_algorithm(s);
        if (!a) {
            throw ScenarioError("sweep.algorithms", "unknown algorithm '" + s + "'");
        }
        g.algorithms.push_back(*a);
    }
    for (const auto &s : list("sweep.nodes")) {
        g.nodes.push_back(parse_value<std::size_t>("sweep.nodes", s));
    }
    for (const auto &s : list("sweep.ocs_count")) {
        g.ocs.push_back(parse_value<std::size_t>("sweep.ocs_count", s));
    }
    for (const auto &s : list("sweep.sizes_mb")) {
        if (const auto dots = s.find(".."); dots != std::string::npos) {
            const double lo = parse_value<double>("sweep.sizes_mb", detail::trim(s.substr(0, dots)));
            const double hi = parse_value<double>("sweep.sizes_mb", detail::trim(s.substr(dots + 2)));
            if (!(lo > 0.0) || hi < lo) {
                throw ScenarioError("sweep.sizes_mb", "bad range '" + s + "'");
            }
            for (double v : doubling_range(lo, hi)) {
                g.sizes_mb.push_back(v);
            }
        } else {
            g.sizes_mb.push_back(parse_value<double>("sweep.sizes_mb", s));
        }
    }
    for (const auto &s : list("sweep.modes")) {
        auto m = parse_mode(s);
        if (!m) {
            throw ScenarioError("sweep.modes", "unknown mode '" + s + "'");
        }
        g.modes.push_back(*m);
    }
    if (auto v = doc.take("sweep.bandwidth_gbps")) {
        g.bandwidth_gbps = parse_value<double>("sweep.bandwidth_gbps", *v);
    }
    if (auto v = doc.take("sweep.t_recfg_us")) {
        g.t_recfg_us = parse_value<double>("sweep.t_recfg_us", *v);
    }
    if (auto v = doc.take("sweep.sync_latency_us")) {
        g.sync_latency_us = parse_value<double>("sweep.sync_latency_us", *v);
    }
    if (auto v = doc.take("sweep.time_budget_s")) {
        g.time_budget_s = parse_value<double>("sweep.time_budget_s", *v);
    }
    doc.reject_leftovers();
    return g;
}

/// One CSV line. An empty `cct_us` marks an infeasible or failed run.
struct ResultRow {
    std::string scenario;
    ScenarioFile point;
    std::optional<double> cct_us;
    std::optional<std::size_t> reconfigs;
    std::string status;
    double wall_s = 0.0;
    bool ok() const noexcept { return cct_us.has_value(); }
};

inline std::string scenario_id(const ScenarioFile &f) {
    return std::string(algorithm_name(f.algorithm)) + "-p" + std::to_string(f.nodes) + "-k" +
           std::to_string(f.ocs_count) + "-s" + shortest(f.size_mb);
}

/// Grid points in row order: algorithm, nodes, OCS count, size, then mode.
inline std::vector<ScenarioFile> expand_grid(const SweepGrid &g) {
    std::vector<ScenarioFile> out;
    out.reserve(g.row_count());
    for (Algorithm a : g.algorithms) {
        for (std::size_t p : g.nodes) {
            for (std::size_t k : g.ocs) {
                for (double mb : g.sizes_mb) {
                    for (Mode m : g.modes) {
                        ScenarioFile f;
                        f.nodes = p;
                        f.ocs_count = k;
                        f.bandwidth_gbps = g.bandwidth_gbps;
                        f.t_recfg_us = g.t_recfg_us;
                        f.sync_latency_us = g.sync_latency_us;
                        f.algorithm = a;
                        f.size_mb = mb;
                        f.mode = m;
                        f.time_budget_s = g.time_budget_s;
                        out.push_back(f);
                    }
                }
            }
        }
    }
    return out;
}

inline ResultRow run_row(const ScenarioFile &f) {
    ResultRow row;
    row.scenario = scenario_id(f);
    row.point = f;
    Stopwatch clock;
    try {
        f.collective().validate();
        const RunResult r = run_scenario(f);
        row.wall_s = r.wall_s;
        if (r.feasible()) {
            row.cct_us = seconds_to_us(r.cct_s);
            row.reconfigs = r.reconfigs;
            row.status = status_name(r.status);
        } else {
            row.status = "infeasible(" + r.reason + ")";
        }
    } catch (const std::exception &e) {
        row.wall_s = clock.seconds();
        row.status = std::string("error(") + e.what() + ")";
    }
    return row;
}

/// Runs every row on up to `jobs` threads; the result order is the grid order.
inline std::vector<ResultRow> run_sweep(const SweepGrid &grid, std::size_t jobs = 1) {
    const auto points = expand_grid(grid);
    std::vector<ResultRow> rows(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t n = next++; n < points.size(); n = next++) {
            rows[n] = run_row(points[n]);
        }
    };
    const std::size_t threads = std::min<std::size_t>(std::max<std::size_t>(jobs, 1), points.size());
    if (threads <= 1) {
        worker();
        return rows;
    }
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    for (auto &t : pool) {
        t.join();
    }
    return rows;
}

inline std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

inline void write_csv(std::ostream &os, const std::vector<ResultRow> &rows) {
    os << kCsvHeader << "\n";
    char wall[32];
    for (const auto &r : rows) {
        std::snprintf(wall, sizeof wall, "%.3f", r.wall_s);
        os << csv_field(r.scenario) << ',' << algorithm_name(r.point.algorithm) << ',' << r.point.nodes << ','
           << r.point.ocs_count << ',' << shortest(r.point.size_mb) << ',' << mode_name(r.point.mode) << ','
           << (r.cct_us ? shortest(*r.cct_us) : "") << ',' << (r.reconfigs ? std::to_string(*r.reconfigs) : "") << ','
           << csv_field(r.status) << ',' << wall << "\n";
    }
}

} // namespace ocsched::harness
