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

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ocsched/collectives.hpp"
#include "ocsched/model_types.hpp"
#include "ocsched/units.hpp"

namespace ocsched::harness {

enum class Mode { OneShot, Strawman, Ideal, SwotExact, SwotHeuristic, Oracle };

inline constexpr Mode kAllModes[] = {Mode::OneShot,   Mode::Strawman,      Mode::Ideal,
                                     Mode::SwotExact, Mode::SwotHeuristic, Mode::Oracle};

inline std::string_view mode_name(Mode m) {
    switch (m) {
    case Mode::OneShot:
        return "oneshot";
    case Mode::Strawman:
        return "strawman";
    case Mode::Ideal:
        return "ideal";
    case Mode::SwotExact:
        return "swot-exact";
    case Mode::SwotHeuristic:
        return "swot-heuristic";
    case Mode::Oracle:
        return "oracle";
    }
    return "?";
}

inline std::optional<Mode> parse_mode(std::string_view name) {
    for (Mode m : kAllModes) {
        if (mode_name(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

/// Input problem; `key()` names the offending `section.key` when there is one.
class ScenarioError : public std::runtime_error {
  public:
    ScenarioError(std::string key, const std::string &what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
    const std::string &key() const noexcept { return key_; }

  private:
    std::string key_;
};

inline constexpr double kDefaultTimeBudgetS = 90.0;

/// Everything one solve needs, in CLI units.
struct ScenarioFile {
    std::size_t nodes = 0;
    std::size_t ocs_count = 0;
    double bandwidth_gbps = 0.0;
    double t_recfg_us = 0.0;
    double sync_latency_us = 0.0;
    std::optional<std::vector<ConfigId>> initial_configs;
    Algorithm algorithm = Algorithm::RingAllReduce;
    double size_mb = 0.0;
    Mode mode = Mode::SwotExact;
    double time_budget_s = kDefaultTimeBudgetS;

    Scenario scenario() const {
        Scenario s;
        s.nodes = nodes;
        s.ocs_count = ocs_count;
        s.bandwidth_bps = gbps_to_bps(bandwidth_gbps);
        s.t_recfg_s = us_to_seconds(t_recfg_us);
        s.sync_latency_s = us_to_seconds(sync_latency_us);
        s.initial_configs = initial_configs;
        return s;
    }

    CollectiveSpec collective() const {
        return {algorithm, nodes, static_cast<std::uint64_t>(std::llround(megabytes_to_bytes(size_mb)))};
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto end = comma == std::string_view::npos ? s.size() : comma;
        out.push_back(trim(s.substr(start, end - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

template <typename T>
T parse_value(const std::string &key, const std::string &text) {
    T v{};
    const char *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ScenarioError(key, "cannot parse '" + text + "'");
    }
    return v;
}

/// `section.key` -> value, in file order, from a sectioned `key = value` text.
struct IniDocument {
    std::map<std::string, std::pair<std::string, std::size_t>> values;

    static IniDocument parse(std::istream &in) {
        IniDocument doc;
        std::string section;
        std::string raw;
        std::size_t line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            const auto hash = raw.find_first_of("#;");
            std::string line = trim(std::string_view(raw).substr(0, hash));
            if (line.empty()) {
                continue;
            }
            if (line.front() == '[') {
                if (line.back() != ']') {
                    throw ScenarioError("", "line " + std::to_string(line_no) + ": unterminated section header");
                }
                section = trim(std::string_view(line).substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ScenarioError("", "line " + std::to_string(line_no) + ": expected key = value");
            }
            if (section.empty()) {
                throw ScenarioError(trim(std::string_view(line).substr(0, eq)), "key outside any section");
            }
            const std::string key = section + "." + trim(std::string_view(line).substr(0, eq));
            if (doc.values.count(key)) {
                throw ScenarioError(key, "given twice (line " + std::to_string(line_no) + ")");
            }
            doc.values[key] = {trim(std::string_view(line).substr(eq + 1)), line_no};
        }
        return doc;
    }

    std::optional<std::string> take(const std::string &key) {
        auto it = values.find(key);
        if (it == values.end()) {
            return std::nullopt;
        }
        std::string v = it->second.first;
        values.erase(it);
        return v;
    }

    std::string require(const std::string &key) {
        if (auto v = take(key)) {
            return *v;
        }
        throw ScenarioError(key, "missing");
    }

    void reject_leftovers() const {
        if (!values.empty()) {
            throw ScenarioError(values.begin()->first, "unknown key");
        }
    }
};

} // namespace detail

/**
 * @brief Reads a scenario document:
 *
 *     [cluster]
 *     nodes = 8
 *     ocs_count = 2
 *     bandwidth_gbps = 400
 *     t_recfg_us = 200
 *     sync_latency_us = 0        # optional, default 0
 *     initial_configs = free     # optional; or one id per OCS, 0 = blank
 *     [collective]
 *     algorithm = rabenseifner
 *     size_mb = 40
 *     [solve]
 *     mode = swot-exact          # optional, default swot-exact
 *     time_budget_s = 90         # optional, default 90
 *
 * Unknown, duplicated, missing or unparsable keys raise ScenarioError naming
 * the key.
 */
inline ScenarioFile parse_scenario(std::istream &in) {
    using detail::parse_value;
    auto doc = detail::IniDocument::parse(in);
    ScenarioFile f;

    auto positive = [](const std::string &key, double v) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ScenarioError(key, "must be positive");
        }
        return v;
    };
    auto non_negative = [](const std::string &key, double v) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw ScenarioError(key, "must be non-negative");
        }
        return v;
    };

    f.nodes = parse_value<std::size_t>("cluster.nodes", doc.require("cluster.nodes"));
    if (f.nodes < 2) {
        throw ScenarioError("cluster.nodes", "must be at least 2");
    }
    f.ocs_count = parse_value<std::size_t>("cluster.ocs_count", doc.require("cluster.ocs_count"));
    if (f.ocs_count < 1) {
        throw ScenarioError("cluster.ocs_count", "must be at least 1");
    }
    f.bandwidth_gbps = positive("cluster.bandwidth_gbps",
                                parse_value<double>("cluster.bandwidth_gbps", doc.require("cluster.bandwidth_gbps")));
    f.t_recfg_us =
        non_negative("cluster.t_recfg_us", parse_value<double>("cluster.t_recfg_us", doc.require("cluster.t_recfg_us")));
    if (auto v = doc.take("cluster.sync_latency_us")) {
        f.sync_latency_us = non_negative("cluster.sync_latency_us", parse_value<double>("cluster.sync_latency_us", *v));
    }
    if (auto v = doc.take("cluster.initial_configs"); v && *v != "free") {
        std::vector<ConfigId> ids;
        for (const auto &item : detail::split_list(*v)) {
            ids.push_back(parse_value<ConfigId>("cluster.initial_configs", item));
        }
        if (ids.size() != f.ocs_count) {
            throw ScenarioError("cluster.initial_configs", "needs " + std::to_string(f.ocs_count) +
                                                               " entries, got " + std::to_string(ids.size()));
        }
        f.initial_configs = std::move(ids);
    }

    const std::string algo = doc.require("collective.algorithm");
    if (auto a = parse_algorithm(algo)) {
        f.algorithm = *a;
    } else {
        throw ScenarioError("collective.algorithm", "unknown algorithm '" + algo + "'");
    }
    f.size_mb = positive("collective.size_mb", parse_value<double>("collective.size_mb", doc.require("collective.size_mb")));

    if (auto v = doc.take("solve.mode")) {
        if (auto m = parse_mode(*v)) {
            f.mode = *m;
        } else {
            throw ScenarioError("solve.mode", "unknown mode '" + *v + "'");
        }
    }
    if (auto v = doc.take("solve.time_budget_s")) {
        f.time_budget_s = positive("solve.time_budget_s", parse_value<double>("solve.time_budget_s", *v));
    }
    doc.reject_leftovers();

    try {
        f.collective().validate();
    } catch (const std::exception &e) {
        throw ScenarioError("collective.algorithm", e.what());
    }
    return f;
}

inline ScenarioFile parse_scenario_text(const std::string &text) {
    std::istringstream in(text);
    return parse_scenario(in);
}

inline ScenarioFile load_scenario(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ScenarioError("", "cannot open " + path);
    }
    return parse_scenario(in);
}

/// Shortest decimal text that reads back as the same double.
inline std::string shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

/// Writes `f` in the form parse_scenario reads.
inline std::string format_scenario(const ScenarioFile &f) {
    std::ostringstream os;
    os << "[cluster]\n"
       << "nodes = " << f.nodes << "\n"
       << "ocs_count = " << f.ocs_count << "\n"
       << "bandwidth_gbps = " << shortest(f.bandwidth_gbps) << "\n"
       << "t_recfg_us = " << shortest(f.t_recfg_us) << "\n"
       << "sync_latency_us = " << shortest(f.sync_latency_us) << "\n"
       << "initial_configs = ";
    if (f.initial_configs) {
        for (std::size_t j = 0; j < f.initial_configs->size(); ++j) {
            os << (j ? ", " : "") << (*f.initial_configs)[j];
        }
    } else {
        os << "free";
    }
    os << "\n\n[collective]\n"
       << "algorithm = " << algorithm_name(f.algorithm) << "\n"
       << "size_mb = " << shortest(f.size_mb) << "\n\n[solve]\n"
       << "mode = " << mode_name(f.mode) << "\n"
       << "time_budget_s = " << shortest(f.time_budget_s) << "\n";
    return os.str();
}

} // namespace ocsched::harness
