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

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ocsched/collectives.hpp"
#include "ocsched/harness/run.hpp"
#include "ocsched/harness/scenario_file.hpp"
#include "ocsched/simulator.hpp"

namespace ocsched::harness {

inline constexpr int kBundleSchemaVersion = 1;

/// Export was asked for a schedule the simulator rejects.
class RefusesInvalid : public std::runtime_error {
  public:
    RefusesInvalid(const std::string &what, SimReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const SimReport &report() const noexcept { return report_; }

  private:
    SimReport report_;
};

class BundleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

namespace detail {

inline Json permutation_json(const Permutation &p) {
    Json a = Json::array();
    for (std::size_t v : p.map()) {
        a.push_back(v);
    }
    return a;
}

inline Json scenario_json(const ScenarioFile &f) {
    Json init = "free";
    if (f.initial_configs) {
        init = Json::array();
        for (ConfigId c : *f.initial_configs) {
            init.push_back(c);
        }
    }
    return Json{{"cluster",
                 {{"nodes", f.nodes},
                  {"ocs_count", f.ocs_count},
                  {"bandwidth_gbps", f.bandwidth_gbps},
                  {"t_recfg_us", f.t_recfg_us},
                  {"sync_latency_us", f.sync_latency_us},
                  {"initial_configs", init}}},
                {"collective", {{"algorithm", std::string(algorithm_name(f.algorithm))}, {"size_mb", f.size_mb}}},
                {"solve", {{"mode", std::string(mode_name(f.mode))}, {"time_budget_s", f.time_budget_s}}}};
}

inline ScenarioFile scenario_from_json(const Json &j) {
    try {
        ScenarioFile f;
        const Json &c = j.at("cluster");
        f.nodes = c.at("nodes").get<std::size_t>();
        f.ocs_count = c.at("ocs_count").get<std::size_t>();
        f.bandwidth_gbps = c.at("bandwidth_gbps").get<double>();
        f.t_recfg_us = c.at("t_recfg_us").get<double>();
        f.sync_latency_us = c.at("sync_latency_us").get<double>();
        if (const Json &init = c.at("initial_configs"); init.is_array()) {
            f.initial_configs = init.get<std::vector<ConfigId>>();
        } else if (init != "free") {
            throw BundleError("scenario.cluster.initial_configs must be \"free\" or a list");
        }
        const Json &col = j.at("collective");
        const auto algo = col.at("algorithm").get<std::string>();
        const auto a = parse_algorithm(algo);
        if (!a) {
            throw BundleError("scenario.collective.algorithm: unknown algorithm '" + algo + "'");
        }
        f.algorithm = *a;
        f.size_mb = col.at("size_mb").get<double>();
        const Json &s = j.at("solve");
        const auto mode = s.at("mode").get<std::string>();
        const auto m = parse_mode(mode);
        if (!m) {
            throw BundleError("scenario.solve.mode: unknown mode '" + mode + "'");
        }
        f.mode = *m;
        f.time_budget_s = s.at("time_budget_s").get<double>();
        return f;
    } catch (const nlohmann::json::exception &e) {
        throw BundleError(std::string("scenario: ") + e.what());
    }
}

} // namespace detail

/**
 * @brief Builds the installable artifact for a validated schedule.
 *
 * Layout: `schema_version`, the scenario echo, a summary, the step list, one
 * timeline per OCS (its initial configuration, then each reconfiguration
 * with the permutation it installs, in completion order), and the per-node
 * transmission plan. Nodes and OCSes are numbered from 0, steps from 1.
 *
 * Throws RefusesInvalid if the simulator finds any violation.
 */
inline Json bundle_json(const Schedule &schedule, const ScenarioFile &f, const std::vector<StepPlan> &steps,
                        std::string_view status) {
    const Scenario sc = f.scenario();
    const auto demands = demands_of(steps);
    SimReport sim = simulate(schedule, sc, demands);
    if (!sim.valid()) {
        const Violation &v = sim.violations.front();
        throw RefusesInvalid("refusing to export an invalid schedule (" + std::to_string(sim.violations.size()) +
                                 " violations, first: " + to_string(v.property) + " " + v.detail + ")",
                             std::move(sim));
    }
    ConfigCatalog catalog;
    for (const auto &s : steps) {
        catalog.intern(s.pairing);
    }

    Json out;
    out["schema_version"] = kBundleSchemaVersion;
    out["scenario"] = detail::scenario_json(f);
    out["summary"] = {{"cct_us", seconds_to_us(sim.cct)},
                      {"reconfigs", schedule.reconfig_count()},
                      {"status", std::string(status)},
                      {"utilization", sim.utilization}};

    Json js = Json::array();
    for (std::size_t i = 0; i < steps.size(); ++i) {
        js.push_back({{"step", i + 1},
                      {"config", steps[i].cfg},
                      {"volume_bytes", steps[i].volume_bytes},
                      {"end_us", seconds_to_us(schedule.step_end[i])},
                      {"pairing", detail::permutation_json(steps[i].pairing)}});
    }
    out["steps"] = std::move(js);

    Json timelines = Json::array();
    for (std::size_t j = 0; j < schedule.ocs_count(); ++j) {
        const ConfigId init = schedule.initial_configs[j];
        Json events = Json::array();
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < schedule.steps(); ++i) {
            if (schedule.at(i, j).reconfig) {
                order.push_back(i);
            }
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return schedule.at(a, j).t_recfg_e < schedule.at(b, j).t_recfg_e;
        });
        for (std::size_t i : order) {
            const Slot &s = schedule.at(i, j);
            events.push_back({{"start_us", seconds_to_us(s.t_recfg_s)},
                              {"end_us", seconds_to_us(s.t_recfg_e)},
                              {"step", i + 1},
                              {"config", demands[i].cfg},
                              {"permutation", detail::permutation_json(catalog.at(demands[i].cfg))}});
        }
        timelines.push_back({{"ocs", j},
                             {"initial_config", init},
                             {"initial_permutation", init == kBlankConfig
                                                         ? Json(nullptr)
                                                         : detail::permutation_json(catalog.at(init))},
                             {"events", std::move(events)}});
    }
    out["ocs_timelines"] = std::move(timelines);

    Json tx = Json::array();
    for (std::size_t n = 0; n < f.nodes; ++n) {
        for (std::size_t i = 0; i < schedule.steps(); ++i) {
            for (std::size_t j = 0; j < schedule.ocs_count(); ++j) {
                const Slot &s = schedule.at(i, j);
                if (!s.used) {
                    continue;
                }
                tx.push_back({{"node", n},
                              {"step", i + 1},
                              {"peer", steps[i].pairing[n]},
                              {"ocs", j},
                              {"bytes", s.volume_bytes},
                              {"start_us", seconds_to_us(s.t_start)},
                              {"end_us", seconds_to_us(s.t_end)}});
            }
        }
    }
    out["transmissions"] = std::move(tx);
    return out;
}

inline std::string bundle_text(const Json &bundle) { return bundle.dump(2) + "\n"; }

/// A bundle read back: the scenario it echoes, the regenerated steps, and
/// the schedule it describes.
struct LoadedBundle {
    ScenarioFile scenario;
    std::vector<StepPlan> steps;
    Schedule schedule;
    double reported_cct_s = 0.0;
};

/**
 * @brief Rebuilds a Schedule from bundle JSON.
 *
 * Steps are regenerated from the scenario echo and must agree with the
 * bundle's step list. Every permutation array must be a bijection and match
 * the configuration it names. Timing is taken as written, so a tampered
 * bundle is reported by the simulator rather than repaired here.
 */
inline LoadedBundle load_bundle(const Json &j) {
    try {
        if (j.at("schema_version").get<int>() != kBundleSchemaVersion) {
            throw BundleError("unsupported schema_version " + j.at("schema_version").dump());
        }
        LoadedBundle b;
        b.scenario = detail::scenario_from_json(j.at("scenario"));
        b.steps = scenario_steps(b.scenario);
        const std::size_t I = b.steps.size();
        const std::size_t K = b.scenario.ocs_count;
        ConfigCatalog catalog;
        for (const auto &s : b.steps) {
            catalog.intern(s.pairing);
        }
        auto check_perm = [&](const Json &arr, ConfigId id, const std::string &where) {
            const Permutation p(arr.get<std::vector<std::size_t>>());
            if (!permutation_equal(p, catalog.at(id))) {
                throw BundleError(where + ": permutation does not match config " + std::to_string(id));
            }
        };

        const Json &js = j.at("steps");
        if (js.size() != I) {
            throw BundleError("bundle lists " + std::to_string(js.size()) + " steps, scenario has " + std::to_string(I));
        }
        b.schedule = Schedule(I, K);
        for (std::size_t i = 0; i < I; ++i) {
            const Json &s = js.at(i);
            if (s.at("config").get<ConfigId>() != b.steps[i].cfg ||
                s.at("volume_bytes").get<double>() != b.steps[i].volume_bytes) {
                throw BundleError("step " + std::to_string(i + 1) + " disagrees with the scenario's collective");
            }
            b.schedule.step_end[i] = us_to_seconds(s.at("end_us").get<double>());
        }

        const Json &tl = j.at("ocs_timelines");
        if (tl.size() != K) {
            throw BundleError("bundle has " + std::to_string(tl.size()) + " OCS timelines, scenario has " +
                              std::to_string(K));
        }
        for (std::size_t q = 0; q < K; ++q) {
            const Json &t = tl.at(q);
            const auto jj = t.at("ocs").get<std::size_t>();
            if (jj >= K) {
                throw BundleError("timeline OCS index " + std::to_string(jj) + " out of range");
            }
            const auto init = t.at("initial_config").get<ConfigId>();
            if (init > catalog.size()) {
                throw BundleError("OCS " + std::to_string(jj) + ": initial config out of range");
            }
            b.schedule.initial_configs[jj] = init;
            if (init != kBlankConfig) {
                check_perm(t.at("initial_permutation"), init, "OCS " + std::to_string(jj));
            }
            for (const Json &e : t.at("events")) {
                const auto step = e.at("step").get<std::size_t>();
                if (step < 1 || step > I) {
                    throw BundleError("OCS " + std::to_string(jj) + ": event step out of range");
                }
                const auto cfg = e.at("config").get<ConfigId>();
                if (cfg != b.steps[step - 1].cfg) {
                    throw BundleError("OCS " + std::to_string(jj) + ": step " + std::to_string(step) +
                                      " event installs config " + std::to_string(cfg));
                }
                check_perm(e.at("permutation"), cfg, "OCS " + std::to_string(jj) + " step " + std::to_string(step));
                Slot &slot = b.schedule.at(step - 1, jj);
                slot.reconfig = true;
                slot.t_recfg_s = us_to_seconds(e.at("start_us").get<double>());
                slot.t_recfg_e = us_to_seconds(e.at("end_us").get<double>());
            }
        }

        std::vector<bool> seen(I * K, false);
        for (const Json &t : j.at("transmissions")) {
            const auto node = t.at("node").get<std::size_t>();
            const auto step = t.at("step").get<std::size_t>();
            const auto ocs = t.at("ocs").get<std::size_t>();
            if (node >= b.scenario.nodes || step < 1 || step > I || ocs >= K) {
                throw BundleError("transmission index out of range");
            }
            if (t.at("peer").get<std::size_t>() != b.steps[step - 1].pairing[node]) {
                throw BundleError("node " + std::to_string(node) + " step " + std::to_string(step) +
                                  ": peer does not match the pairing");
            }
            Slot &slot = b.schedule.at(step - 1, ocs);
            const double bytes = t.at("bytes").get<double>();
            const double start = us_to_seconds(t.at("start_us").get<double>());
            const double end = us_to_seconds(t.at("end_us").get<double>());
            const std::size_t idx = (step - 1) * K + ocs;
            if (!seen[idx]) {
                seen[idx] = true;
                slot.used = true;
                slot.volume_bytes = bytes;
                slot.t_start = start;
                slot.t_end = end;
            } else if (slot.volume_bytes != bytes || slot.t_start != start || slot.t_end != end) {
                throw BundleError("node " + std::to_string(node) + " step " + std::to_string(step) + " OCS " +
                                  std::to_string(ocs) + ": plan differs from other nodes on the same circuit");
            }
        }
        b.reported_cct_s = us_to_seconds(j.at("summary").at("cct_us").get<double>());
        b.schedule.cct = b.reported_cct_s;
        return b;
    } catch (const nlohmann::json::exception &e) {
        throw BundleError(e.what());
    } catch (const PermutationError &e) {
        throw BundleError(std::string("bad permutation: ") + e.what());
    }
}

inline LoadedBundle load_bundle_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw BundleError("cannot open " + path);
    }
    try {
        return load_bundle(Json::parse(in));
    } catch (const nlohmann::json::parse_error &e) {
        throw BundleError(path + ": " + e.what());
    }
}

} // namespace ocsched::harness
