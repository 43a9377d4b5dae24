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
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ocsched/model_types.hpp"
#include "ocsched/schedule_timing.hpp"

namespace ocsched {

enum class BaselineKind { OneShot, StrawmanICR, Ideal };

/// One-shot outcome: a schedule, or the reason it cannot exist.
struct OneShotResult {
    std::optional<Schedule> schedule;
    std::size_t configs = 0;
    std::size_t ocs = 0;
    /// OCSes granted to each config id (index 0 is config 1).
    std::vector<std::size_t> allocation;

    bool feasible() const noexcept { return schedule.has_value(); }
    std::string reason() const {
        return std::to_string(configs) + " configs > " + std::to_string(ocs) + " OCSes";
    }
};

namespace detail {

/// Bytes each config must carry over the whole collective.
inline std::vector<double> config_loads(const std::vector<StepDemand> &demands, std::size_t configs) {
    std::vector<double> load(configs, 0.0);
    for (const auto &d : demands) {
        load[d.cfg - 1] += d.volume_bytes;
    }
    return load;
}

inline double allocation_cost(const std::vector<double> &load, const std::vector<std::size_t> &n) {
    double cost = 0.0;
    for (std::size_t c = 0; c < load.size(); ++c) {
        cost += load[c] / static_cast<double>(n[c]);
    }
    return cost;
}

/// Exhaustive search over compositions of k into C positive parts.
inline std::vector<std::size_t> best_composition(const std::vector<double> &load, std::size_t k) {
    const std::size_t C = load.size();
    std::vector<std::size_t> current(C, 1), best;
    double best_cost = std::numeric_limits<double>::infinity();
    std::function<void(std::size_t, std::size_t)> place = [&](std::size_t c, std::size_t left) {
        if (c + 1 == C) {
            current[c] = left;
            const double cost = allocation_cost(load, current);
            if (cost < best_cost) {
                best_cost = cost;
                best = current;
            }
            return;
        }
        for (std::size_t take = 1; take + (C - c - 1) <= left; ++take) {
            current[c] = take;
            place(c + 1, left - take);
        }
    };
    place(0, k);
    return best;
}

/// One OCS per config, then each spare goes where it saves the most time.
inline std::vector<std::size_t> greedy_composition(const std::vector<double> &load, std::size_t k) {
    std::vector<std::size_t> n(load.size(), 1);
    for (std::size_t spare = load.size(); spare < k; ++spare) {
        std::size_t best = 0;
        double best_gain = -1.0;
        for (std::size_t c = 0; c < load.size(); ++c) {
            const double nc = static_cast<double>(n[c]);
            const double gain = load[c] / nc - load[c] / (nc + 1.0);
            if (gain > best_gain) {
                best_gain = gain;
                best = c;
            }
        }
        ++n[best];
    }
    return n;
}

} // namespace detail

/**
 * @brief Static circuits: every config gets its own OCSes for the whole collective.
 *
 * Infeasible when the collective needs more configs than there are OCSes.
 * The OCS allocation minimises total transfer time. With pinned initial
 * configurations, OCSes keep their preinstalled config where the allocation
 * allows and pay one reconfiguration before first use otherwise.
 */
inline OneShotResult one_shot_schedule(const Scenario &scenario, const std::vector<StepDemand> &demands) {
    scenario.validate();
    OneShotResult out;
    const std::size_t C = max_config_id(demands);
    const std::size_t k = scenario.ocs_count;
    out.configs = C;
    out.ocs = k;
    if (C > k) {
        return out;
    }
    const auto load = detail::config_loads(demands, C);
    out.allocation = (k <= 8 && C <= 8) ? detail::best_composition(load, k) : detail::greedy_composition(load, k);

    // OCS -> config assignment, honouring pinned initial configs first
    std::vector<ConfigId> owner(k, kBlankConfig);
    std::vector<std::size_t> quota = out.allocation;
    if (scenario.initial_configs) {
        for (std::size_t j = 0; j < k; ++j) {
            const ConfigId c = (*scenario.initial_configs)[j];
            if (c != kBlankConfig && c <= C && quota[c - 1] > 0) {
                owner[j] = c;
                --quota[c - 1];
            }
        }
    }
    std::size_t next = 0;
    for (std::size_t j = 0; j < k; ++j) {
        if (owner[j] != kBlankConfig) {
            continue;
        }
        while (quota[next] == 0) {
            ++next;
        }
        owner[j] = static_cast<ConfigId>(next + 1);
        --quota[next];
    }

    std::vector<double> volumes(demands.size() * k, 0.0);
    for (std::size_t i = 0; i < demands.size(); ++i) {
        const double share = demands[i].volume_bytes / static_cast<double>(out.allocation[demands[i].cfg - 1]);
        for (std::size_t j = 0; j < k; ++j) {
            if (owner[j] == demands[i].cfg) {
                volumes[i * k + j] = share;
            }
        }
    }
    const std::vector<ConfigId> init = scenario.initial_configs ? *scenario.initial_configs : owner;
    out.schedule = build_schedule(scenario, demands, volumes, init);
    return out;
}

/**
 * @brief Every OCS carries an equal share of every step; a config change
 * stops all traffic while all OCSes switch together.
 *
 * Free initial configurations start every OCS on the first step's config.
 */
inline Schedule strawman_schedule(const Scenario &scenario, const std::vector<StepDemand> &demands) {
    scenario.validate();
    const std::size_t k = scenario.ocs_count;
    std::vector<double> volumes(demands.size() * k);
    for (std::size_t i = 0; i < demands.size(); ++i) {
        std::fill_n(volumes.begin() + static_cast<long>(i * k), k, demands[i].volume_bytes / static_cast<double>(k));
    }
    std::vector<ConfigId> init(k, demands.empty() ? kBlankConfig : demands.front().cfg);
    if (scenario.initial_configs) {
        init = *scenario.initial_configs;
    }
    return build_schedule(scenario, demands, volumes, init);
}

/// Steps back to back at the full aggregate bandwidth, reconfiguration for free.
inline double ideal_cct(const Scenario &scenario, const std::vector<StepDemand> &demands) {
    double total = 0.0;
    const double aggregate = scenario.bandwidth_bps * static_cast<double>(scenario.ocs_count);
    for (const auto &d : demands) {
        total += transfer_seconds(d.volume_bytes, aggregate);
    }
    if (!demands.empty()) {
        total += static_cast<double>(demands.size() - 1) * scenario.sync_latency_s;
    }
    return total;
}

} // namespace ocsched
