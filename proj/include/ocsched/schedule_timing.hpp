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
#include <vector>

#include "ocsched/model_types.hpp"

namespace ocsched {

/**
 * Rewrites every timestamp of `schedule` to its earliest feasible value,
 * keeping the structural decisions (used, reconfig, volume_bytes) and the
 * initial configurations. Each OCS runs its activities back to back in step
 * order; reconfigurations start as soon as the OCS is idle and transmissions
 * wait for both the reconfiguration and the previous step's completion.
 *
 * For fixed decisions every constraint is a lower bound, so this yields the
 * minimum completion time for those decisions.
 */
inline void retime_asap(Schedule &schedule, const Scenario &scenario) {
    const std::size_t steps = schedule.steps();
    const std::size_t k = schedule.ocs_count();
    std::vector<double> free_at(k, 0.0);
    double previous_end = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        const double step_start = i == 0 ? 0.0 : previous_end + scenario.sync_latency_s;
        double step_end = step_start;
        for (std::size_t j = 0; j < k; ++j) {
            Slot &slot = schedule.at(i, j);
            slot.t_recfg_s = free_at[j];
            slot.t_recfg_e = slot.t_recfg_s + (slot.reconfig ? scenario.t_recfg_s : 0.0);
            if (slot.reconfig) {
                free_at[j] = slot.t_recfg_e;
            }
            if (!slot.used) {
                slot.volume_bytes = 0.0;
            }
            slot.t_start = std::max(slot.t_recfg_e, step_start);
            slot.t_end = slot.t_start + transfer_seconds(slot.volume_bytes, scenario.bandwidth_bps);
            if (slot.used) {
                free_at[j] = slot.t_end;
                step_end = std::max(step_end, slot.t_end);
            }
        }
        schedule.step_end[i] = step_end;
        previous_end = step_end;
    }
    schedule.cct = steps == 0 ? 0.0 : *std::max_element(schedule.step_end.begin(), schedule.step_end.end());
}

/// Reconfiguration flags implied by usage: an OCS reconfigures exactly when it
/// is used under a configuration it does not currently hold.
inline void derive_reconfigs(Schedule &schedule, const std::vector<StepDemand> &demands) {
    const std::size_t k = schedule.ocs_count();
    for (std::size_t j = 0; j < k; ++j) {
        ConfigId current = schedule.initial_configs[j];
        for (std::size_t i = 0; i < schedule.steps(); ++i) {
            Slot &slot = schedule.at(i, j);
            slot.reconfig = slot.used && current != demands[i].cfg;
            if (slot.reconfig) {
                current = demands[i].cfg;
            }
        }
    }
}

/**
 * @brief Assembles a timed schedule from per-slot volumes and initial configurations.
 *
 * `volumes` is row-major (step, OCS); a slot is used when its volume is
 * positive. Each step's volumes are rescaled to sum exactly to its demand,
 * reconfigurations follow from usage, and timestamps come from retime_asap.
 */
inline Schedule build_schedule(const Scenario &scenario, const std::vector<StepDemand> &demands,
                               const std::vector<double> &volumes, const std::vector<ConfigId> &initial_configs) {
    const std::size_t k = scenario.ocs_count;
    Schedule schedule(demands.size(), k);
    schedule.initial_configs = initial_configs;
    for (std::size_t i = 0; i < demands.size(); ++i) {
        double total = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            total += std::max(0.0, volumes[i * k + j]);
        }
        for (std::size_t j = 0; j < k; ++j) {
            Slot &slot = schedule.at(i, j);
            const double v = std::max(0.0, volumes[i * k + j]);
            slot.used = v > 0.0;
            slot.volume_bytes = total > 0.0 ? v * (demands[i].volume_bytes / total) : 0.0;
        }
    }
    derive_reconfigs(schedule, demands);
    retime_asap(schedule, scenario);
    return schedule;
}

} // namespace ocsched
