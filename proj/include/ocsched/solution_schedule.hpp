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

#include <cmath>
#include <cstddef>
#include <vector>

#include "ocsched/milp_model.hpp"
#include "ocsched/schedule_timing.hpp"

namespace ocsched {

/**
 * @brief Turns a MILP assignment into a timed schedule.
 *
 * Reads which OCSes carry data (u and d), how much, and the preinstalled
 * configs (lc at step 1). Reconfigurations and timestamps are then derived
 * rather than copied, so the result is never slower than the assignment it
 * came from.
 */
inline Schedule schedule_from_solution(const MilpModel &model, const std::vector<double> &x) {
    const auto &meta = model.metadata;
    const auto demands = meta.demands();
    const Scenario scenario = meta.scenario();
    const std::size_t I = meta.steps;
    const std::size_t J = meta.ocs;
    std::vector<double> volumes(I * J, 0.0);
    for (std::size_t i = 0; i < I; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            const double u = x[model.require(pair_name("u", i, j))];
            const double d = x[model.require(pair_name("d", i, j))];
            if (u > 0.5 && d > 1e-9 * demands[i].volume_bytes) {
                volumes[i * J + j] = d;
            }
        }
    }
    std::vector<ConfigId> init(J, kBlankConfig);
    for (std::size_t j = 0; j < J; ++j) {
        const double lc = std::round(x[model.require(pair_name("lc", 0, j))]);
        init[j] = lc > 0.0 ? static_cast<ConfigId>(lc) : kBlankConfig;
    }
    if (meta.initial_configs) {
        init = *meta.initial_configs;
    }
    return build_schedule(scenario, demands, volumes, init);
}

/// Column bounds of `model` as two vectors, ready for per-node edits.
inline void model_bounds(const MilpModel &model, std::vector<double> &lower, std::vector<double> &upper) {
    lower.clear();
    upper.clear();
    for (const auto &v : model.variables()) {
        lower.push_back(v.lower);
        upper.push_back(v.upper);
    }
}

} // namespace ocsched
