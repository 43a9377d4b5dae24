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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ocsched/milp_model.hpp"
#include "ocsched/simplex.hpp"
#include "ocsched/solution_schedule.hpp"
#include "ocsched/solver_report.hpp"

namespace ocsched {

class TooLarge : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/**
 * @brief Exact optimum by enumeration, for checking the search on tiny instances.
 *
 * Enumerates every usage pattern u (each step keeps at least one OCS) and, for
 * free preinstalls, whether each used OCS starts on the config of its first
 * use or on something else. Reconfiguration and match flags follow from
 * those choices: an OCS switches exactly when it is used under a config it
 * does not hold, which loses nothing. Each pattern's remaining LP (volumes
 * and times) is solved from scratch.
 *
 * Throws TooLarge when steps x OCSes exceeds `max_pairs`.
 */
inline SolverReport brute_force_oracle(const MilpModel &model, std::size_t max_pairs = 16) {
    const auto &meta = model.metadata;
    const std::size_t I = meta.steps;
    const std::size_t J = meta.ocs;
    if (I * J > max_pairs) {
        throw TooLarge("oracle limited to " + std::to_string(max_pairs) + " step/OCS pairs, model has " +
                       std::to_string(I * J));
    }
    if (I == 0 || meta.cfg.size() != I) {
        throw ModelError("model carries no scheduling metadata");
    }
    Stopwatch clock;
    std::vector<double> base_lo, base_hi;
    model_bounds(model, base_lo, base_hi);
    std::vector<PairVars> vars;
    for (std::size_t i = 0; i < I; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            vars.push_back(pair_vars(model, i, j));
        }
    }
    auto fix = [](std::vector<double> &lo, std::vector<double> &hi, std::size_t v, double value) {
        lo[v] = hi[v] = value;
    };

    SolverReport rep;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_x;
    const std::uint64_t patterns = std::uint64_t{1} << (I * J);
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
        auto used = [&](std::size_t i, std::size_t j) { return ((mask >> (i * J + j)) & 1U) != 0; };
        bool every_step = true;
        for (std::size_t i = 0; i < I && every_step; ++i) {
            bool any = false;
            for (std::size_t j = 0; j < J; ++j) {
                any = any || used(i, j);
            }
            every_step = any;
        }
        if (!every_step) {
            continue;
        }
        std::vector<ConfigId> first_use(J, kBlankConfig);
        for (std::size_t j = 0; j < J; ++j) {
            for (std::size_t i = 0; i < I && first_use[j] == kBlankConfig; ++i) {
                if (used(i, j)) {
                    first_use[j] = meta.cfg[i];
                }
            }
        }
        std::vector<std::size_t> choosers; // OCSes whose free preinstall matters
        if (!meta.initial_configs) {
            for (std::size_t j = 0; j < J; ++j) {
                if (first_use[j] != kBlankConfig) {
                    choosers.push_back(j);
                }
            }
        }
        const std::uint64_t init_patterns = std::uint64_t{1} << choosers.size();
        for (std::uint64_t imask = 0; imask < init_patterns; ++imask) {
            std::vector<ConfigId> holds(J, kBlankConfig);
            if (meta.initial_configs) {
                holds = *meta.initial_configs;
            } else {
                for (std::size_t q = 0; q < choosers.size(); ++q) {
                    if ((imask >> q) & 1U) {
                        holds[choosers[q]] = first_use[choosers[q]];
                    }
                }
            }
            std::vector<double> lo = base_lo, hi = base_hi;
            for (std::size_t j = 0; j < J; ++j) {
                ConfigId current = holds[j];
                for (std::size_t i = 0; i < I; ++i) {
                    const PairVars &p = vars[i * J + j];
                    const bool u = used(i, j);
                    const bool r = u && current != meta.cfg[i];
                    fix(lo, hi, p.lc, static_cast<double>(current));
                    fix(lo, hi, p.u, u ? 1.0 : 0.0);
                    fix(lo, hi, p.r, r ? 1.0 : 0.0);
                    fix(lo, hi, p.s, current == meta.cfg[i] ? 1.0 : 0.0);
                    if (r) {
                        current = meta.cfg[i];
                    }
                }
            }
            const LpSolution sol = simplex_solve(model, lo, hi);
            ++rep.nodes;
            if (sol.optimal() && sol.objective < best) {
                best = sol.objective;
                best_x = sol.values;
            }
        }
    }
    if (best_x.empty()) {
        throw ModelError("oracle found no feasible assignment");
    }
    rep.schedule = schedule_from_solution(model, best_x);
    rep.cct = rep.schedule.cct;
    if (rep.cct > best + kTimeTolerance) {
        ++rep.bound_violations;
    }
    rep.optimality = Optimality::Proven;
    rep.wall_s = clock.seconds();
    return rep;
}

} // namespace ocsched
