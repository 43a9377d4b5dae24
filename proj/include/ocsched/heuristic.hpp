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
#include <limits>
#include <numeric>
#include <vector>

#include "ocsched/baselines.hpp"
#include "ocsched/model_types.hpp"
#include "ocsched/schedule_timing.hpp"
#include "ocsched/solver_report.hpp"

namespace ocsched {

/**
 * @brief Splits `volume_bytes` over links that become ready at `ready` so the
 * last one finishes as early as possible.
 *
 * All links that receive data finish together at a common level L; a link
 * whose ready time is at or after L receives nothing.
 */
inline std::vector<double> water_fill(const std::vector<double> &ready, double volume_bytes, double seconds_per_byte) {
    std::vector<std::size_t> order(ready.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ready[a] < ready[b]; });
    const double work = volume_bytes * seconds_per_byte;
    double level = 0.0;
    double sum = 0.0;
    std::size_t n = 0;
    while (n < order.size()) {
        sum += ready[order[n]];
        ++n;
        level = (work + sum) / static_cast<double>(n);
        if (n == order.size() || level <= ready[order[n]]) {
            break;
        }
    }
    std::vector<double> out(ready.size(), 0.0);
    for (std::size_t q = 0; q < n; ++q) {
        const std::size_t j = order[q];
        out[j] = std::max(0.0, (level - ready[j]) / seconds_per_byte);
    }
    return out;
}

namespace detail {

inline constexpr ConfigId kUnset = std::numeric_limits<ConfigId>::max();

/// Greedy replay state: what each OCS holds and when it goes idle.
struct GreedyState {
    std::vector<ConfigId> holds; // kUnset: free preinstall not yet decided
    std::vector<double> free_at;
    std::vector<ConfigId> init;
    double previous_end = 0.0;
};

class GreedyPlanner {
  public:
    GreedyPlanner(const Scenario &scenario, const std::vector<StepDemand> &demands)
        : sc_(scenario), demands_(demands), per_byte_(transfer_seconds(1.0, scenario.bandwidth_bps)) {}

    GreedyState initial_state() const {
        const std::size_t k = sc_.ocs_count;
        GreedyState st;
        st.free_at.assign(k, 0.0);
        if (sc_.initial_configs) {
            st.holds = *sc_.initial_configs;
            st.init = *sc_.initial_configs;
        } else {
            st.holds.assign(k, kUnset);
            st.init.assign(k, kBlankConfig);
        }
        return st;
    }

    double step_start(const GreedyState &st, std::size_t i) const {
        return i == 0 ? 0.0 : st.previous_end + sc_.sync_latency_s;
    }

    double ready_time(const GreedyState &st, std::size_t i, std::size_t j) const {
        const ConfigId c = demands_[i].cfg;
        const double start = step_start(st, i);
        if (st.holds[j] == c || st.holds[j] == kUnset) {
            return std::max(st.free_at[j], start);
        }
        return std::max(st.free_at[j] + sc_.t_recfg_s, start);
    }

    /// Runs step i on the OCSes flagged in `carry`; writes volumes when `volumes` is given.
    void run_step(GreedyState &st, std::size_t i, const std::vector<char> &carry, std::vector<double> *volumes) const {
        const std::size_t k = sc_.ocs_count;
        std::vector<double> ready(k, std::numeric_limits<double>::infinity());
        for (std::size_t j = 0; j < k; ++j) {
            if (carry[j]) {
                ready[j] = ready_time(st, i, j);
            }
        }
        const auto d = water_fill(ready, demands_[i].volume_bytes, per_byte_);
        double end = step_start(st, i);
        for (std::size_t j = 0; j < k; ++j) {
            if (!(d[j] > 0.0)) {
                continue;
            }
            if (st.holds[j] == kUnset) {
                st.init[j] = demands_[i].cfg;
            }
            st.holds[j] = demands_[i].cfg;
            st.free_at[j] = ready[j] + d[j] * per_byte_;
            end = std::max(end, st.free_at[j]);
            if (volumes) {
                (*volumes)[i * k + j] = d[j];
            }
        }
        st.previous_end = end;
    }

    /// OCSes to hold back from step i, best candidates first.
    std::vector<std::size_t> advance_order(const GreedyState &st, std::size_t i) const {
        const ConfigId next = demands_[i + 1].cfg;
        std::vector<std::size_t> order(sc_.ocs_count);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::vector<double> ready(order.size());
        for (std::size_t j = 0; j < order.size(); ++j) {
            ready[j] = ready_time(st, i, j);
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const bool ma = st.holds[a] == next;
            const bool mb = st.holds[b] == next;
            if (ma != mb) {
                return ma;
            }
            return ready[a] > ready[b];
        });
        return order;
    }

    /// Greedy pass; `lookahead` false holds nothing back.
    Schedule plan(bool lookahead) const {
        const std::size_t k = sc_.ocs_count;
        const std::size_t I = demands_.size();
        std::vector<double> volumes(I * k, 0.0);
        GreedyState st = initial_state();
        const std::vector<char> everyone(k, 1);
        for (std::size_t i = 0; i < I; ++i) {
            std::vector<char> carry = everyone;
            if (lookahead && i + 1 < I && demands_[i + 1].cfg != demands_[i].cfg && k > 1) {
                const auto order = advance_order(st, i);
                double best = std::numeric_limits<double>::infinity();
                for (std::size_t a = 0; a < k; ++a) {
                    std::vector<char> trial = everyone;
                    for (std::size_t q = 0; q < a; ++q) {
                        trial[order[q]] = 0;
                    }
                    GreedyState probe = st;
                    run_step(probe, i, trial, nullptr);
                    run_step(probe, i + 1, everyone, nullptr);
                    if (probe.previous_end < best * (1.0 - 1e-12)) {
                        best = probe.previous_end;
                        carry = trial;
                    }
                }
            }
            run_step(st, i, carry, &volumes);
        }
        return build_schedule(sc_, demands_, volumes, st.init);
    }

  private:
    const Scenario &sc_;
    const std::vector<StepDemand> &demands_;
    double per_byte_;
};

} // namespace detail

/**
 * @brief Fast overlap schedule for instances too large for exact search.
 *
 * Walks the steps in order. Before a config change, some OCSes can sit out
 * the current step so their reconfiguration overlaps the others' traffic;
 * the number held back is picked by evaluating the next step. Each step's
 * volume is water-filled over the OCSes that carry it. The result is never
 * worse than the strawman schedule, which is returned when it wins.
 */
inline SolverReport heuristic_schedule(const Scenario &scenario, const std::vector<StepDemand> &demands) {
    scenario.validate();
    Stopwatch clock;
    detail::GreedyPlanner planner(scenario, demands);
    SolverReport rep;
    rep.schedule = planner.plan(true);
    for (Schedule alt : {planner.plan(false), strawman_schedule(scenario, demands)}) {
        if (alt.cct < rep.schedule.cct * (1.0 - 1e-12)) {
            rep.schedule = std::move(alt);
        }
    }
    rep.cct = rep.schedule.cct;
    rep.optimality = Optimality::Heuristic;
    rep.wall_s = clock.seconds();
    return rep;
}

} // namespace ocsched
