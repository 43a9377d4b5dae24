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

#include <optional>
#include <string>

#include "ocsched/baselines.hpp"
#include "ocsched/branch_and_bound.hpp"
#include "ocsched/collectives.hpp"
#include "ocsched/harness/scenario_file.hpp"
#include "ocsched/heuristic.hpp"
#include "ocsched/milp_model.hpp"
#include "ocsched/oracle.hpp"
#include "ocsched/simulator.hpp"

namespace ocsched::harness {

enum class RunStatus { Ok, Proven, Heuristic, Infeasible };

inline std::string_view status_name(RunStatus s) {
    switch (s) {
    case RunStatus::Ok:
        return "ok";
    case RunStatus::Proven:
        return "proven";
    case RunStatus::Heuristic:
        return "heuristic";
    case RunStatus::Infeasible:
        return "infeasible";
    }
    return "?";
}

/// Outcome of one mode on one scenario. `schedule` is empty for ideal and
/// infeasible runs; `reason` is set only for infeasible ones.
struct RunResult {
    Mode mode = Mode::Strawman;
    RunStatus status = RunStatus::Ok;
    std::optional<Schedule> schedule;
    double cct_s = 0.0;
    std::size_t reconfigs = 0;
    std::size_t nodes_explored = 0;
    double wall_s = 0.0;
    std::string reason;

    bool feasible() const noexcept { return status != RunStatus::Infeasible; }
};

/// The collective's steps with config ids stamped.
inline std::vector<StepPlan> scenario_steps(const ScenarioFile &f) { return generate_steps(f.collective()).steps; }

inline RunResult run_mode(const ScenarioFile &f, Mode mode) {
    const Scenario sc = f.scenario();
    sc.validate();
    const auto steps = scenario_steps(f);
    const auto demands = demands_of(steps);
    Stopwatch clock;
    RunResult r;
    r.mode = mode;
    auto take = [&](Schedule s, RunStatus status) {
        r.cct_s = s.cct;
        r.reconfigs = s.reconfig_count();
        r.schedule = std::move(s);
        r.status = status;
    };
    auto take_report = [&](SolverReport rep) {
        r.nodes_explored = rep.nodes;
        take(std::move(rep.schedule), rep.optimality == Optimality::Proven ? RunStatus::Proven : RunStatus::Heuristic);
    };
    switch (mode) {
    case Mode::OneShot: {
        auto res = one_shot_schedule(sc, demands);
        if (res.feasible()) {
            take(std::move(*res.schedule), RunStatus::Ok);
        } else {
            r.status = RunStatus::Infeasible;
            r.reason = res.reason();
        }
        break;
    }
    case Mode::Strawman:
        take(strawman_schedule(sc, demands), RunStatus::Ok);
        break;
    case Mode::Ideal:
        r.cct_s = ideal_cct(sc, demands);
        break;
    case Mode::SwotExact:
        take_report(branch_and_bound(build_model(sc, steps), f.time_budget_s));
        break;
    case Mode::SwotHeuristic:
        take_report(heuristic_schedule(sc, demands));
        break;
    case Mode::Oracle:
        take_report(brute_force_oracle(build_model(sc, steps)));
        break;
    }
    r.wall_s = clock.seconds();
    return r;
}

inline RunResult run_scenario(const ScenarioFile &f) { return run_mode(f, f.mode); }

} // namespace ocsched::harness
