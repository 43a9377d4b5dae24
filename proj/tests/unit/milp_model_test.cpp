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

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "ocsched/collectives.hpp"
#include "ocsched/heuristic.hpp"
#include "ocsched/milp_model.hpp"

using namespace ocsched;

namespace {

Scenario rab8_scenario() {
    Scenario s;
    s.nodes = 8;
    s.ocs_count = 2;
    s.bandwidth_bps = gbps_to_bps(400);
    s.t_recfg_s = us_to_seconds(200);
    return s;
}

std::vector<StepPlan> rab8_steps() { return generate_steps({Algorithm::RabenseifnerAllReduce, 8, 40'000'000}).steps; }

/// Writes a timed schedule into the model's variable space.
std::vector<double> assignment_from(const MilpModel &m, const Schedule &sch, const std::vector<StepDemand> &demands) {
    std::vector<double> x(m.variables().size(), 0.0);
    const std::size_t I = sch.steps();
    const std::size_t J = sch.ocs_count();
    for (std::size_t j = 0; j < J; ++j) {
        double prev_end = 0.0;
        ConfigId holds = sch.initial_configs[j];
        for (std::size_t i = 0; i < I; ++i) {
            const Slot &s = sch.at(i, j);
            const PairVars v = pair_vars(m, i, j);
            x[v.lc] = holds;
            x[v.d] = s.volume_bytes;
            x[v.u] = s.used ? 1.0 : 0.0;
            x[v.r] = s.reconfig ? 1.0 : 0.0;
            x[v.s] = holds == demands[i].cfg ? 1.0 : 0.0;
            x[v.ts] = s.t_start;
            x[v.te] = s.t_end;
            x[v.rs] = s.t_recfg_s;
            x[v.re] = s.t_recfg_e;
            x[v.pe] = prev_end;
            if (s.reconfig) {
                holds = demands[i].cfg;
                prev_end = std::max(prev_end, s.t_recfg_e);
            }
            if (s.used) {
                prev_end = std::max(prev_end, s.t_end);
            }
        }
    }
    for (std::size_t i = 0; i < I; ++i) {
        x[m.require(step_name("se", i))] = sch.step_end[i];
    }
    x[m.require("cct")] = sch.cct;
    return x;
}

} // namespace

TEST(MilpModel, VariableCountsForEightNodeRabenseifner) {
    const MilpModel m = build_model(rab8_scenario(), rab8_steps());
    std::size_t binary = 0, continuous = 0, integer = 0;
    for (const auto &v : m.variables()) {
        binary += v.kind == VarKind::Binary;
        continuous += v.kind == VarKind::Continuous;
        integer += v.kind == VarKind::Integer;
    }
    EXPECT_EQ(binary, 3U * 6U * 2U);
    // six timing/volume variables per pair, six step ends, one objective
    EXPECT_EQ(continuous, 6U * 6U * 2U + 6U + 1U);
    EXPECT_EQ(integer, 6U * 2U);
}

TEST(MilpModel, RowFamiliesMatchFormulas) {
    const std::size_t I = 6, J = 2;
    const MilpModel m = build_model(rab8_scenario(), rab8_steps());
    EXPECT_EQ(m.count_tag("eq1"), I + I * J);
    for (const char *tag : {"eq2", "eq3", "eq4", "eq5", "eq9", "eq10"}) {
        EXPECT_EQ(m.count_tag(tag), I * J) << tag;
    }
    EXPECT_EQ(m.count_tag("eq6"), 2 * I * J);
    EXPECT_EQ(m.count_tag("eq7"), J);
    EXPECT_EQ(m.count_tag("eq8"), 3 * (I - 1) * J);
    EXPECT_EQ(m.count_tag("eq11"), (I - 1) * J);
    EXPECT_EQ(m.count_tag("lastcfg"), 4 * (I - 1) * J);
    EXPECT_EQ(m.count_tag("obj"), I);
    const std::set<std::string> allowed{"eq1", "eq2", "eq3", "eq4",     "eq5", "eq6",          "eq7",
                                        "eq8", "eq9", "eq10", "eq11", "lastcfg", "obj", "linearization"};
    for (const auto &c : m.constraints()) {
        EXPECT_TRUE(allowed.count(c.tag)) << c.name;
    }
}

TEST(MilpModel, RowsAreLinearInDistinctVariables) {
    const MilpModel m = build_model(rab8_scenario(), rab8_steps());
    for (const auto &c : m.constraints()) {
        std::set<std::size_t> seen;
        for (const auto &t : c.terms) {
            EXPECT_TRUE(seen.insert(t.var).second) << c.name;
            EXPECT_TRUE(std::isfinite(t.coeff)) << c.name;
        }
    }
}

TEST(MilpModel, HorizonAndConfigBigM) {
    const MilpModel m = build_model(rab8_scenario(), rab8_steps());
    // 70 MB at 400 Gbps plus six reconfigurations
    EXPECT_NEAR(seconds_to_us(m.time_big_m), 1900.0, 1e-9);
    EXPECT_EQ(m.config_big_m, 4.0);
    const auto b = schedule_bounds(demands_of(rab8_steps()), rab8_scenario());
    EXPECT_NEAR(seconds_to_us(b.lower_bound), 700.0, 1e-9);
    EXPECT_LE(b.lower_bound, b.horizon);
}

TEST(MilpModel, EmptyStepsRejected) {
    EXPECT_THROW(build_model(rab8_scenario(), {}), ModelError);
}

TEST(MilpModel, SingleStepWithoutReconfiguration) {
    Scenario sc = rab8_scenario();
    sc.ocs_count = 1;
    sc.initial_configs = std::vector<ConfigId>{1};
    const StepPlan step{1, Permutation::exclusive_or(8, 1), 10e6, 1};
    const MilpModel m = build_model(sc, {step});
    const PairVars v = pair_vars(m, 0, 0);
    std::vector<double> x(m.variables().size(), 0.0);
    x[v.d] = 10e6;
    x[v.u] = 1.0;
    x[v.s] = 1.0;
    x[v.lc] = 1.0;
    x[v.te] = us_to_seconds(200);
    x[m.require("se_1")] = us_to_seconds(200);
    x[m.require("cct")] = us_to_seconds(200);
    EXPECT_LT(m.max_violation(x), 1e-12);
    // the same point with a mismatching preinstall breaks the match rows
    x[v.lc] = 0.0;
    EXPECT_GT(m.max_violation(x), 1e-3);
}

TEST(MilpModel, PinnedInitialConfigsFixStepOne) {
    Scenario sc = rab8_scenario();
    sc.initial_configs = std::vector<ConfigId>{0, 3};
    const MilpModel m = build_model(sc, rab8_steps());
    const auto &lc = m.variables()[m.require("lc_1_2")];
    EXPECT_EQ(lc.lower, 3.0);
    EXPECT_EQ(lc.upper, 3.0);
    sc.initial_configs = std::vector<ConfigId>{0, 4};
    EXPECT_THROW(build_model(sc, rab8_steps()), ModelError);
}

TEST(MilpModel, BaselineSchedulesAreFeasibleAssignments) {
    const Scenario sc = rab8_scenario();
    const auto steps = rab8_steps();
    const auto demands = demands_of(steps);
    const MilpModel m = build_model(sc, steps);
    for (const Schedule &sch : {strawman_schedule(sc, demands), heuristic_schedule(sc, demands).schedule}) {
        const auto x = assignment_from(m, sch, demands);
        EXPECT_LT(m.max_violation(x), 1e-9);
        EXPECT_DOUBLE_EQ(m.objective_value(x), sch.cct);
    }
}

TEST(MilpModel, MetadataEchoesInstance) {
    const MilpModel m = build_model(rab8_scenario(), rab8_steps());
    EXPECT_EQ(m.metadata.steps, 6U);
    EXPECT_EQ(m.metadata.ocs, 2U);
    EXPECT_EQ(m.metadata.config_count, 3U);
    EXPECT_EQ(m.metadata.cfg, (std::vector<ConfigId>{1, 2, 3, 3, 2, 1}));
    EXPECT_FALSE(m.metadata.initial_configs.has_value());
}
