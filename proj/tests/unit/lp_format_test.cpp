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

#include <string>

#include <gtest/gtest.h>

#include "ocsched/collectives.hpp"
#include "ocsched/lp_format.hpp"
#include "ocsched/simplex.hpp"

using namespace ocsched;

namespace {

Scenario scenario(std::size_t k) {
    Scenario s;
    s.nodes = 8;
    s.ocs_count = k;
    s.bandwidth_bps = gbps_to_bps(400);
    s.t_recfg_s = us_to_seconds(200);
    return s;
}

MilpModel rab8_model() {
    return build_model(scenario(2), generate_steps({Algorithm::RabenseifnerAllReduce, 8, 40'000'000}).steps);
}

} // namespace

TEST(LpFormat, NumbersRoundTrip) {
    for (double v : {0.0, 1.0, -2.5, 2e-11, 1.0 / 3.0, 4e11, 0.00019999999999999998}) {
        EXPECT_EQ(std::stod(format_number(v)), v);
    }
    EXPECT_EQ(format_number(kInfinity), "inf");
}

TEST(LpFormat, DurationRowInSingleStepModel) {
    const StepPlan step{1, Permutation::exclusive_or(8, 1), 10e6, 1};
    const std::string text = export_lp(build_model(scenario(1), {step}));
    EXPECT_NE(text.find(" eq2_1_1: te_1_1 - ts_1_1 - 2e-11 d_1_1 = 0\n"), std::string::npos) << text;
    for (const char *section : {"Minimize\n", "Subject To\n", "Bounds\n", "Binaries\n", "Generals\n", "End\n"}) {
        EXPECT_NE(text.find(section), std::string::npos) << section;
    }
}

TEST(LpFormat, ExportIsDeterministic) {
    EXPECT_EQ(export_lp(rab8_model()), export_lp(rab8_model()));
}

TEST(LpFormat, ParsedModelMatchesOriginal) {
    const MilpModel m = rab8_model();
    const MilpModel back = parse_lp(export_lp(m));
    ASSERT_EQ(back.variables().size(), m.variables().size());
    ASSERT_EQ(back.constraints().size(), m.constraints().size());
    for (const auto &v : m.variables()) {
        const auto &w = back.variables()[back.require(v.name)];
        EXPECT_EQ(w.kind, v.kind) << v.name;
        EXPECT_EQ(w.lower, v.lower) << v.name;
        EXPECT_EQ(w.upper, v.upper) << v.name;
    }
    for (std::size_t r = 0; r < m.constraints().size(); ++r) {
        const auto &a = m.constraints()[r];
        const auto &b = back.constraints()[r];
        EXPECT_EQ(a.name, b.name);
        EXPECT_EQ(a.tag, b.tag) << a.name;
        EXPECT_EQ(a.sense, b.sense) << a.name;
        EXPECT_EQ(a.rhs, b.rhs) << a.name;
        ASSERT_EQ(a.terms.size(), b.terms.size()) << a.name;
        for (std::size_t t = 0; t < a.terms.size(); ++t) {
            EXPECT_EQ(m.variables()[a.terms[t].var].name, back.variables()[b.terms[t].var].name);
            EXPECT_EQ(a.terms[t].coeff, b.terms[t].coeff);
        }
    }
    EXPECT_EQ(back.metadata.cfg, m.metadata.cfg);
    EXPECT_EQ(back.metadata.volumes_bytes, m.metadata.volumes_bytes);
    EXPECT_EQ(back.metadata.bandwidth_bps, m.metadata.bandwidth_bps);
    EXPECT_EQ(back.metadata.t_recfg_s, m.metadata.t_recfg_s);
    EXPECT_EQ(back.time_big_m, m.time_big_m);
    EXPECT_FALSE(back.metadata.initial_configs.has_value());
    EXPECT_NEAR(simplex_solve(back).objective, simplex_solve(m).objective, 1e-12);
}

TEST(LpFormat, PinnedInitialConfigsSurviveRoundTrip) {
    Scenario sc = scenario(2);
    sc.initial_configs = std::vector<ConfigId>{0, 2};
    const MilpModel m = build_model(sc, generate_steps({Algorithm::RabenseifnerAllReduce, 8, 8'000'000}).steps);
    const MilpModel back = parse_lp(export_lp(m));
    EXPECT_EQ(back.metadata.initial_configs, sc.initial_configs);
    EXPECT_EQ(back.variables()[back.require("lc_1_2")].lower, 2.0);
}

TEST(LpFormat, ReadsCommonSpellings) {
    const MilpModel m = parse_lp(R"(\ hand written
MINIMIZE
 cost: 2 x + 3 y
   - z
SUBJECT TO
 c1: x + y >= 2
 x - z <= 4
 c3: y + z = 1
BOUNDS
 z free
 -1 <= x <= 10
 y < 5
GENERAL
 y
END
)");
    ASSERT_EQ(m.variables().size(), 3U);
    EXPECT_EQ(m.constraints().size(), 3U);
    EXPECT_EQ(m.constraints()[1].name, "R1");
    EXPECT_EQ(m.constraints()[1].sense, Sense::LessEqual);
    const auto &z = m.variables()[m.require("z")];
    EXPECT_TRUE(std::isinf(z.lower) && z.lower < 0);
    EXPECT_EQ(m.variables()[m.require("x")].lower, -1.0);
    EXPECT_EQ(m.variables()[m.require("y")].upper, 5.0);
    EXPECT_EQ(m.variables()[m.require("y")].kind, VarKind::Integer);
    ASSERT_EQ(m.objective().size(), 3U);
    EXPECT_EQ(m.objective()[2].coeff, -1.0);
}

TEST(LpFormat, MalformedInputNamesTheLine) {
    try {
        parse_lp("Minimize\n obj: x\nSubject To\n c: x 3\nEnd\n");
        FAIL() << "expected a parse error";
    } catch (const LpParseError &e) {
        EXPECT_EQ(e.line(), 4U);
    }
    EXPECT_THROW(parse_lp("Minimize\n obj: x\n"), LpParseError);
    EXPECT_THROW(parse_lp("Maximize\n obj: x\nEnd\n"), LpParseError);
}
