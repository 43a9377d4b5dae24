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

#include <sstream>

#include <gtest/gtest.h>

#include "ocsched/harness/bundle.hpp"
#include "ocsched/harness/sweep.hpp"

using namespace ocsched;
using namespace ocsched::harness;

namespace {

const char *kRab8 = R"(
# comment line
[cluster]
nodes = 8
ocs_count = 2
bandwidth_gbps = 400
t_recfg_us = 200     ; trailing comment

[collective]
algorithm = rabenseifner
size_mb = 40

[solve]
mode = strawman
)";

std::string error_key(const std::string &text) {
    try {
        parse_scenario_text(text);
    } catch (const ScenarioError &e) {
        return e.key();
    }
    return "<no error>";
}

std::string replace(std::string text, const std::string &from, const std::string &to) {
    text.replace(text.find(from), from.size(), to);
    return text;
}

} // namespace

TEST(ScenarioFile, ReadsAndDefaults) {
    const ScenarioFile f = parse_scenario_text(kRab8);
    EXPECT_EQ(f.nodes, 8U);
    EXPECT_EQ(f.ocs_count, 2U);
    EXPECT_EQ(f.bandwidth_gbps, 400.0);
    EXPECT_EQ(f.sync_latency_us, 0.0);
    EXPECT_EQ(f.time_budget_s, 90.0);
    EXPECT_FALSE(f.initial_configs.has_value());
    EXPECT_EQ(f.mode, Mode::Strawman);
    EXPECT_EQ(f.collective().size_bytes, 40'000'000U);
    EXPECT_EQ(f.scenario().t_recfg_s, us_to_seconds(200));
}

TEST(ScenarioFile, ErrorsNameTheKey) {
    const std::string base = kRab8;
    EXPECT_EQ(error_key(replace(base, "nodes = 8", "")), "cluster.nodes");
    EXPECT_EQ(error_key(replace(base, "ocs_count = 2", "ocs_count = two")), "cluster.ocs_count");
    EXPECT_EQ(error_key(replace(base, "bandwidth_gbps = 400", "bandwidth_gbps = -1")), "cluster.bandwidth_gbps");
    EXPECT_EQ(error_key(replace(base, "size_mb = 40", "size_mb = 40\ncolour = red")), "collective.colour");
    EXPECT_EQ(error_key(replace(base, "mode = strawman", "mode = fastest")), "solve.mode");
    EXPECT_EQ(error_key(replace(base, "algorithm = rabenseifner", "algorithm = tree")), "collective.algorithm");
    EXPECT_EQ(error_key(replace(base, "nodes = 8", "nodes = 6")), "collective.algorithm");
    EXPECT_EQ(error_key(replace(base, "t_recfg_us = 200", "t_recfg_us = 200\nt_recfg_us = 100")), "cluster.t_recfg_us");
    EXPECT_EQ(error_key(replace(base, "t_recfg_us = 200", "t_recfg_us = 200\ninitial_configs = 1")),
              "cluster.initial_configs");
}

TEST(ScenarioFile, FormatRoundTrips) {
    ScenarioFile f = parse_scenario_text(kRab8);
    f.initial_configs = std::vector<ConfigId>{0, 3};
    f.sync_latency_us = 2.5;
    const ScenarioFile g = parse_scenario_text(format_scenario(f));
    EXPECT_EQ(format_scenario(g), format_scenario(f));
    EXPECT_EQ(g.initial_configs, f.initial_configs);
}

TEST(Run, ModesOnEightNodeRabenseifner) {
    ScenarioFile f = parse_scenario_text(kRab8);
    EXPECT_NEAR(seconds_to_us(run_mode(f, Mode::Strawman).cct_s), 1500.0, 1e-9);
    EXPECT_NEAR(seconds_to_us(run_mode(f, Mode::Ideal).cct_s), 700.0, 1e-9);
    const RunResult one = run_mode(f, Mode::OneShot);
    EXPECT_FALSE(one.feasible());
    EXPECT_EQ(one.reason, "3 configs > 2 OCSes");
    EXPECT_LE(run_mode(f, Mode::SwotHeuristic).cct_s, run_mode(f, Mode::Strawman).cct_s);
}

TEST(Bundle, StrawmanTimelines) {
    const ScenarioFile f = parse_scenario_text(kRab8);
    const auto steps = scenario_steps(f);
    const RunResult r = run_mode(f, Mode::Strawman);
    const Json b = bundle_json(*r.schedule, f, steps, "ok");
    EXPECT_EQ(b["schema_version"], 1);
    ASSERT_EQ(b["ocs_timelines"].size(), 2U);
    const auto trace = config_trace(*r.schedule, demands_of(steps));
    for (std::size_t j = 0; j < 2; ++j) {
        const Json &events = b["ocs_timelines"][j]["events"];
        ASSERT_EQ(events.size(), 4U);
        for (std::size_t n = 0; n < events.size(); ++n) {
            EXPECT_EQ(events[n]["config"].get<ConfigId>(), trace[j][n + 1].config);
            EXPECT_EQ(us_to_seconds(events[n]["end_us"].get<double>()), trace[j][n + 1].time);
            // a bijection on the node ports
            auto perm = events[n]["permutation"].get<std::vector<std::size_t>>();
            std::sort(perm.begin(), perm.end());
            for (std::size_t q = 0; q < perm.size(); ++q) {
                EXPECT_EQ(perm[q], q);
            }
        }
    }
    // 8 nodes x 6 steps x 2 OCSes
    EXPECT_EQ(b["transmissions"].size(), 96U);
    EXPECT_EQ(bundle_text(b), bundle_text(bundle_json(*r.schedule, f, steps, "ok")));
    const auto keys = [&] {
        std::vector<std::string> k;
        for (auto it = b.begin(); it != b.end(); ++it) {
            k.push_back(it.key());
        }
        return k;
    }();
    EXPECT_EQ(keys, (std::vector<std::string>{"schema_version", "scenario", "summary", "steps", "ocs_timelines",
                                              "transmissions"}));
}

TEST(Bundle, RingHasEmptyTimelines) {
    ScenarioFile f = parse_scenario_text(replace(kRab8, "rabenseifner", "ring"));
    const RunResult r = run_mode(f, Mode::SwotHeuristic);
    const Json b = bundle_json(*r.schedule, f, scenario_steps(f), "heuristic");
    for (const auto &t : b["ocs_timelines"]) {
        EXPECT_TRUE(t["events"].empty());
    }
}

TEST(Bundle, RoundTripsThroughText) {
    const ScenarioFile f = parse_scenario_text(kRab8);
    const RunResult r = run_mode(f, Mode::SwotHeuristic);
    const Json b = bundle_json(*r.schedule, f, scenario_steps(f), "heuristic");
    const LoadedBundle back = load_bundle(Json::parse(bundle_text(b)));
    const SimReport sim = simulate(back.schedule, back.scenario.scenario(), demands_of(back.steps));
    EXPECT_TRUE(sim.valid());
    EXPECT_NEAR(sim.cct, r.cct_s, 1e-12);
    EXPECT_EQ(back.schedule.initial_configs, r.schedule->initial_configs);
    EXPECT_EQ(back.schedule.reconfig_count(), r.schedule->reconfig_count());
}

TEST(Bundle, RefusesInvalidSchedules) {
    const ScenarioFile f = parse_scenario_text(kRab8);
    Schedule s = *run_mode(f, Mode::Strawman).schedule;
    s.at(1, 0).t_start -= us_to_seconds(5);
    EXPECT_THROW(bundle_json(s, f, scenario_steps(f), "ok"), RefusesInvalid);
}

TEST(Bundle, RejectsTamperedPermutations) {
    const ScenarioFile f = parse_scenario_text(kRab8);
    Json b = bundle_json(*run_mode(f, Mode::Strawman).schedule, f, scenario_steps(f), "ok");
    Json bad = b;
    bad["ocs_timelines"][0]["events"][0]["permutation"][0] = 1;
    EXPECT_THROW(load_bundle(bad), BundleError);
    bad = b;
    std::swap(bad["ocs_timelines"][0]["events"][0]["permutation"][0],
              bad["ocs_timelines"][0]["events"][0]["permutation"][2]);
    EXPECT_THROW(load_bundle(bad), BundleError);
    bad = b;
    bad["schema_version"] = 2;
    EXPECT_THROW(load_bundle(bad), BundleError);
}

TEST(Sweep, DoublingGrid) {
    const auto sizes = doubling_range(1.6, 409.6);
    ASSERT_EQ(sizes.size(), 9U);
    EXPECT_EQ(sizes.front(), 1.6);
    EXPECT_EQ(sizes[2], 6.4);
    EXPECT_EQ(sizes[5], 51.2);
    EXPECT_EQ(sizes.back(), 409.6);
}

TEST(Sweep, MessageSizeGridCardinalityAndOrder) {
    std::istringstream in(R"([sweep]
algorithms = rabenseifner
nodes = 16
ocs_count = 4
sizes_mb = 1.6..409.6
modes = oneshot, strawman, swot-heuristic, ideal
)");
    const SweepGrid g = parse_sweep(in);
    EXPECT_EQ(g.row_count(), 36U);
    const auto rows = run_sweep(g, 3);
    ASSERT_EQ(rows.size(), 36U);
    EXPECT_EQ(rows[0].scenario, "rabenseifner-p16-k4-s1.6");
    EXPECT_EQ(rows[0].point.mode, Mode::OneShot);
    EXPECT_EQ(rows[3].point.mode, Mode::Ideal);
    EXPECT_EQ(rows[35].scenario, "rabenseifner-p16-k4-s409.6");
    for (const auto &r : rows) {
        EXPECT_TRUE(r.ok()) << r.scenario << " " << r.status;
    }
    std::ostringstream a, b;
    write_csv(a, rows);
    write_csv(b, run_sweep(g, 1));
    // identical apart from the wall-clock column
    auto strip = [](const std::string &csv) {
        std::istringstream lines(csv);
        std::string line, out;
        while (std::getline(lines, line)) {
            out += line.substr(0, line.rfind(',')) + "\n";
        }
        return out;
    };
    EXPECT_EQ(strip(a.str()), strip(b.str()));
    EXPECT_EQ(a.str().substr(0, a.str().find('\n')), kCsvHeader);
}

TEST(Sweep, InfeasibleRowsAreKept) {
    std::istringstream in(R"([sweep]
algorithms = rabenseifner
nodes = 8, 16, 32
ocs_count = 4
sizes_mb = 40
modes = oneshot
)");
    const auto rows = run_sweep(parse_sweep(in));
    ASSERT_EQ(rows.size(), 3U);
    EXPECT_TRUE(rows[0].ok());
    EXPECT_TRUE(rows[1].ok());
    EXPECT_FALSE(rows[2].ok());
    EXPECT_EQ(rows[2].status, "infeasible(5 configs > 4 OCSes)");
    std::ostringstream csv;
    write_csv(csv, rows);
    EXPECT_NE(csv.str().find("rabenseifner-p32-k4-s40,rabenseifner,32,4,40,oneshot,,,infeasible(5 configs > 4 OCSes),"),
              std::string::npos);
}

TEST(Sweep, CsvReproducesSolve) {
    std::istringstream in(R"([sweep]
algorithms = pairwise, bruck
nodes = 8
ocs_count = 3
sizes_mb = 3.2, 51.2
modes = strawman, swot-heuristic
)");
    for (const auto &row : run_sweep(parse_sweep(in))) {
        const ScenarioFile again = parse_scenario_text(format_scenario(row.point));
        const double cct_us = seconds_to_us(run_scenario(again).cct_s);
        EXPECT_NEAR(cct_us, std::stod(shortest(*row.cct_us)), 1e-6 * cct_us) << row.scenario;
    }
}

TEST(Sweep, BadPointsBecomeErrorRows) {
    std::istringstream in(R"([sweep]
algorithms = bruck
nodes = 6
ocs_count = 2
sizes_mb = 4
modes = strawman
)");
    const auto rows = run_sweep(parse_sweep(in));
    ASSERT_EQ(rows.size(), 1U);
    EXPECT_FALSE(rows[0].ok());
    EXPECT_EQ(rows[0].status.rfind("error(", 0), 0U);
}
