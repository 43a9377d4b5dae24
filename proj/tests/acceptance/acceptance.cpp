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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. `--only <name>` runs a single criterion.

#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ocsched/ocsched.hpp"

namespace {

using namespace ocsched;

// Relative tolerance on objective values.
constexpr double kObjTol = 1e-6;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            if (!pass) {
                detail << "; ";
            }
            pass = false;
            detail << what;
        }
    }
};

Scenario cluster(std::size_t nodes, std::size_t k, double gbps, double t_us) {
    Scenario s;
    s.nodes = nodes;
    s.ocs_count = k;
    s.bandwidth_bps = gbps_to_bps(gbps);
    s.t_recfg_s = us_to_seconds(t_us);
    return s;
}

std::vector<StepPlan> steps_for(Algorithm a, std::size_t p, double mb) {
    return generate_steps({a, p, static_cast<std::uint64_t>(std::llround(megabytes_to_bytes(mb)))}).steps;
}

bool le(double a, double b) { return a <= b * (1.0 + kObjTol); }

std::string us(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", seconds_to_us(s));
    return buf;
}

std::string pct(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * x);
    return buf;
}

std::string point_name(Algorithm a, std::size_t p, double mb) {
    return std::string(algorithm_name(a)) + " p=" + std::to_string(p) + " S=" + harness::shortest(mb) + "MB";
}

// ---------------------------------------------------------------------------

Outcome motivation_example() {
    Outcome o;
    Stopwatch clock;
    const Scenario sc = cluster(8, 2, 400, 200);
    const auto steps = steps_for(Algorithm::RabenseifnerAllReduce, 8, 40);
    const auto d = demands_of(steps);
    const Schedule straw = strawman_schedule(sc, d);
    const double ideal = ideal_cct(sc, d);
    const SolverReport exact = branch_and_bound(build_model(sc, steps), 60.0);
    const double wall = clock.seconds();

    const double straw_us = seconds_to_us(straw.cct);
    const double share = (straw_us - seconds_to_us(ideal)) / straw_us;
    const double gain = 1.0 - exact.cct / straw.cct;
    o.require(std::fabs(straw_us - 1500.0) <= 1e-9 * 1500.0, "strawman " + us(straw.cct) + " us, expected 1500");
    o.require(std::fabs(share - 0.533) <= 0.001, "reconfiguration share " + pct(share) + ", expected 53.3%");
    o.require(std::fabs(seconds_to_us(ideal) - 700.0) <= 1e-9 * 700.0, "ideal " + us(ideal) + " us, expected 700");
    const double exact_us = seconds_to_us(exact.cct);
    o.require(exact_us >= 700.0 * (1.0 - kObjTol) && le(exact_us, 1200.0),
              "exact " + us(exact.cct) + " us outside [700, 1200]");
    o.require(gain >= 0.20 - kObjTol, "improvement " + pct(gain) + " below 20%");
    o.require(simulate(exact.schedule, sc, d).valid(), "exact schedule fails replay");
    o.require(wall < 60.0, "took " + std::to_string(wall) + " s");
    o.detail << (o.pass ? "" : " | ") << "strawman=" << us(straw.cct) << "us reconfig_share=" << pct(share)
             << " ideal=" << us(ideal) << "us exact=" << us(exact.cct) << "us (" << to_string(exact.optimality)
             << ", " << exact.nodes << " nodes) improvement=" << pct(gain) << " wall=" << wall << "s";
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    Stopwatch clock;
    std::size_t points = 0;
    double worst = 0.0;
    for (Algorithm a : {Algorithm::RabenseifnerAllReduce, Algorithm::PairwiseAllToAll, Algorithm::BruckAllToAll}) {
        for (std::size_t k : {1U, 2U}) {
            for (double mb : {4.0, 40.0}) {
                const MilpModel m = build_model(cluster(4, k, 400, 200), steps_for(a, 4, mb));
                const SolverReport exact = branch_and_bound(m, 120.0);
                const SolverReport oracle = brute_force_oracle(m);
                const double rel = std::fabs(exact.cct - oracle.cct) / oracle.cct;
                worst = std::max(worst, rel);
                ++points;
                const std::string name = point_name(a, 4, mb) + " k=" + std::to_string(k);
                o.require(rel <= kObjTol, name + ": exact " + us(exact.cct) + " vs oracle " + us(oracle.cct));
                o.require(exact.optimality == Optimality::Proven, name + ": search not completed");
            }
        }
    }
    const double wall = clock.seconds();
    o.require(wall < 600.0, "took " + std::to_string(wall) + " s");
    o.detail << (o.pass ? "" : " | ") << points << " points, worst relative gap " << worst << ", wall=" << wall
             << "s";
    return o;
}

/// Per-point results on the k=4, 200 Gbps grid, shared by two criteria.
struct GridPoint {
    Algorithm algorithm = Algorithm::RingAllReduce;
    std::size_t nodes = 0;
    double size_mb = 0.0;
    double ideal = 0.0;
    double strawman = 0.0;
    std::optional<double> one_shot;
    double exact = 0.0;
    bool proven = false;
    std::vector<std::string> replay_failures;
};

constexpr double kGridBudgetS = 5.0;

const std::vector<GridPoint> &dominance_grid() {
    static const std::vector<GridPoint> grid = [] {
        std::vector<GridPoint> out;
        for (Algorithm a : {Algorithm::RabenseifnerAllReduce, Algorithm::PairwiseAllToAll, Algorithm::BruckAllToAll}) {
            for (std::size_t p : {8U, 16U}) {
                for (double mb : harness::doubling_range(1.6, 409.6)) {
                    GridPoint g;
                    g.algorithm = a;
                    g.nodes = p;
                    g.size_mb = mb;
                    const Scenario sc = cluster(p, 4, 200, 200);
                    const auto steps = steps_for(a, p, mb);
                    const auto d = demands_of(steps);
                    g.ideal = ideal_cct(sc, d);
                    auto check = [&](const Schedule &s, const char *who) {
                        const SimReport r = simulate(s, sc, d);
                        if (!r.valid()) {
                            g.replay_failures.push_back(point_name(a, p, mb) + " " + who + ": " +
                                                        r.violations.front().detail);
                        }
                    };
                    const Schedule straw = strawman_schedule(sc, d);
                    check(straw, "strawman");
                    g.strawman = straw.cct;
                    if (auto one = one_shot_schedule(sc, d); one.feasible()) {
                        check(*one.schedule, "one-shot");
                        g.one_shot = one.schedule->cct;
                    }
                    check(heuristic_schedule(sc, d).schedule, "heuristic");
                    const SolverReport exact = branch_and_bound(build_model(sc, steps), kGridBudgetS);
                    check(exact.schedule, "exact");
                    g.exact = exact.cct;
                    g.proven = exact.optimality == Optimality::Proven;
                    out.push_back(std::move(g));
                }
            }
        }
        return out;
    }();
    return grid;
}

Outcome dominance_chain() {
    Outcome o;
    Stopwatch clock;
    const auto &grid = dominance_grid();
    std::size_t proven = 0, one_shot = 0;
    for (const auto &g : grid) {
        const std::string name = point_name(g.algorithm, g.nodes, g.size_mb);
        o.require(le(g.ideal, g.exact), name + ": ideal " + us(g.ideal) + " > exact " + us(g.exact));
        o.require(le(g.exact, g.strawman), name + ": exact " + us(g.exact) + " > strawman " + us(g.strawman));
        if (g.one_shot) {
            ++one_shot;
            o.require(le(g.exact, *g.one_shot), name + ": exact " + us(g.exact) + " > one-shot " + us(*g.one_shot));
        }
        for (const auto &f : g.replay_failures) {
            o.require(false, f);
        }
        proven += g.proven;
    }
    o.detail << (o.pass ? "" : " | ") << grid.size() << " points (" << one_shot << " with one-shot), " << proven
             << " proven optimal within " << kGridBudgetS << "s, wall=" << clock.seconds() << "s";
    return o;
}

Outcome large_message_asymptote() {
    Outcome o;
    const Scenario sc = cluster(16, 4, 200, 200);
    const auto steps = steps_for(Algorithm::RabenseifnerAllReduce, 16, 409.6);
    const auto d = demands_of(steps);
    const auto one = one_shot_schedule(sc, d);
    o.require(one.feasible(), "one-shot infeasible: " + one.reason());
    if (!one.feasible()) {
        return o;
    }
    const SolverReport exact = branch_and_bound(build_model(sc, steps), 30.0);
    const double reduction = 1.0 - exact.cct / one.schedule->cct;
    o.require(reduction >= 0.65 && reduction <= 0.75, "reduction " + pct(reduction) + " outside [65%, 75%]");
    o.require(simulate(exact.schedule, sc, d).valid(), "exact schedule fails replay");
    o.detail << (o.pass ? "" : " | ") << "one-shot=" << us(one.schedule->cct) << "us swot=" << us(exact.cct)
             << "us reduction=" << pct(reduction) << " (ceiling " << pct(0.75) << ")";
    return o;
}

Outcome small_message_crossover() {
    Outcome o;
    std::size_t compared = 0;
    for (const auto &g : dominance_grid()) {
        if (g.size_mb != 1.6) {
            continue;
        }
        const std::string name = point_name(g.algorithm, g.nodes, g.size_mb);
        if (g.one_shot) {
            ++compared;
            o.require(g.strawman > *g.one_shot,
                      name + ": strawman " + us(g.strawman) + " <= one-shot " + us(*g.one_shot));
        }
        o.require(le(g.exact, g.strawman), name + ": exact " + us(g.exact) + " > strawman " + us(g.strawman));
    }
    o.require(compared > 0, "no point with a feasible one-shot");
    o.detail << (o.pass ? "" : " | ") << compared << " points with one-shot at 1.6 MB";
    return o;
}

Outcome scaling_trend() {
    Outcome o;
    auto series = [&](Algorithm a, std::initializer_list<std::size_t> nodes) {
        std::vector<double> gains;
        std::ostringstream line;
        line << algorithm_name(a) << " [";
        for (std::size_t p : nodes) {
            const Scenario sc = cluster(p, 4, 200, 200);
            const auto d = demands_of(steps_for(a, p, 40));
            const SolverReport h = heuristic_schedule(sc, d);
            o.require(simulate(h.schedule, sc, d).valid(), point_name(a, p, 40) + ": heuristic fails replay");
            gains.push_back(1.0 - h.cct / strawman_schedule(sc, d).cct);
            line << (gains.size() > 1 ? ", " : "") << "p" << p << "=" << pct(gains.back());
        }
        line << "]";
        for (std::size_t n = 1; n < gains.size(); ++n) {
            o.require(gains[n] >= gains[n - 1], std::string(algorithm_name(a)) + " improvement drops");
        }
        return line.str();
    };
    const std::string r = series(Algorithm::RabenseifnerAllReduce, {8, 16, 32, 64});
    const std::string w = series(Algorithm::PairwiseAllToAll, {4, 6, 8, 10});
    o.detail << (o.pass ? "" : " | ") << r << " " << w;
    return o;
}

Outcome one_shot_wall() {
    Outcome o;
    std::ostringstream infeasible;
    auto probe = [&](Algorithm a, std::size_t p, bool expect_feasible) {
        const auto r = one_shot_schedule(cluster(p, 4, 200, 200), demands_of(steps_for(a, p, 40)));
        o.require(r.feasible() == expect_feasible,
                  point_name(a, p, 40) + (r.feasible() ? " feasible" : " infeasible (" + r.reason() + ")"));
        if (!r.feasible()) {
            infeasible << " " << algorithm_name(a) << ":" << p;
        }
    };
    for (std::size_t p : {2U, 4U, 8U, 16U, 32U, 64U, 128U}) {
        probe(Algorithm::RabenseifnerAllReduce, p, p < 32);
    }
    for (std::size_t p = 2; p <= 12; ++p) {
        probe(Algorithm::PairwiseAllToAll, p, p < 6);
    }
    o.detail << (o.pass ? "" : " | ") << "infeasible at" << infeasible.str();
    return o;
}

/// Bytes each node sends over the whole collective, from the textbook
/// descriptions, when S splits evenly into p blocks.
std::uint64_t closed_form_volume(Algorithm a, std::uint64_t p, std::uint64_t S) {
    const std::uint64_t block = S / p;
    std::uint64_t log2p = 0;
    while ((std::uint64_t{1} << log2p) < p) {
        ++log2p;
    }
    switch (a) {
    case Algorithm::RingAllReduce:
        return 2 * (p - 1) * block;
    case Algorithm::RabenseifnerAllReduce:
        return 2 * (S - block);
    case Algorithm::PairwiseAllToAll:
        return (p - 1) * block;
    case Algorithm::BruckAllToAll:
        return log2p * (p / 2) * block;
    }
    return 0;
}

std::uint64_t closed_form_steps(Algorithm a, std::uint64_t p) {
    std::uint64_t log2p = 0;
    while ((std::uint64_t{1} << log2p) < p) {
        ++log2p;
    }
    switch (a) {
    case Algorithm::RingAllReduce:
        return 2 * (p - 1);
    case Algorithm::RabenseifnerAllReduce:
        return 2 * log2p;
    case Algorithm::PairwiseAllToAll:
        return p - 1;
    case Algorithm::BruckAllToAll:
        return log2p;
    }
    return 0;
}

Outcome collective_semantics() {
    Outcome o;
    std::size_t checked = 0;
    const std::uint64_t S = 48'000'000; // divisible by 2, 4, 8 and 16
    for (Algorithm a : {Algorithm::RingAllReduce, Algorithm::RabenseifnerAllReduce, Algorithm::PairwiseAllToAll,
                        Algorithm::BruckAllToAll}) {
        for (std::uint64_t p : {2U, 4U, 8U, 16U}) {
            const CollectiveSpec spec{a, p, S};
            const auto steps = generate_steps(spec).steps;
            const std::string name = std::string(algorithm_name(a)) + " p=" + std::to_string(p);
            const auto sem = verify_collective_semantics(steps, spec);
            o.require(static_cast<bool>(sem), name + ": " + sem.detail);
            double total = 0.0;
            for (const auto &s : steps) {
                total += s.volume_bytes;
            }
            o.require(steps.size() == closed_form_steps(a, p), name + ": " + std::to_string(steps.size()) + " steps");
            o.require(total == static_cast<double>(closed_form_volume(a, p, S)),
                      name + ": volume " + std::to_string(total) + " vs " +
                          std::to_string(closed_form_volume(a, p, S)));
            ++checked;
        }
    }
    o.detail << (o.pass ? "" : " | ") << checked << " (algorithm, p) pairs";
    return o;
}

Outcome lp_round_trip() {
    Outcome o;
    const MilpModel m = build_model(cluster(8, 2, 400, 200), steps_for(Algorithm::RabenseifnerAllReduce, 8, 40));
    const std::string text = export_lp(m);
    const std::string again =
        export_lp(build_model(cluster(8, 2, 400, 200), steps_for(Algorithm::RabenseifnerAllReduce, 8, 40)));
    o.require(text == again, "export differs between runs");
    const MilpModel parsed = parse_lp(text);
    o.require(export_lp(parse_lp(again)) == export_lp(parsed), "re-export of the parsed model differs");
    const SolverReport from_parsed = brute_force_oracle(parsed);
    const SolverReport from_model = brute_force_oracle(m);
    const double rel = std::fabs(from_parsed.cct - from_model.cct) / from_model.cct;
    o.require(rel <= kObjTol, "parsed optimum " + us(from_parsed.cct) + " vs " + us(from_model.cct));
    o.detail << (o.pass ? "" : " | ") << text.size() << " bytes, " << m.constraints().size() << " rows, optimum "
             << us(from_parsed.cct) << "us (original " << us(from_model.cct) << "us)";
    return o;
}

} // namespace

int main(int argc, char **argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"motivation_example", motivation_example},
        {"oracle_equivalence", oracle_equivalence},
        {"dominance_chain", dominance_chain},
        {"large_message_asymptote", large_message_asymptote},
        {"small_message_crossover", small_message_crossover},
        {"scaling_trend", scaling_trend},
        {"one_shot_wall", one_shot_wall},
        {"collective_semantics", collective_semantics},
        {"lp_round_trip", lp_round_trip},
    };
    std::string only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = argv[++i];
        } else if (std::strcmp(argv[i], "--list") == 0) {
            for (const auto &c : criteria) {
                std::printf("%s\n", c.first.c_str());
            }
            return 0;
        } else {
            std::fprintf(stderr, "usage: %s [--list] [--only <criterion>]\n", argv[0]);
            return 2;
        }
    }
    int failed = 0, ran = 0;
    for (const auto &[name, run] : criteria) {
        if (!only.empty() && name != only) {
            continue;
        }
        ++ran;
        Outcome out;
        try {
            out = run();
        } catch (const std::exception &e) {
            out.pass = false;
            out.detail << "exception: " << e.what();
        }
        failed += !out.pass;
        std::printf("%s %-24s %s\n", out.pass ? "PASS" : "FAIL", name.c_str(), out.detail.str().c_str());
        std::fflush(stdout);
    }
    if (ran == 0) {
        std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
        return 2;
    }
    std::printf("%d/%d criteria passed\n", ran - failed, ran);
    return failed == 0 ? 0 : 1;
}
