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

// Command-line front end: solve, sweep, export-lp, simulate.
//
// Exit codes: 0 success, 1 input or runtime error, 2 infeasible.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ocsched/ocsched.hpp"

namespace {

using namespace ocsched;
using namespace ocsched::harness;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

bool write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream out(path);
    out << text;
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return false;
    }
    return true;
}

struct SolveArgs {
    std::string scenario;
    std::string mode;
    std::string out;
    double time_budget = 0.0;
};

int cmd_solve(const SolveArgs &a) {
    ScenarioFile f = load_scenario(a.scenario);
    if (!a.mode.empty()) {
        const auto m = parse_mode(a.mode);
        if (!m) {
            std::cerr << "error: --mode: unknown mode '" << a.mode << "'\n";
            return kExitError;
        }
        f.mode = *m;
    }
    if (a.time_budget > 0.0) {
        f.time_budget_s = a.time_budget;
    }
    const RunResult r = run_scenario(f);
    if (!r.feasible()) {
        std::cout << "Infeasible: " << r.reason << "\n";
        return kExitInfeasible;
    }
    std::cout << "mode=" << mode_name(f.mode) << " cct_us=" << shortest(seconds_to_us(r.cct_s))
              << " reconfigs=" << r.reconfigs << " status=" << status_name(r.status);
    if (r.nodes_explored) {
        std::cout << " nodes=" << r.nodes_explored;
    }
    std::cout << " wall_s=" << r.wall_s << "\n";
    if (a.out.empty()) {
        return kExitOk;
    }
    if (!r.schedule) {
        std::cerr << "note: mode " << mode_name(f.mode) << " yields a bound, not a schedule; no bundle written\n";
        return kExitOk;
    }
    const auto bundle = bundle_json(*r.schedule, f, scenario_steps(f), status_name(r.status));
    return write_text(a.out, bundle_text(bundle)) ? kExitOk : kExitError;
}

int cmd_sweep(const std::string &grid_path, const std::string &out, std::size_t jobs, double time_budget) {
    std::ifstream in(grid_path);
    if (!in) {
        std::cerr << "error: cannot open " << grid_path << "\n";
        return kExitError;
    }
    SweepGrid grid = parse_sweep(in);
    if (time_budget > 0.0) {
        grid.time_budget_s = time_budget;
    }
    if (grid.row_count() == 0) {
        std::cerr << "error: the grid is empty\n";
        return kExitError;
    }
    const auto rows = run_sweep(grid, jobs);
    std::ostringstream csv;
    write_csv(csv, rows);
    if (!write_text(out, csv.str())) {
        return kExitError;
    }
    const auto good = std::count_if(rows.begin(), rows.end(), [](const ResultRow &r) { return r.ok(); });
    std::cerr << rows.size() << " rows, " << good << " with a schedule or bound\n";
    return good > 0 ? kExitOk : kExitError;
}

int cmd_export_lp(const std::string &scenario, const std::string &out) {
    const ScenarioFile f = load_scenario(scenario);
    return write_text(out, export_lp(build_model(f.scenario(), scenario_steps(f)))) ? kExitOk : kExitError;
}

int cmd_simulate(const std::string &bundle_path) {
    const LoadedBundle b = load_bundle_file(bundle_path);
    const SimReport rep = simulate(b.schedule, b.scenario.scenario(), demands_of(b.steps));
    for (const auto &w : rep.warnings) {
        std::cout << "warning: " << w << "\n";
    }
    for (const auto &v : rep.violations) {
        std::cout << "violation " << to_string(v.property);
        if (v.step != Violation::npos) {
            std::cout << " step=" << v.step + 1;
        }
        if (v.ocs != Violation::npos) {
            std::cout << " ocs=" << v.ocs;
        }
        std::cout << ": " << v.detail << "\n";
    }
    std::cout << (rep.valid() ? "valid" : "invalid") << " cct_us=" << shortest(seconds_to_us(rep.cct))
              << " violations=" << rep.violations.size() << " utilization=" << rep.utilization << "\n";
    return rep.valid() ? kExitOk : kExitError;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Schedules collective communication over reconfigurable optical circuit switches"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto *s = app.add_subcommand("solve", "Solve one scenario and optionally write its schedule bundle");
    s->add_option("scenario", solve.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    s->add_option("--mode", solve.mode, "oneshot|strawman|ideal|swot-exact|swot-heuristic|oracle");
    s->add_option("--out", solve.out, "Schedule bundle path ('-' for stdout)");
    s->add_option("--time-budget", solve.time_budget, "Seconds for swot-exact (overrides the file)");

    std::string grid, csv_out = "-";
    std::size_t jobs = 1;
    double sweep_budget = 0.0;
    auto *w = app.add_subcommand("sweep", "Run every point of a sweep grid and write CSV");
    w->add_option("grid", grid, "Sweep grid file")->required()->check(CLI::ExistingFile);
    w->add_option("--out", csv_out, "CSV path ('-' for stdout)");
    w->add_option("--jobs", jobs, "Parallel grid points")->check(CLI::PositiveNumber);
    w->add_option("--time-budget", sweep_budget, "Seconds per swot-exact point (overrides the grid)");

    std::string lp_scenario, lp_out = "-";
    auto *e = app.add_subcommand("export-lp", "Write the scenario's model in LP format");
    e->add_option("scenario", lp_scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    e->add_option("--out", lp_out, "LP path ('-' for stdout)");

    std::string bundle;
    auto *m = app.add_subcommand("simulate", "Replay and validate a schedule bundle");
    m->add_option("bundle", bundle, "Bundle file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitError;
    }

    try {
        if (s->parsed()) {
            return cmd_solve(solve);
        }
        if (w->parsed()) {
            return cmd_sweep(grid, csv_out, jobs, sweep_budget);
        }
        if (e->parsed()) {
            return cmd_export_lp(lp_scenario, lp_out);
        }
        return cmd_simulate(bundle);
    } catch (const std::exception &err) {
        std::cerr << "error: " << err.what() << "\n";
    }
    return kExitError;
}
