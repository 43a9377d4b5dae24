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
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "ocsched/baselines.hpp"
#include "ocsched/heuristic.hpp"
#include "ocsched/milp_model.hpp"
#include "ocsched/simplex.hpp"
#include "ocsched/solution_schedule.hpp"
#include "ocsched/solver_report.hpp"

namespace ocsched {

struct BranchAndBoundOptions {
    double time_budget_s = 90.0;
    /// 0 = unlimited.
    std::size_t node_limit = 0;
    /// Keep interchangeable OCS columns in lexicographic order.
    bool symmetry_breaking = true;
    /// Strengthen the relaxation with the rows of add_search_rows.
    bool search_rows = true;
};

namespace detail {

/**
 * Rows the search adds to its private copy of the model. None of them cuts
 * off every optimal schedule:
 *  - chain: se_i >= se_{i-1} + sync + m_i / (k B), each step needs at least
 *    its volume over the aggregate bandwidth;
 *  - r <= u: reconfiguring an idle OCS can always be deferred to its next use
 *    without delaying anything;
 *  - busy: given r <= u, everything OCS j does for steps 1..q fits in
 *    [0, se_q], so its transfer and reconfiguration time is at most se_q.
 */
inline void add_search_rows(MilpModel &m) {
    const auto &meta = m.metadata;
    const double aggregate = meta.bandwidth_bps * static_cast<double>(meta.ocs);
    const double per_byte = transfer_seconds(1.0, meta.bandwidth_bps);
    for (std::size_t i = 0; i < meta.steps; ++i) {
        const double span = transfer_seconds(meta.volumes_bytes[i], aggregate);
        const std::size_t se = m.require(step_name("se", i));
        if (i == 0) {
            m.add_constraint("chain_1", "linearization", {{se, 1.0}}, Sense::GreaterEqual, span);
        } else {
            m.add_constraint(step_name("chain", i), "linearization",
                             {{se, 1.0}, {m.require(step_name("se", i - 1)), -1.0}}, Sense::GreaterEqual,
                             meta.sync_latency_s + span);
        }
    }
    for (std::size_t j = 0; j < meta.ocs; ++j) {
        std::vector<Term> busy;
        for (std::size_t i = 0; i < meta.steps; ++i) {
            const std::size_t r = m.require(pair_name("r", i, j));
            const std::size_t u = m.require(pair_name("u", i, j));
            m.add_constraint(pair_name("ru", i, j), "linearization", {{r, 1.0}, {u, -1.0}}, Sense::LessEqual, 0.0);
            busy.push_back({m.require(pair_name("d", i, j)), per_byte});
            busy.push_back({r, meta.t_recfg_s});
            std::vector<Term> row = busy;
            row.push_back({m.require(step_name("se", i)), -1.0});
            m.add_constraint(pair_name("busy", i, j), "linearization", std::move(row), Sense::LessEqual, 0.0);
        }
    }
}

class BranchAndBound {
  public:
    BranchAndBound(const MilpModel &model, const BranchAndBoundOptions &opt) : model_(model), opt_(opt) {
        const auto &meta = model_.metadata;
        I_ = meta.steps;
        J_ = meta.ocs;
        if (opt_.search_rows) {
            add_search_rows(model_);
        }
        // branching priority: preinstalled configs, then step by step r, u, s
        if (!meta.initial_configs) {
            for (std::size_t j = 0; j < J_; ++j) {
                priority_.push_back(model_.require(pair_name("lc", 0, j)));
            }
        }
        for (std::size_t i = 0; i < I_; ++i) {
            for (const char *family : {"r", "u", "s"}) {
                for (std::size_t j = 0; j < J_; ++j) {
                    priority_.push_back(model_.require(pair_name(family, i, j)));
                }
            }
        }
        // lexicographic key per OCS column: lc_1 (if free), then per step u, r
        key_.assign(J_, {});
        for (std::size_t j = 0; j < J_; ++j) {
            if (!meta.initial_configs) {
                key_[j].push_back(model_.require(pair_name("lc", 0, j)));
            }
            for (std::size_t i = 0; i < I_; ++i) {
                key_[j].push_back(model_.require(pair_name("u", i, j)));
                key_[j].push_back(model_.require(pair_name("r", i, j)));
            }
        }
        for (std::size_t j = 0; j + 1 < J_; ++j) {
            const bool alike = !meta.initial_configs || (*meta.initial_configs)[j] == (*meta.initial_configs)[j + 1];
            symmetric_.push_back(alike);
        }
        lp_opt_.round_integer_bounds = true;
    }

    void seed(Schedule schedule) {
        if (!incumbent_ || schedule.cct < incumbent_->cct) {
            incumbent_ = std::move(schedule);
        }
    }

    SolverReport run() {
        Stopwatch clock;
        SolverReport rep;
        std::vector<double> lo, hi;
        model_bounds(model_, lo, hi);
        bool complete = true;
        std::vector<Node> stack;
        if (auto root = evaluate(std::move(lo), std::move(hi))) {
            rep.root_bound = root->bound;
            stack.push_back(std::move(*root));
        }
        while (!stack.empty()) {
            if (clock.seconds() > opt_.time_budget_s || (opt_.node_limit && nodes_ >= opt_.node_limit)) {
                complete = false;
                break;
            }
            Node node = std::move(stack.back());
            stack.pop_back();
            if (pruned(node.bound)) {
                continue;
            }
            const std::optional<std::size_t> branch_var = fractional(node.x);
            if (!branch_var) {
                accept(node);
                continue;
            }
            const std::size_t v = *branch_var;
            const double value = node.x[v];
            std::vector<double> dlo = node.lo, dhi = node.hi;
            dhi[v] = std::floor(value);
            std::vector<double> ulo = std::move(node.lo), uhi = std::move(node.hi);
            ulo[v] = std::ceil(value);
            std::optional<Node> down = evaluate(std::move(dlo), std::move(dhi));
            std::optional<Node> up = evaluate(std::move(ulo), std::move(uhi));
            if (down && pruned(down->bound)) {
                down.reset();
            }
            if (up && pruned(up->bound)) {
                up.reset();
            }
            // deeper-first; the better bound is explored next, ties go down first
            if (down && up) {
                if (up->bound <= down->bound - 1e-12 * std::max(1.0, down->bound)) {
                    stack.push_back(std::move(*down));
                    stack.push_back(std::move(*up));
                } else {
                    stack.push_back(std::move(*up));
                    stack.push_back(std::move(*down));
                }
            } else if (down) {
                stack.push_back(std::move(*down));
            } else if (up) {
                stack.push_back(std::move(*up));
            }
        }
        if (!incumbent_) {
            throw ModelError("branch and bound found no feasible schedule");
        }
        rep.schedule = std::move(*incumbent_);
        rep.cct = rep.schedule.cct;
        rep.nodes = nodes_;
        rep.bound_violations = bound_violations_;
        rep.optimality = complete ? Optimality::Proven : Optimality::Heuristic;
        rep.wall_s = clock.seconds();
        return rep;
    }

  private:
    struct Node {
        std::vector<double> lo, hi, x;
        double bound = 0.0;
    };

    bool pruned(double bound) const { return incumbent_ && bound >= incumbent_->cct * (1.0 - 1e-7); }

    bool violates_symmetry(const std::vector<double> &lo, const std::vector<double> &hi) const {
        if (!opt_.symmetry_breaking) {
            return false;
        }
        for (std::size_t j = 0; j + 1 < J_; ++j) {
            if (!symmetric_[j]) {
                continue;
            }
            for (std::size_t e = 0; e < key_[j].size(); ++e) {
                const std::size_t a = key_[j][e];
                const std::size_t b = key_[j + 1][e];
                if (lo[a] != hi[a] || lo[b] != hi[b]) {
                    break;
                }
                if (lo[a] > lo[b]) {
                    break;
                }
                if (lo[a] < lo[b]) {
                    return true;
                }
            }
        }
        return false;
    }

    std::optional<Node> evaluate(std::vector<double> lo, std::vector<double> hi) {
        if (violates_symmetry(lo, hi)) {
            return std::nullopt;
        }
        ++nodes_;
        LpSolution sol = simplex_solve(model_, lo, hi, lp_opt_);
        if (!sol.optimal()) {
            return std::nullopt;
        }
        Node n;
        n.lo = std::move(lo);
        n.hi = std::move(hi);
        n.x = std::move(sol.values);
        n.bound = sol.objective;
        return n;
    }

    std::optional<std::size_t> fractional(const std::vector<double> &x) const {
        for (std::size_t v : priority_) {
            if (model_.variables()[v].name[0] == 's') {
                continue; // match flags follow from u, r and lc
            }
            if (std::fabs(x[v] - std::round(x[v])) > 1e-6) {
                return v;
            }
        }
        return std::nullopt;
    }

    void accept(const Node &node) {
        std::vector<double> x = node.x;
        for (std::size_t v : priority_) {
            x[v] = std::round(x[v]);
        }
        Schedule candidate = schedule_from_solution(model_, x);
        if (candidate.cct > node.bound + kTimeTolerance) {
            ++bound_violations_;
        }
        seed(std::move(candidate));
    }

    MilpModel model_;
    BranchAndBoundOptions opt_;
    SimplexOptions lp_opt_;
    std::size_t I_ = 0;
    std::size_t J_ = 0;
    std::vector<std::size_t> priority_;
    std::vector<std::vector<std::size_t>> key_;
    std::vector<bool> symmetric_;
    std::optional<Schedule> incumbent_;
    std::size_t nodes_ = 0;
    std::size_t bound_violations_ = 0;
};

} // namespace detail

/**
 * @brief Depth-first branch and bound over the binary decisions of `model`.
 *
 * The incumbent starts from the better of the heuristic and (when it exists)
 * the one-shot schedule. Integral relaxations are converted back into
 * schedules and retimed. If the budget runs out the best schedule found so
 * far is returned with Optimality::Heuristic.
 */
inline SolverReport branch_and_bound(const MilpModel &model, const BranchAndBoundOptions &opt = {}) {
    const auto &meta = model.metadata;
    if (meta.steps == 0 || meta.cfg.size() != meta.steps) {
        throw ModelError("model carries no scheduling metadata");
    }
    Stopwatch clock;
    const Scenario scenario = meta.scenario();
    const auto demands = meta.demands();
    detail::BranchAndBound search(model, opt);
    search.seed(heuristic_schedule(scenario, demands).schedule);
    if (auto one_shot = one_shot_schedule(scenario, demands); one_shot.feasible()) {
        search.seed(std::move(*one_shot.schedule));
    }
    SolverReport rep = search.run();
    rep.wall_s = clock.seconds();
    return rep;
}

inline SolverReport branch_and_bound(const MilpModel &model, double time_budget_s) {
    BranchAndBoundOptions opt;
    opt.time_budget_s = time_budget_s;
    return branch_and_bound(model, opt);
}

} // namespace ocsched
