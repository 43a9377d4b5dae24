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
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ocsched/model_types.hpp"

namespace ocsched {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class VarKind { Continuous, Binary, Integer };
enum class Sense { LessEqual, Equal, GreaterEqual };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lower = 0.0;
    double upper = kInfinity;

    bool is_integral() const noexcept { return kind != VarKind::Continuous; }
};

struct Term {
    std::size_t var;
    double coeff;
};

/// sum(coeff * var) <sense> rhs, tagged with the equation family it encodes.
struct Constraint {
    std::string name;
    std::string tag;
    std::vector<Term> terms;
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

/// The scheduling instance a model was built from; also embedded in LP exports.
struct ModelMetadata {
    std::size_t steps = 0;
    std::size_t ocs = 0;
    std::size_t config_count = 0;
    std::vector<ConfigId> cfg;
    std::vector<double> volumes_bytes;
    double bandwidth_bps = 0.0;
    double t_recfg_s = 0.0;
    double sync_latency_s = 0.0;
    std::optional<std::vector<ConfigId>> initial_configs;

    Scenario scenario(std::size_t nodes = 2) const {
        Scenario s;
        s.nodes = nodes;
        s.ocs_count = ocs;
        s.bandwidth_bps = bandwidth_bps;
        s.t_recfg_s = t_recfg_s;
        s.sync_latency_s = sync_latency_s;
        s.initial_configs = initial_configs;
        return s;
    }

    std::vector<StepDemand> demands() const {
        std::vector<StepDemand> out;
        for (std::size_t i = 0; i < steps; ++i) {
            out.push_back({cfg[i], volumes_bytes[i]});
        }
        return out;
    }
};

class ModelError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/**
 * @brief Solver-neutral MILP: bounded variables, linear rows, minimise a linear objective.
 */
class MilpModel {
  public:
    std::size_t add_variable(std::string name, VarKind kind, double lower, double upper) {
        if (kind == VarKind::Binary) {
            lower = std::max(lower, 0.0);
            upper = std::min(upper, 1.0);
        }
        if (index_.count(name) != 0) {
            throw ModelError("duplicate variable " + name);
        }
        index_.emplace(name, variables_.size());
        variables_.push_back({std::move(name), kind, lower, upper});
        return variables_.size() - 1;
    }

    void add_constraint(std::string name, std::string tag, std::vector<Term> terms, Sense sense, double rhs) {
        for (const auto &t : terms) {
            if (t.var >= variables_.size()) {
                throw ModelError("constraint " + name + " references undeclared variable");
            }
        }
        constraints_.push_back({std::move(name), std::move(tag), std::move(terms), sense, rhs});
    }

    void set_objective(std::vector<Term> terms) { objective_ = std::move(terms); }

    std::optional<std::size_t> index_of(const std::string &name) const {
        auto it = index_.find(name);
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    std::size_t require(const std::string &name) const {
        auto idx = index_of(name);
        if (!idx) {
            throw ModelError("model has no variable " + name);
        }
        return *idx;
    }

    const std::vector<Variable> &variables() const noexcept { return variables_; }
    std::vector<Variable> &variables() noexcept { return variables_; }
    const std::vector<Constraint> &constraints() const noexcept { return constraints_; }
    const std::vector<Term> &objective() const noexcept { return objective_; }

    std::size_t count_tag(const std::string &tag) const {
        std::size_t n = 0;
        for (const auto &c : constraints_) {
            n += c.tag == tag ? 1 : 0;
        }
        return n;
    }

    double objective_value(const std::vector<double> &x) const {
        double v = 0.0;
        for (const auto &t : objective_) {
            v += t.coeff * x[t.var];
        }
        return v;
    }

    /// Largest row violation of `x` relative to max(1, |rhs|); bounds included.
    double max_violation(const std::vector<double> &x) const {
        double worst = 0.0;
        for (const auto &c : constraints_) {
            double lhs = 0.0;
            for (const auto &t : c.terms) {
                lhs += t.coeff * x[t.var];
            }
            const double scale = std::max(1.0, std::fabs(c.rhs));
            double v = 0.0;
            if (c.sense != Sense::GreaterEqual) {
                v = std::max(v, lhs - c.rhs);
            }
            if (c.sense != Sense::LessEqual) {
                v = std::max(v, c.rhs - lhs);
            }
            worst = std::max(worst, v / scale);
        }
        for (std::size_t j = 0; j < variables_.size(); ++j) {
            const auto &var = variables_[j];
            const double scale = std::max(1.0, std::fabs(x[j]));
            worst = std::max(worst, (var.lower - x[j]) / scale);
            worst = std::max(worst, (x[j] - var.upper) / scale);
        }
        return worst;
    }

    double time_big_m = 0.0;
    double config_big_m = 0.0;
    ModelMetadata metadata;

  private:
    std::vector<Variable> variables_;
    std::vector<Constraint> constraints_;
    std::vector<Term> objective_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct ScheduleBounds {
    double horizon = 0.0;
    double lower_bound = 0.0;
};

/// Horizon: every step behind a full reconfiguration and a barrier, which is
/// what reconfiguring all OCSes at every step costs. That schedule is always
/// feasible, so an optimum never needs a time beyond it.
/// Lower bound: every step at full aggregate bandwidth, steps back to back.
inline ScheduleBounds schedule_bounds(const std::vector<StepDemand> &demands, const Scenario &scenario) {
    ScheduleBounds b;
    const double steps = static_cast<double>(demands.size());
    for (const auto &d : demands) {
        const double at_full_rate =
            transfer_seconds(d.volume_bytes, scenario.bandwidth_bps * static_cast<double>(scenario.ocs_count));
        b.horizon += at_full_rate + scenario.t_recfg_s;
        b.lower_bound += at_full_rate;
    }
    b.horizon += steps * scenario.sync_latency_s;
    if (!demands.empty()) {
        b.lower_bound += (steps - 1.0) * scenario.sync_latency_s;
    }
    return b;
}

inline std::string pair_name(const char *family, std::size_t i, std::size_t j) {
    return std::string(family) + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

inline std::string step_name(const char *family, std::size_t i) {
    return std::string(family) + "_" + std::to_string(i + 1);
}

/// Variable indices of one (step, OCS) pair.
struct PairVars {
    std::size_t d, r, u, s, ts, te, rs, re, pe, lc;
};

inline PairVars pair_vars(const MilpModel &m, std::size_t i, std::size_t j) {
    return {m.require(pair_name("d", i, j)),  m.require(pair_name("r", i, j)),  m.require(pair_name("u", i, j)),
            m.require(pair_name("s", i, j)),  m.require(pair_name("ts", i, j)), m.require(pair_name("te", i, j)),
            m.require(pair_name("rs", i, j)), m.require(pair_name("re", i, j)), m.require(pair_name("pe", i, j)),
            m.require(pair_name("lc", i, j))};
}

/**
 * @brief Builds the overlap-scheduling MILP for `steps` on `scenario`.
 *
 * Bilinear terms are linearised with big-M: the horizon bound for times and
 * (configs + 1) for configuration ids. last_cfg on step 1 is the OCS's
 * preinstalled configuration (free in [0, C] unless the scenario pins it,
 * 0 = blank); afterwards it becomes cfg_i when the OCS reconfigures at step i
 * and carries over otherwise.
 */
inline MilpModel build_model(const Scenario &scenario, const std::vector<StepPlan> &steps) {
    if (steps.empty()) {
        throw ModelError("EmptySteps: cannot build a model without steps");
    }
    scenario.validate();

    const auto demands = demands_of(steps);
    const std::size_t I = steps.size();
    const std::size_t J = scenario.ocs_count;
    const ConfigId C = max_config_id(demands);
    for (const auto &d : demands) {
        if (d.cfg == kBlankConfig) {
            throw ModelError("every step needs a catalog config id");
        }
        if (!(d.volume_bytes > 0.0)) {
            throw ModelError("every step needs a positive volume");
        }
    }
    if (scenario.initial_configs) {
        for (auto c : *scenario.initial_configs) {
            if (c > C) {
                throw ModelError("initial config " + std::to_string(c) + " outside catalog");
            }
        }
    }

    MilpModel m;
    const ScheduleBounds bounds = schedule_bounds(demands, scenario);
    const double H = bounds.horizon;
    const double Mc = static_cast<double>(C) + 1.0;
    const double per_byte = transfer_seconds(1.0, scenario.bandwidth_bps);
    m.time_big_m = H;
    m.config_big_m = Mc;

    m.metadata.steps = I;
    m.metadata.ocs = J;
    m.metadata.config_count = C;
    m.metadata.bandwidth_bps = scenario.bandwidth_bps;
    m.metadata.t_recfg_s = scenario.t_recfg_s;
    m.metadata.sync_latency_s = scenario.sync_latency_s;
    m.metadata.initial_configs = scenario.initial_configs;
    for (const auto &d : demands) {
        m.metadata.cfg.push_back(d.cfg);
        m.metadata.volumes_bytes.push_back(d.volume_bytes);
    }

    std::vector<std::vector<PairVars>> v(I, std::vector<PairVars>(J));
    for (std::size_t i = 0; i < I; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            PairVars &p = v[i][j];
            p.d = m.add_variable(pair_name("d", i, j), VarKind::Continuous, 0.0, demands[i].volume_bytes);
            p.r = m.add_variable(pair_name("r", i, j), VarKind::Binary, 0.0, 1.0);
            p.u = m.add_variable(pair_name("u", i, j), VarKind::Binary, 0.0, 1.0);
            p.s = m.add_variable(pair_name("s", i, j), VarKind::Binary, 0.0, 1.0);
            p.ts = m.add_variable(pair_name("ts", i, j), VarKind::Continuous, 0.0, kInfinity);
            p.te = m.add_variable(pair_name("te", i, j), VarKind::Continuous, 0.0, kInfinity);
            p.rs = m.add_variable(pair_name("rs", i, j), VarKind::Continuous, 0.0, kInfinity);
            p.re = m.add_variable(pair_name("re", i, j), VarKind::Continuous, 0.0, kInfinity);
            p.pe = m.add_variable(pair_name("pe", i, j), VarKind::Continuous, 0.0, kInfinity);
            double lc_lo = 0.0;
            double lc_hi = static_cast<double>(C);
            if (i == 0 && scenario.initial_configs) {
                lc_lo = lc_hi = static_cast<double>((*scenario.initial_configs)[j]);
            }
            p.lc = m.add_variable(pair_name("lc", i, j), VarKind::Integer, lc_lo, lc_hi);
        }
    }
    std::vector<std::size_t> se(I);
    for (std::size_t i = 0; i < I; ++i) {
        se[i] = m.add_variable(step_name("se", i), VarKind::Continuous, 0.0, kInfinity);
    }
    const std::size_t cct = m.add_variable("cct", VarKind::Continuous, 0.0, kInfinity);

    using S = Sense;
    // eq1: the step's volume is spread over the OCSes in use
    for (std::size_t i = 0; i < I; ++i) {
        std::vector<Term> terms;
        for (std::size_t j = 0; j < J; ++j) {
            terms.push_back({v[i][j].d, 1.0});
        }
        m.add_constraint(step_name("eq1", i), "eq1", std::move(terms), S::Equal, demands[i].volume_bytes);
    }
    for (std::size_t i = 0; i < I; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            m.add_constraint(pair_name("eq1u", i, j), "eq1", {{v[i][j].d, 1.0}, {v[i][j].u, -demands[i].volume_bytes}},
                             S::LessEqual, 0.0);
        }
    }
    // eq2: transmission duration
    for (std::size_t i = 0; i < I; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            m.add_constraint(pair_name("eq2", i, j), "eq2",
                             {{v[i][j].te, 1.0}, {v[i][j].ts, -1.0}, {v[i][j].d, -per_byte}}, S::Equal, 0.0);
        }
    }
    // eq3: reconfiguration duration
    for (std::size_t i = 0; i < I; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            m.add_constraint(pair_name("eq3", i, j), "eq3",
                             {{v[i][j].re, 1.0}, {v[i][j].rs, -1.0}, {v[i][j].r, -scenario.t_recfg_s}}, S::Equal, 0.0);
        }
    }
    // eq4: transmit after reconfiguring
    for (std::size_t i = 0; i < I; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            m.add_constraint(pair_name("eq4", i, j), "eq4", {{v[i][j].ts, 1.0}, {v[i][j].re, -1.0}}, S::GreaterEqual,
                             0.0);
        }
    }
    // eq5: a used OCS either already matches or reconfigures
    for (std::size_t i = 0; i < I; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            m.add_constraint(pair_name("eq5", i, j), "eq5", {{v[i][j].r, 1.0}, {v[i][j].u, -1.0}, {v[i][j].s, 1.0}},
                             S::GreaterEqual, 0.0);
        }
    }
    // eq6: |cfg_i - last_cfg| <= Mc (1 - s), split in two
    for (std::size_t i = 0; i < I; ++i) {
        const double cfg = static_cast<double>(demands[i].cfg);
        for (std::size_t j = 0; j < J; ++j) {
            m.add_constraint(pair_name("eq6a", i, j), "eq6", {{v[i][j].lc, -1.0}, {v[i][j].s, Mc}}, S::LessEqual,
                             Mc - cfg);
            m.add_constraint(pair_name("eq6b", i, j), "eq6", {{v[i][j].lc, 1.0}, {v[i][j].s, Mc}}, S::LessEqual,
                             Mc + cfg);
        }
    }
    // eq7: nothing precedes step 1
    for (std::size_t j = 0; j < J; ++j) {
        m.add_constraint(pair_name("eq7", 0, j), "eq7", {{v[0][j].pe, 1.0}}, S::Equal, 0.0);
    }
    // eq8: previous-activity end: max of carried value, last transmission, last reconfiguration
    for (std::size_t i = 1; i < I; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            const PairVars &cur = v[i][j];
            const PairVars &prev = v[i - 1][j];
            m.add_constraint(pair_name("eq8a", i, j), "eq8", {{cur.pe, 1.0}, {prev.pe, -1.0}}, S::GreaterEqual, 0.0);
            m.add_constraint(pair_name("eq8b", i, j), "eq8", {{cur.pe, 1.0}, {prev.te, -1.0}, {prev.u, -H}},
                             S::GreaterEqual, -H);
            m.add_constraint(pair_name("eq8c", i, j), "eq8", {{cur.pe, 1.0}, {prev.re, -1.0}, {prev.r, -H}},
                             S::GreaterEqual, -H);
        }
    }
    // eq9: reconfiguration waits for the OCS to go idle
    for (std::size_t i = 0; i < I; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            m.add_constraint(pair_name("eq9", i, j), "eq9", {{v[i][j].rs, 1.0}, {v[i][j].pe, -1.0}}, S::GreaterEqual,
                             0.0);
        }
    }
    // eq10: step end covers every used OCS
    for (std::size_t i = 0; i < I; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            m.add_constraint(pair_name("eq10", i, j), "eq10", {{se[i], 1.0}, {v[i][j].te, -1.0}, {v[i][j].u, -H}},
                             S::GreaterEqual, -H);
        }
    }
    // eq11: a step starts after the previous one ends (+ coordination latency)
    for (std::size_t i = 1; i < I; ++i) {
        for (std::size_t j = 0; j < J; ++j) {
            m.add_constraint(pair_name("eq11", i, j), "eq11", {{v[i][j].ts, 1.0}, {se[i - 1], -1.0}}, S::GreaterEqual,
                             scenario.sync_latency_s);
        }
    }
    // last_cfg recursion: lc_{i+1} = cfg_i if r_i else lc_i
    for (std::size_t i = 1; i < I; ++i) {
        const double cfg = static_cast<double>(demands[i - 1].cfg);
        for (std::size_t j = 0; j < J; ++j) {
            const PairVars &cur = v[i][j];
            const PairVars &prev = v[i - 1][j];
            m.add_constraint(pair_name("lcka", i, j), "lastcfg", {{cur.lc, 1.0}, {prev.lc, -1.0}, {prev.r, -Mc}},
                             S::LessEqual, 0.0);
            m.add_constraint(pair_name("lckb", i, j), "lastcfg", {{cur.lc, -1.0}, {prev.lc, 1.0}, {prev.r, -Mc}},
                             S::LessEqual, 0.0);
            m.add_constraint(pair_name("lcra", i, j), "lastcfg", {{cur.lc, 1.0}, {prev.r, Mc}}, S::LessEqual, Mc + cfg);
            m.add_constraint(pair_name("lcrb", i, j), "lastcfg", {{cur.lc, -1.0}, {prev.r, Mc}}, S::LessEqual,
                             Mc - cfg);
        }
    }
    // objective epigraph: cct >= every step end
    for (std::size_t i = 0; i < I; ++i) {
        m.add_constraint(step_name("obj", i), "obj", {{cct, 1.0}, {se[i], -1.0}}, S::GreaterEqual, 0.0);
    }
    m.set_objective({{cct, 1.0}});
    return m;
}

} // namespace ocsched
