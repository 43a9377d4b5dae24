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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ocsched/milp_model.hpp"

namespace ocsched {

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char *to_string(LpStatus s) {
    switch (s) {
    case LpStatus::Optimal:
        return "optimal";
    case LpStatus::Infeasible:
        return "infeasible";
    case LpStatus::Unbounded:
        return "unbounded";
    }
    return "?";
}

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> values;
    std::size_t pivots = 0;

    bool optimal() const noexcept { return status == LpStatus::Optimal; }
};

/// The pivot budget ran out; the basis is cycling or numerically unstable.
class NumericalBreakdown : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SimplexOptions {
    double feasibility_tol = 1e-9;
    double optimality_tol = 1e-9;
    /// Round bounds of integer variables inward during presolve. Valid for
    /// branch-and-bound relaxations, not for a plain LP relaxation.
    bool round_integer_bounds = false;
    /// 0 picks a budget from the problem size.
    std::size_t max_pivots = 0;
};

namespace detail {

struct SparseRow {
    std::vector<std::pair<std::size_t, double>> terms;
    Sense sense = Sense::LessEqual;
    double rhs = 0.0;
};

struct ReducedLp {
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> cost;
    std::vector<SparseRow> rows;
    std::vector<std::size_t> original; // reduced column -> model column
};

inline bool is_fixed(double lo, double hi) { return lo == hi; }

/**
 * Removes fixed columns, turns singleton rows into bounds and drops rows that
 * are implied by the bounds. Returns false when infeasibility is detected.
 */
inline bool presolve(const MilpModel &model, std::vector<double> &lo, std::vector<double> &hi,
                     std::vector<char> &row_active, const SimplexOptions &opt) {
    const auto &vars = model.variables();
    const auto &rows = model.constraints();
    row_active.assign(rows.size(), 1);

    auto tighten = [&](std::size_t j, double new_lo, double new_hi) -> bool {
        if (vars[j].is_integral() && opt.round_integer_bounds) {
            new_lo = std::ceil(new_lo - 1e-6);
            new_hi = std::floor(new_hi + 1e-6);
        }
        lo[j] = std::max(lo[j], new_lo);
        hi[j] = std::min(hi[j], new_hi);
        if (!std::isfinite(lo[j]) || !std::isfinite(hi[j])) {
            return lo[j] <= hi[j];
        }
        const double slack = opt.feasibility_tol * std::max(1.0, std::fabs(lo[j]));
        if (lo[j] > hi[j] + slack) {
            return false;
        }
        if (lo[j] > hi[j] || hi[j] - lo[j] <= 1e-12 * std::max(1.0, std::fabs(lo[j]))) {
            hi[j] = lo[j];
        }
        return true;
    };

    for (std::size_t j = 0; j < vars.size(); ++j) {
        if (!tighten(j, lo[j], hi[j])) {
            return false;
        }
    }

    bool changed = true;
    for (int pass = 0; changed && pass < 64; ++pass) {
        changed = false;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!row_active[r]) {
                continue;
            }
            const Constraint &c = rows[r];
            double rhs = c.rhs;
            std::size_t free_count = 0;
            std::size_t last_var = 0;
            double last_coeff = 0.0;
            double min_act = 0.0;
            double max_act = 0.0;
            bool min_inf = false;
            bool max_inf = false;
            for (const auto &t : c.terms) {
                if (t.coeff == 0.0) {
                    continue;
                }
                if (is_fixed(lo[t.var], hi[t.var])) {
                    rhs -= t.coeff * lo[t.var];
                    continue;
                }
                ++free_count;
                last_var = t.var;
                last_coeff = t.coeff;
                const double a_lo = t.coeff > 0 ? lo[t.var] : hi[t.var];
                const double a_hi = t.coeff > 0 ? hi[t.var] : lo[t.var];
                if (std::isinf(a_lo)) {
                    min_inf = true;
                } else {
                    min_act += t.coeff * a_lo;
                }
                if (std::isinf(a_hi)) {
                    max_inf = true;
                } else {
                    max_act += t.coeff * a_hi;
                }
            }
            const double tol = opt.feasibility_tol * std::max(1.0, std::fabs(c.rhs));
            const bool has_upper = c.sense != Sense::GreaterEqual; // lhs <= rhs applies
            const bool has_lower = c.sense != Sense::LessEqual;    // lhs >= rhs applies
            if (has_upper && !min_inf && min_act > rhs + tol) {
                return false;
            }
            if (has_lower && !max_inf && max_act < rhs - tol) {
                return false;
            }
            if (free_count == 0) {
                row_active[r] = 0;
                changed = true;
                continue;
            }
            const bool upper_redundant = !has_upper || (!max_inf && max_act <= rhs + tol);
            const bool lower_redundant = !has_lower || (!min_inf && min_act >= rhs - tol);
            if (upper_redundant && lower_redundant) {
                row_active[r] = 0;
                changed = true;
                continue;
            }
            if (free_count == 1) {
                const double bound = rhs / last_coeff;
                double new_lo = -kInfinity;
                double new_hi = kInfinity;
                if (has_upper) {
                    (last_coeff > 0 ? new_hi : new_lo) = bound;
                }
                if (has_lower) {
                    (last_coeff > 0 ? new_lo : new_hi) = bound;
                }
                if (c.sense == Sense::Equal) {
                    new_lo = new_hi = bound;
                }
                if (!tighten(last_var, new_lo, new_hi)) {
                    return false;
                }
                row_active[r] = 0;
                changed = true;
            }
        }
    }
    return true;
}

inline double round_to_power_of_two(double x) { return std::exp2(std::round(std::log2(x))); }

/**
 * Dense bounded-variable primal simplex. Every row gets a logical column;
 * rows whose logical cannot start feasible get an artificial for phase 1.
 * Entering column: largest reduced cost (ties -> lowest index), switching to
 * Bland's rule after a run of degenerate pivots.
 */
class DenseSimplex {
  public:
    DenseSimplex(const ReducedLp &lp, const SimplexOptions &opt) : opt_(opt) { setup(lp); }

    LpStatus solve() {
        if (has_artificials_) {
            std::vector<double> phase1(cols_, 0.0);
            for (std::size_t j = art_begin_; j < cols_; ++j) {
                phase1[j] = 1.0;
            }
            set_costs(phase1);
            const LpStatus s = iterate();
            (void)s;
            recompute_basics();
            double infeasibility = 0.0;
            for (std::size_t j = art_begin_; j < cols_; ++j) {
                infeasibility += std::fabs(x_[j]);
            }
            if (infeasibility > opt_.feasibility_tol * std::max(1.0, rhs_scale_)) {
                return LpStatus::Infeasible;
            }
            for (std::size_t j = art_begin_; j < cols_; ++j) {
                lo_[j] = hi_[j] = 0.0;
                x_[j] = 0.0;
            }
            drive_out_artificials();
        }
        set_costs(cost_);
        const LpStatus s = iterate();
        recompute_basics();
        return s;
    }

    /// Structural values in the scaled space.
    std::vector<double> structural_values() const { return {x_.begin(), x_.begin() + static_cast<long>(n_)}; }
    std::size_t pivots() const noexcept { return pivots_; }

  private:
    enum class Status : unsigned char { Basic, AtLower, AtUpper, Free };

    double &at(std::size_t r, std::size_t c) { return tab_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return tab_[r * cols_ + c]; }

    void setup(const ReducedLp &lp) {
        n_ = lp.lower.size();
        m_ = lp.rows.size();
        std::vector<double> logical_lo(m_), logical_hi(m_);
        for (std::size_t r = 0; r < m_; ++r) {
            switch (lp.rows[r].sense) {
            case Sense::LessEqual:
                logical_lo[r] = 0.0;
                logical_hi[r] = kInfinity;
                break;
            case Sense::GreaterEqual:
                logical_lo[r] = -kInfinity;
                logical_hi[r] = 0.0;
                break;
            case Sense::Equal:
                logical_lo[r] = logical_hi[r] = 0.0;
                break;
            }
        }

        // starting point of the structurals and the residual each row leaves for its logical
        std::vector<double> x0(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            x0[j] = std::isfinite(lp.lower[j]) ? lp.lower[j] : (std::isfinite(lp.upper[j]) ? lp.upper[j] : 0.0);
        }
        std::vector<double> residual(m_);
        std::vector<char> needs_art(m_, 0);
        std::size_t arts = 0;
        for (std::size_t r = 0; r < m_; ++r) {
            double act = 0.0;
            for (const auto &[j, a] : lp.rows[r].terms) {
                act += a * x0[j];
            }
            residual[r] = lp.rows[r].rhs - act;
            rhs_scale_ = std::max(rhs_scale_, std::fabs(lp.rows[r].rhs));
            const double tol = opt_.feasibility_tol;
            if (residual[r] < logical_lo[r] - tol || residual[r] > logical_hi[r] + tol) {
                needs_art[r] = 1;
                ++arts;
            }
        }
        has_artificials_ = arts > 0;
        art_begin_ = n_ + m_;
        cols_ = n_ + m_ + arts;
        tab_.assign(m_ * cols_, 0.0);
        beta_.assign(m_, 0.0);
        lo_.assign(cols_, 0.0);
        hi_.assign(cols_, 0.0);
        x_.assign(cols_, 0.0);
        status_.assign(cols_, Status::AtLower);
        basis_.assign(m_, 0);
        cost_.assign(cols_, 0.0);

        for (std::size_t j = 0; j < n_; ++j) {
            lo_[j] = lp.lower[j];
            hi_[j] = lp.upper[j];
            cost_[j] = lp.cost[j];
            x_[j] = x0[j];
            status_[j] = std::isfinite(lo_[j]) ? Status::AtLower : (std::isfinite(hi_[j]) ? Status::AtUpper : Status::Free);
        }
        std::size_t next_art = art_begin_;
        for (std::size_t r = 0; r < m_; ++r) {
            const std::size_t logical = n_ + r;
            lo_[logical] = logical_lo[r];
            hi_[logical] = logical_hi[r];
            double sign = 1.0;
            if (needs_art[r]) {
                const double clamped = std::clamp(residual[r], logical_lo[r], logical_hi[r]);
                sign = residual[r] - clamped >= 0 ? 1.0 : -1.0;
                x_[logical] = clamped;
                status_[logical] = clamped == logical_lo[r] ? Status::AtLower : Status::AtUpper;
                const std::size_t art = next_art++;
                lo_[art] = 0.0;
                hi_[art] = kInfinity;
                at(r, art) = 1.0;
                basis_[r] = art;
                status_[art] = Status::Basic;
                x_[art] = std::fabs(residual[r] - clamped);
            } else {
                basis_[r] = logical;
                status_[logical] = Status::Basic;
                x_[logical] = residual[r];
            }
            for (const auto &[j, a] : lp.rows[r].terms) {
                at(r, j) += sign * a;
            }
            at(r, logical) = sign;
            beta_[r] = sign * lp.rows[r].rhs;
        }
        const std::size_t budget_base = 50 * (m_ + cols_) + 1000;
        budget_ = opt_.max_pivots ? opt_.max_pivots : budget_base;
    }

    void set_costs(const std::vector<double> &c) {
        active_cost_ = c;
        reduced_ = c;
        for (std::size_t r = 0; r < m_; ++r) {
            const double cb = c[basis_[r]];
            if (cb == 0.0) {
                continue;
            }
            const double *row = &tab_[r * cols_];
            for (std::size_t j = 0; j < cols_; ++j) {
                reduced_[j] -= cb * row[j];
            }
        }
    }

    void recompute_basics() {
        for (std::size_t r = 0; r < m_; ++r) {
            double v = beta_[r];
            const double *row = &tab_[r * cols_];
            for (std::size_t j = 0; j < cols_; ++j) {
                if (status_[j] != Status::Basic && x_[j] != 0.0) {
                    v -= row[j] * x_[j];
                }
            }
            x_[basis_[r]] = v;
        }
    }

    bool eligible(std::size_t j, double &direction) const {
        if (status_[j] == Status::Basic || lo_[j] == hi_[j]) {
            return false;
        }
        const double d = reduced_[j];
        const double tol = opt_.optimality_tol;
        switch (status_[j]) {
        case Status::AtLower:
            if (d < -tol) {
                direction = 1.0;
                return true;
            }
            return false;
        case Status::AtUpper:
            if (d > tol) {
                direction = -1.0;
                return true;
            }
            return false;
        case Status::Free:
            if (std::fabs(d) > tol) {
                direction = d < 0 ? 1.0 : -1.0;
                return true;
            }
            return false;
        case Status::Basic:
            break;
        }
        return false;
    }

    LpStatus iterate() {
        std::size_t degenerate_run = 0;
        std::size_t since_refresh = 0;
        for (;;) {
            const bool bland = degenerate_run > 40;
            std::size_t entering = cols_;
            double direction = 0.0;
            double best = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) {
                double dir = 0.0;
                if (!eligible(j, dir)) {
                    continue;
                }
                const double score = std::fabs(reduced_[j]);
                if (bland) {
                    entering = j;
                    direction = dir;
                    break;
                }
                if (score > best) {
                    best = score;
                    entering = j;
                    direction = dir;
                }
            }
            if (entering == cols_) {
                return LpStatus::Optimal;
            }

            // Harris ratio test: bounds relaxed by `relax` find the step
            // length, then the largest pivot within it is chosen
            constexpr double kPivotTol = 1e-7;
            const double relax = opt_.feasibility_tol;
            std::size_t leave_row = m_;
            double theta = kInfinity;
            double theta_max = kInfinity;
            for (std::size_t r = 0; r < m_; ++r) {
                const double alpha = at(r, entering);
                if (std::fabs(alpha) <= kPivotTol) {
                    continue;
                }
                const std::size_t b = basis_[r];
                const double rate = -direction * alpha;
                const double bound = rate < 0 ? lo_[b] : hi_[b];
                if (!std::isfinite(bound)) {
                    continue;
                }
                const double room = rate < 0 ? x_[b] - bound + relax : bound - x_[b] + relax;
                theta_max = std::min(theta_max, std::max(room, 0.0) / std::fabs(rate));
            }
            double leave_alpha = 0.0;
            for (std::size_t r = 0; r < m_ && std::isfinite(theta_max); ++r) {
                const double alpha = at(r, entering);
                if (std::fabs(alpha) <= kPivotTol) {
                    continue;
                }
                const std::size_t b = basis_[r];
                const double rate = -direction * alpha;
                const double bound = rate < 0 ? lo_[b] : hi_[b];
                if (!std::isfinite(bound)) {
                    continue;
                }
                const double limit = std::max(rate < 0 ? x_[b] - bound : bound - x_[b], 0.0) / std::fabs(rate);
                if (limit > theta_max) {
                    continue;
                }
                bool better;
                if (leave_row == m_) {
                    better = true;
                } else if (bland) {
                    better = b < basis_[leave_row];
                } else {
                    better = std::fabs(alpha) > std::fabs(leave_alpha) * (1.0 + 1e-9) ||
                             (std::fabs(alpha) >= std::fabs(leave_alpha) * (1.0 - 1e-9) && b < basis_[leave_row]);
                }
                if (better) {
                    theta = limit;
                    leave_row = r;
                    leave_alpha = alpha;
                }
            }
            const double span = hi_[entering] - lo_[entering];
            const bool flip = std::isfinite(span) && span <= theta;
            if (!flip && leave_row == m_) {
                return LpStatus::Unbounded;
            }
            if (++pivots_ > budget_) {
                throw NumericalBreakdown("simplex pivot budget exhausted (" + std::to_string(budget_) + ")");
            }
            const double step = flip ? span : theta;
            degenerate_run = step <= 1e-12 ? degenerate_run + 1 : 0;

            x_[entering] += direction * step;
            for (std::size_t r = 0; r < m_; ++r) {
                const double alpha = at(r, entering);
                if (alpha != 0.0) {
                    x_[basis_[r]] -= direction * alpha * step;
                }
            }
            if (flip) {
                status_[entering] = direction > 0 ? Status::AtUpper : Status::AtLower;
                x_[entering] = direction > 0 ? hi_[entering] : lo_[entering];
                continue;
            }

            const std::size_t leaving = basis_[leave_row];
            const double rate = -direction * at(leave_row, entering);
            if (rate < 0) {
                x_[leaving] = lo_[leaving];
                status_[leaving] = Status::AtLower;
            } else {
                x_[leaving] = hi_[leaving];
                status_[leaving] = Status::AtUpper;
            }
            pivot(leave_row, entering);
            if (++since_refresh >= 64) {
                recompute_basics();
                since_refresh = 0;
            }
        }
    }

    void pivot(std::size_t r, std::size_t q) {
        double *prow = &tab_[r * cols_];
        const double inv = 1.0 / prow[q];
        for (std::size_t j = 0; j < cols_; ++j) {
            prow[j] *= inv;
        }
        prow[q] = 1.0;
        beta_[r] *= inv;
        nonzero_.clear();
        for (std::size_t j = 0; j < cols_; ++j) {
            if (prow[j] != 0.0) {
                nonzero_.push_back(j);
            }
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) {
                continue;
            }
            double *row = &tab_[i * cols_];
            const double f = row[q];
            if (f == 0.0) {
                continue;
            }
            for (std::size_t j : nonzero_) {
                row[j] -= f * prow[j];
            }
            row[q] = 0.0;
            beta_[i] -= f * beta_[r];
        }
        const double f = reduced_[q];
        if (f != 0.0) {
            for (std::size_t j : nonzero_) {
                reduced_[j] -= f * prow[j];
            }
            reduced_[q] = 0.0;
        }
        basis_[r] = q;
        status_[q] = Status::Basic;
    }

    void drive_out_artificials() {
        for (std::size_t r = 0; r < m_; ++r) {
            if (basis_[r] < art_begin_) {
                continue;
            }
            std::size_t best = cols_;
            double best_abs = 1e-7;
            for (std::size_t j = 0; j < art_begin_; ++j) {
                if (status_[j] == Status::Basic) {
                    continue;
                }
                const double a = std::fabs(at(r, j));
                if (a > best_abs) {
                    best_abs = a;
                    best = j;
                }
            }
            if (best == cols_) {
                continue; // redundant row
            }
            const std::size_t art = basis_[r];
            pivot(r, best);
            status_[art] = Status::AtLower;
            x_[art] = 0.0;
        }
        recompute_basics();
    }

    SimplexOptions opt_;
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::size_t cols_ = 0;
    std::size_t art_begin_ = 0;
    bool has_artificials_ = false;
    double rhs_scale_ = 1.0;
    std::vector<double> tab_;
    std::vector<double> beta_;
    std::vector<double> lo_, hi_, x_;
    std::vector<Status> status_;
    std::vector<std::size_t> basis_;
    std::vector<double> cost_;
    std::vector<double> active_cost_;
    std::vector<double> reduced_;
    std::vector<std::size_t> nonzero_;
    std::size_t pivots_ = 0;
    std::size_t budget_ = 0;
};

/// Geometric row/column scaling with power-of-two factors; returns column factors.
inline std::vector<double> scale_lp(ReducedLp &lp) {
    const std::size_t n = lp.lower.size();
    std::vector<double> col(n, 1.0);
    std::vector<double> row(lp.rows.size(), 1.0);
    for (int pass = 0; pass < 4; ++pass) {
        for (std::size_t r = 0; r < lp.rows.size(); ++r) {
            double lo = kInfinity, hi = 0.0;
            for (const auto &[j, a] : lp.rows[r].terms) {
                const double v = std::fabs(a) * row[r] * col[j];
                if (v > 0) {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
            if (hi > 0) {
                row[r] = round_to_power_of_two(row[r] / std::sqrt(lo * hi));
            }
        }
        std::vector<double> clo(n, kInfinity), chi(n, 0.0);
        for (std::size_t r = 0; r < lp.rows.size(); ++r) {
            for (const auto &[j, a] : lp.rows[r].terms) {
                const double v = std::fabs(a) * row[r] * col[j];
                if (v > 0) {
                    clo[j] = std::min(clo[j], v);
                    chi[j] = std::max(chi[j], v);
                }
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (chi[j] > 0) {
                col[j] = round_to_power_of_two(col[j] / std::sqrt(clo[j] * chi[j]));
            }
        }
    }
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
        for (auto &[j, a] : lp.rows[r].terms) {
            a *= row[r] * col[j];
        }
        lp.rows[r].rhs *= row[r];
    }
    double cmax = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        lp.lower[j] /= col[j];
        lp.upper[j] /= col[j];
        lp.cost[j] *= col[j];
        cmax = std::max(cmax, std::fabs(lp.cost[j]));
    }
    if (cmax > 0) {
        const double s = round_to_power_of_two(1.0 / cmax);
        for (auto &c : lp.cost) {
            c *= s;
        }
    }
    return col;
}

} // namespace detail

/**
 * @brief Solves the LP relaxation of `model` with the given column bounds.
 *
 * Integrality is ignored (unless SimplexOptions::round_integer_bounds asks
 * presolve to round integer bounds). The returned values satisfy every row
 * within feasibility_tol relative to max(1, |rhs|).
 */
inline LpSolution simplex_solve(const MilpModel &model, std::vector<double> lower, std::vector<double> upper,
                                const SimplexOptions &opt = {}) {
    const auto &vars = model.variables();
    const std::size_t n = vars.size();
    if (lower.size() != n || upper.size() != n) {
        throw std::invalid_argument("simplex_solve: bound vectors do not match the model's variables");
    }
    LpSolution out;
    std::vector<char> row_active;
    if (!detail::presolve(model, lower, upper, row_active, opt)) {
        out.status = LpStatus::Infeasible;
        return out;
    }

    detail::ReducedLp lp;
    std::vector<std::size_t> reduced_of(n, n);
    std::vector<double> objective(n, 0.0);
    for (const auto &t : model.objective()) {
        objective[t.var] += t.coeff;
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (!detail::is_fixed(lower[j], upper[j])) {
            reduced_of[j] = lp.original.size();
            lp.original.push_back(j);
            lp.lower.push_back(lower[j]);
            lp.upper.push_back(upper[j]);
            lp.cost.push_back(objective[j]);
        }
    }
    const auto &rows = model.constraints();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!row_active[r]) {
            continue;
        }
        detail::SparseRow row;
        row.sense = rows[r].sense;
        row.rhs = rows[r].rhs;
        for (const auto &t : rows[r].terms) {
            if (reduced_of[t.var] == n) {
                row.rhs -= t.coeff * lower[t.var];
            } else if (t.coeff != 0.0) {
                row.terms.emplace_back(reduced_of[t.var], t.coeff);
            }
        }
        lp.rows.push_back(std::move(row));
    }

    out.values.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (reduced_of[j] == n) {
            out.values[j] = lower[j];
        }
    }
    if (!lp.original.empty()) {
        const std::vector<double> col = detail::scale_lp(lp);
        detail::DenseSimplex simplex(lp, opt);
        out.status = simplex.solve();
        out.pivots = simplex.pivots();
        if (out.status != LpStatus::Optimal) {
            return out;
        }
        const auto xs = simplex.structural_values();
        for (std::size_t k = 0; k < lp.original.size(); ++k) {
            const std::size_t j = lp.original[k];
            out.values[j] = std::clamp(xs[k] * col[k], lower[j], upper[j]);
        }
    }
    out.status = LpStatus::Optimal;
    out.objective = model.objective_value(out.values);
    return out;
}

inline LpSolution simplex_solve(const MilpModel &model, const SimplexOptions &opt = {}) {
    std::vector<double> lower, upper;
    for (const auto &v : model.variables()) {
        lower.push_back(v.lower);
        upper.push_back(v.upper);
    }
    return simplex_solve(model, std::move(lower), std::move(upper), opt);
}

} // namespace ocsched
