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
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ocsched/model_types.hpp"

namespace ocsched {

enum class Property { P1, P2, P3, Volume, Duration };

inline const char *to_string(Property p) {
    switch (p) {
    case Property::P1:
        return "P1";
    case Property::P2:
        return "P2";
    case Property::P3:
        return "P3";
    case Property::Volume:
        return "volume";
    case Property::Duration:
        return "duration";
    }
    return "?";
}

/// `step` and `ocs` are 0-based; `ocs` is npos for step-level findings.
struct Violation {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    Property property;
    std::size_t step = npos;
    std::size_t ocs = npos;
    std::string detail;
};

struct OcsUsage {
    double busy_s = 0.0;
    std::size_t reconfigs = 0;
};

struct SimReport {
    double cct = 0.0;
    std::vector<Violation> violations;
    std::vector<std::string> warnings;
    std::vector<OcsUsage> per_ocs;
    double utilization = 0.0;

    bool valid() const noexcept { return violations.empty(); }
    std::size_t count(Property p) const {
        return static_cast<std::size_t>(
            std::count_if(violations.begin(), violations.end(), [p](const Violation &v) { return v.property == p; }));
    }
};

class DimensionMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct ConfigEvent {
    double time = 0.0;
    ConfigId config = kBlankConfig;
};

/// Per-OCS configuration history: the initial config at t=0, then one entry
/// per reconfiguration at the moment it completes, in chronological order.
inline std::vector<std::vector<ConfigEvent>> config_trace(const Schedule &schedule,
                                                          const std::vector<StepDemand> &demands) {
    if (demands.size() != schedule.steps()) {
        throw DimensionMismatch("schedule has " + std::to_string(schedule.steps()) + " steps, workload has " +
                                std::to_string(demands.size()));
    }
    std::vector<std::vector<ConfigEvent>> trace(schedule.ocs_count());
    for (std::size_t j = 0; j < schedule.ocs_count(); ++j) {
        trace[j].push_back({0.0, schedule.initial_configs[j]});
        std::vector<ConfigEvent> changes;
        for (std::size_t i = 0; i < schedule.steps(); ++i) {
            const Slot &slot = schedule.at(i, j);
            if (slot.reconfig) {
                changes.push_back({slot.t_recfg_e, demands[i].cfg});
            }
        }
        std::stable_sort(changes.begin(), changes.end(),
                         [](const ConfigEvent &a, const ConfigEvent &b) { return a.time < b.time; });
        trace[j].insert(trace[j].end(), changes.begin(), changes.end());
    }
    return trace;
}

/**
 * @brief Replays `schedule` and checks it against the scenario and workload.
 *
 * Every finding is recorded; nothing is repaired. Time comparisons use an
 * absolute tolerance of 1e-9 s; volume sums are compared relative to the
 * step's demand.
 */
inline SimReport simulate(const Schedule &schedule, const Scenario &scenario, const std::vector<StepDemand> &demands) {
    if (demands.size() != schedule.steps() || scenario.ocs_count != schedule.ocs_count() ||
        schedule.step_end.size() != schedule.steps() || schedule.initial_configs.size() != schedule.ocs_count()) {
        throw DimensionMismatch("schedule dimensions do not match " + std::to_string(demands.size()) + " steps x " +
                                std::to_string(scenario.ocs_count) + " OCSes");
    }
    constexpr double tol = kTimeTolerance;
    const std::size_t I = schedule.steps();
    const std::size_t K = schedule.ocs_count();
    const double per_byte = transfer_seconds(1.0, scenario.bandwidth_bps);
    SimReport rep;
    rep.per_ocs.resize(K);
    auto fail = [&](Property p, std::size_t i, std::size_t j, const std::string &what) {
        rep.violations.push_back({p, i, j, what});
    };
    auto fmt = [](double s) {
        std::ostringstream os;
        os.precision(12);
        os << seconds_to_us(s) << " us";
        return os.str();
    };

    double total_bytes = 0.0;
    for (std::size_t i = 0; i < I; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < K; ++j) {
            const Slot &s = schedule.at(i, j);
            if (s.volume_bytes < 0.0) {
                fail(Property::Volume, i, j, "negative volume");
            }
            if (s.volume_bytes > 0.0 && !s.used) {
                fail(Property::Volume, i, j, "volume on an unused OCS");
            }
            if (s.used && s.volume_bytes == 0.0) {
                rep.warnings.push_back("step " + std::to_string(i + 1) + " OCS " + std::to_string(j + 1) +
                                       " is used with zero volume");
            }
            if (s.used) {
                sum += s.volume_bytes;
                const double expect = s.volume_bytes * per_byte;
                if (std::fabs((s.t_end - s.t_start) - expect) > tol) {
                    fail(Property::Duration, i, j, "transmission lasts " + fmt(s.t_end - s.t_start) + ", expected " +
                                                       fmt(expect));
                }
                rep.per_ocs[j].busy_s += s.t_end - s.t_start;
            }
            if (s.reconfig) {
                if (std::fabs((s.t_recfg_e - s.t_recfg_s) - scenario.t_recfg_s) > tol) {
                    fail(Property::Duration, i, j, "reconfiguration lasts " + fmt(s.t_recfg_e - s.t_recfg_s));
                }
                if (s.t_recfg_s < -tol) {
                    fail(Property::P2, i, j, "reconfiguration starts before time zero");
                }
                rep.per_ocs[j].busy_s += s.t_recfg_e - s.t_recfg_s;
                ++rep.per_ocs[j].reconfigs;
            }
        }
        total_bytes += sum;
        const double need = demands[i].volume_bytes;
        if (std::fabs(sum - need) > 1e-9 * std::max(1.0, need)) {
            fail(Property::Volume, i, Violation::npos,
                 "step carries " + std::to_string(sum) + " bytes of " + std::to_string(need));
        }
    }

    // P1: transmissions wait for their own reconfiguration and run under the
    // configuration installed at that moment
    for (std::size_t j = 0; j < K; ++j) {
        for (std::size_t i = 0; i < I; ++i) {
            const Slot &s = schedule.at(i, j);
            if (!s.used) {
                continue;
            }
            if (s.reconfig && s.t_start < s.t_recfg_e - tol) {
                fail(Property::P1, i, j, "transmits at " + fmt(s.t_start) + " before reconfiguration ends at " +
                                             fmt(s.t_recfg_e));
                continue;
            }
            ConfigId installed = schedule.initial_configs[j];
            double installed_at = -1.0;
            std::size_t installed_step = 0;
            for (std::size_t q = 0; q < I; ++q) {
                const Slot &r = schedule.at(q, j);
                if (!r.reconfig || r.t_recfg_e > s.t_start + tol) {
                    continue;
                }
                if (r.t_recfg_e > installed_at || (r.t_recfg_e == installed_at && q >= installed_step)) {
                    installed = demands[q].cfg;
                    installed_at = r.t_recfg_e;
                    installed_step = q;
                }
            }
            if (installed != demands[i].cfg) {
                fail(Property::P1, i, j, "transmits under config " + std::to_string(installed) + ", needs " +
                                             std::to_string(demands[i].cfg));
            }
        }
    }

    // P2: activities on one OCS never overlap
    for (std::size_t j = 0; j < K; ++j) {
        struct Interval {
            double start, end;
            std::size_t step;
            bool reconfig;
        };
        std::vector<Interval> busy;
        for (std::size_t i = 0; i < I; ++i) {
            const Slot &s = schedule.at(i, j);
            if (s.reconfig && s.t_recfg_e - s.t_recfg_s > tol) {
                busy.push_back({s.t_recfg_s, s.t_recfg_e, i, true});
            }
            if (s.used && s.t_end - s.t_start > tol) {
                busy.push_back({s.t_start, s.t_end, i, false});
            }
        }
        std::sort(busy.begin(), busy.end(), [](const Interval &a, const Interval &b) {
            return a.start != b.start ? a.start < b.start : a.end < b.end;
        });
        for (std::size_t n = 1; n < busy.size(); ++n) {
            if (busy[n].start < busy[n - 1].end - tol) {
                fail(Property::P2, busy[n].step, j,
                     std::string(busy[n].reconfig ? "reconfiguration" : "transmission") + " at " + fmt(busy[n].start) +
                         " overlaps activity of step " + std::to_string(busy[n - 1].step + 1) + " ending at " +
                         fmt(busy[n - 1].end));
            }
        }
    }

    // P3: steps run in order, separated by the synchronisation latency
    for (std::size_t i = 0; i < I; ++i) {
        double last_end = 0.0;
        for (std::size_t j = 0; j < K; ++j) {
            const Slot &s = schedule.at(i, j);
            if (!s.used) {
                continue;
            }
            last_end = std::max(last_end, s.t_end);
            const double earliest = i == 0 ? 0.0 : schedule.step_end[i - 1] + scenario.sync_latency_s;
            if (s.t_start < earliest - tol) {
                fail(Property::P3, i, j, "starts at " + fmt(s.t_start) + " before " + fmt(earliest));
            }
        }
        if (schedule.step_end[i] < last_end - tol) {
            fail(Property::P3, i, Violation::npos,
                 "step end " + fmt(schedule.step_end[i]) + " precedes its last transmission at " + fmt(last_end));
        }
    }

    rep.cct = I == 0 ? 0.0 : *std::max_element(schedule.step_end.begin(), schedule.step_end.end());
    if (std::fabs(rep.cct - schedule.cct) > tol) {
        rep.warnings.push_back("reported cct " + fmt(schedule.cct) + " differs from replayed " + fmt(rep.cct));
    }
    if (rep.cct > 0.0) {
        rep.utilization = total_bytes * per_byte / (static_cast<double>(K) * rep.cct);
    }
    return rep;
}

} // namespace ocsched
