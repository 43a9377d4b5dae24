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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ocsched/permutation.hpp"
#include "ocsched/units.hpp"

namespace ocsched {

/// Index into a ConfigCatalog, 1-based. 0 means "no circuits installed".
using ConfigId = std::uint32_t;
inline constexpr ConfigId kBlankConfig = 0;

/**
 * @brief Cluster parameters shared by every scheduler.
 *
 * `initial_configs` empty means the scheduler may pick each OCS's
 * preinstalled configuration; otherwise it pins one id per OCS.
 */
struct Scenario {
    std::size_t nodes = 0;
    std::size_t ocs_count = 0;
    double bandwidth_bps = 0.0;
    double t_recfg_s = 0.0;
    double sync_latency_s = 0.0;
    std::optional<std::vector<ConfigId>> initial_configs;

    bool free_initial_configs() const noexcept { return !initial_configs.has_value(); }

    void validate() const {
        if (nodes < 2) {
            throw std::invalid_argument("scenario: nodes must be >= 2");
        }
        if (ocs_count < 1) {
            throw std::invalid_argument("scenario: ocs_count must be >= 1");
        }
        if (!(bandwidth_bps > 0.0)) {
            throw std::invalid_argument("scenario: bandwidth must be > 0");
        }
        if (!(t_recfg_s >= 0.0)) {
            throw std::invalid_argument("scenario: t_recfg must be >= 0");
        }
        if (!(sync_latency_s >= 0.0)) {
            throw std::invalid_argument("scenario: sync_latency must be >= 0");
        }
        if (initial_configs && initial_configs->size() != ocs_count) {
            throw std::invalid_argument("scenario: initial_configs needs one entry per OCS");
        }
    }
};

/// One collective step: who talks to whom, and how many bytes each node sends.
struct StepPlan {
    std::size_t index = 0; // 1-based
    Permutation pairing;
    double volume_bytes = 0.0;
    ConfigId cfg = kBlankConfig;
};

/// Distinct pairings in first-appearance order; ids are 1..size().
class ConfigCatalog {
  public:
    /// Returns the id of `perm`, inserting it if new.
    ConfigId intern(const Permutation &perm) {
        if (auto id = find(perm)) {
            return *id;
        }
        entries_.push_back(perm);
        return static_cast<ConfigId>(entries_.size());
    }

    std::optional<ConfigId> find(const Permutation &perm) const {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (permutation_equal(entries_[i], perm)) {
                return static_cast<ConfigId>(i + 1);
            }
        }
        return std::nullopt;
    }

    const Permutation &at(ConfigId id) const {
        if (id == kBlankConfig || id > entries_.size()) {
            throw std::out_of_range("config id " + std::to_string(id) + " not in catalog");
        }
        return entries_[id - 1];
    }

    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<Permutation> &entries() const noexcept { return entries_; }

  private:
    std::vector<Permutation> entries_;
};

/// What a scheduler needs from a step: its configuration and volume.
struct StepDemand {
    ConfigId cfg = kBlankConfig;
    double volume_bytes = 0.0;
};

inline std::vector<StepDemand> demands_of(const std::vector<StepPlan> &steps) {
    std::vector<StepDemand> out;
    out.reserve(steps.size());
    for (const auto &s : steps) {
        out.push_back({s.cfg, s.volume_bytes});
    }
    return out;
}

inline ConfigId max_config_id(const std::vector<StepDemand> &demands) {
    ConfigId best = 0;
    for (const auto &d : demands) {
        best = std::max(best, d.cfg);
    }
    return best;
}

/// Activity of one OCS during one step.
struct Slot {
    double volume_bytes = 0.0;
    bool used = false;
    bool reconfig = false;
    double t_start = 0.0;
    double t_end = 0.0;
    double t_recfg_s = 0.0;
    double t_recfg_e = 0.0;
};

/**
 * @brief Timed plan for every (step, OCS) pair, plus per-step completion times.
 *
 * A reconfiguration recorded at (i, j) always installs step i's configuration
 * on OCS j.
 */
class Schedule {
  public:
    Schedule() = default;
    Schedule(std::size_t steps, std::size_t ocs)
        : step_end(steps, 0.0), initial_configs(ocs, kBlankConfig), steps_(steps), ocs_(ocs), slots_(steps * ocs) {}

    std::size_t steps() const noexcept { return steps_; }
    std::size_t ocs_count() const noexcept { return ocs_; }

    Slot &at(std::size_t step, std::size_t ocs) { return slots_.at(step * ocs_ + ocs); }
    const Slot &at(std::size_t step, std::size_t ocs) const { return slots_.at(step * ocs_ + ocs); }

    std::size_t reconfig_count() const {
        return static_cast<std::size_t>(
            std::count_if(slots_.begin(), slots_.end(), [](const Slot &s) { return s.reconfig; }));
    }

    std::vector<double> step_end;
    std::vector<ConfigId> initial_configs;
    double cct = 0.0;

  private:
    std::size_t steps_ = 0;
    std::size_t ocs_ = 0;
    std::vector<Slot> slots_;
};

} // namespace ocsched
