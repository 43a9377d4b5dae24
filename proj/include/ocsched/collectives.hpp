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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ocsched/model_types.hpp"

namespace ocsched {

enum class Algorithm { RingAllReduce, RabenseifnerAllReduce, PairwiseAllToAll, BruckAllToAll };

inline std::string_view algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::RingAllReduce:
        return "ring";
    case Algorithm::RabenseifnerAllReduce:
        return "rabenseifner";
    case Algorithm::PairwiseAllToAll:
        return "pairwise";
    case Algorithm::BruckAllToAll:
        return "bruck";
    }
    return "unknown";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
    for (auto a : {Algorithm::RingAllReduce, Algorithm::RabenseifnerAllReduce, Algorithm::PairwiseAllToAll,
                   Algorithm::BruckAllToAll}) {
        if (algorithm_name(a) == name) {
            return a;
        }
    }
    return std::nullopt;
}

inline bool is_all_reduce(Algorithm a) {
    return a == Algorithm::RingAllReduce || a == Algorithm::RabenseifnerAllReduce;
}

class UnsupportedNodeCount : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// `size_bytes` is the per-node buffer.
struct CollectiveSpec {
    Algorithm algorithm = Algorithm::RingAllReduce;
    std::size_t nodes = 0;
    std::uint64_t size_bytes = 0;

    /// Bytes per block; buffers that do not split evenly are rounded up.
    std::uint64_t block_bytes() const { return (size_bytes + nodes - 1) / nodes; }

    void validate() const {
        if (nodes < 2) {
            throw UnsupportedNodeCount("collective needs at least 2 nodes");
        }
        const bool needs_pow2 =
            algorithm == Algorithm::RabenseifnerAllReduce || algorithm == Algorithm::BruckAllToAll;
        if (needs_pow2 && !std::has_single_bit(nodes)) {
            throw UnsupportedNodeCount(std::string(algorithm_name(algorithm)) + " needs a power-of-two node count, got " +
                                       std::to_string(nodes));
        }
        if (size_bytes == 0) {
            throw std::invalid_argument("collective size must be > 0");
        }
    }
};

struct ConfigAssignment {
    ConfigCatalog catalog;
    std::vector<ConfigId> sequence;
};

/// Interns every pairing in first-appearance order and stamps each step's cfg.
inline ConfigAssignment build_config_catalog(std::vector<StepPlan> &steps) {
    ConfigAssignment out;
    out.sequence.reserve(steps.size());
    for (auto &step : steps) {
        step.cfg = out.catalog.intern(step.pairing);
        out.sequence.push_back(step.cfg);
    }
    return out;
}

struct CollectivePlan {
    std::vector<StepPlan> steps;
    ConfigCatalog catalog;
};

inline CollectivePlan generate_steps(const CollectiveSpec &spec) {
    spec.validate();
    const std::size_t p = spec.nodes;
    const double block = static_cast<double>(spec.block_bytes());
    const double buffer = block * static_cast<double>(p);

    std::vector<StepPlan> steps;
    auto add = [&](Permutation pairing, double volume) {
        steps.push_back(StepPlan{steps.size() + 1, std::move(pairing), volume, kBlankConfig});
    };

    switch (spec.algorithm) {
    case Algorithm::RingAllReduce:
        // reduce-scatter then allgather, both around the same ring
        for (std::size_t s = 0; s < 2 * (p - 1); ++s) {
            add(Permutation::shift(p, 1), block);
        }
        break;
    case Algorithm::RabenseifnerAllReduce: {
        const std::size_t rounds = static_cast<std::size_t>(std::countr_zero(p));
        for (std::size_t t = 1; t <= rounds; ++t) {
            add(Permutation::exclusive_or(p, std::size_t{1} << (t - 1)), buffer / static_cast<double>(1ULL << t));
        }
        for (std::size_t t = rounds; t >= 1; --t) {
            add(Permutation::exclusive_or(p, std::size_t{1} << (t - 1)), buffer / static_cast<double>(1ULL << t));
        }
        break;
    }
    case Algorithm::PairwiseAllToAll:
        for (std::size_t k = 1; k < p; ++k) {
            add(Permutation::shift(p, k), block);
        }
        break;
    case Algorithm::BruckAllToAll: {
        const std::size_t rounds = static_cast<std::size_t>(std::countr_zero(p));
        for (std::size_t t = 1; t <= rounds; ++t) {
            add(Permutation::shift(p, std::size_t{1} << (t - 1)), buffer / 2.0);
        }
        break;
    }
    }

    CollectivePlan plan;
    plan.catalog = build_config_catalog(steps).catalog;
    plan.steps = std::move(steps);
    return plan;
}

/// Result of the block-level replay; converts to bool, carries the first violation.
struct SemanticsCheck {
    bool ok = true;
    std::string detail;
    explicit operator bool() const noexcept { return ok; }
};

namespace detail {

inline SemanticsCheck semantics_fail(std::size_t step, const std::string &what) {
    std::ostringstream os;
    os << "step " << step << ": " << what;
    return {false, os.str()};
}

inline std::optional<std::size_t> uniform_shift(const Permutation &pairing) {
    const std::size_t p = pairing.size();
    const std::size_t shift = (pairing[0] + p) % p;
    for (std::size_t i = 0; i < p; ++i) {
        if (pairing[i] != (i + shift) % p) {
            return std::nullopt;
        }
    }
    return shift;
}

inline std::optional<std::size_t> uniform_xor(const Permutation &pairing) {
    const std::size_t mask = pairing[0];
    for (std::size_t i = 0; i < pairing.size(); ++i) {
        if (pairing[i] != (i ^ mask)) {
            return std::nullopt;
        }
    }
    if (!std::has_single_bit(mask)) {
        return std::nullopt;
    }
    return mask;
}

// Every (node, chunk) carries the set of nodes whose input has been folded into it.
using Contributions = std::vector<std::vector<std::vector<bool>>>;

inline SemanticsCheck check_all_reduce_complete(const Contributions &held, std::size_t steps) {
    const std::size_t p = held.size();
    for (std::size_t node = 0; node < p; ++node) {
        for (std::size_t chunk = 0; chunk < p; ++chunk) {
            for (std::size_t src = 0; src < p; ++src) {
                if (!held[node][chunk][src]) {
                    std::ostringstream os;
                    os << "node " << node << " chunk " << chunk << " lacks contribution of node " << src;
                    return semantics_fail(steps, os.str());
                }
            }
        }
    }
    return {};
}

inline SemanticsCheck verify_ring(const std::vector<StepPlan> &steps, std::size_t p, double block) {
    Contributions held(p, std::vector<std::vector<bool>>(p, std::vector<bool>(p, false)));
    for (std::size_t n = 0; n < p; ++n) {
        for (std::size_t c = 0; c < p; ++c) {
            held[n][c][n] = true;
        }
    }
    const std::size_t phase = p - 1;
    for (std::size_t s = 0; s < steps.size(); ++s) {
        if (s >= 2 * phase) {
            return semantics_fail(s + 1, "unexpected extra step");
        }
        if (steps[s].volume_bytes != block) {
            return semantics_fail(s + 1, "ships one block per node but volume differs");
        }
        auto next = held;
        for (std::size_t i = 0; i < p; ++i) {
            const std::size_t peer = steps[s].pairing[i];
            const std::size_t chunk = s < phase ? (i + p - s) % p : (i + 1 + p - (s - phase)) % p;
            for (std::size_t src = 0; src < p; ++src) {
                if (held[i][chunk][src]) {
                    next[peer][chunk][src] = true;
                }
            }
        }
        held = std::move(next);
    }
    return check_all_reduce_complete(held, steps.size());
}

inline SemanticsCheck verify_rabenseifner(const std::vector<StepPlan> &steps, std::size_t p, double block) {
    const std::size_t rounds = static_cast<std::size_t>(std::countr_zero(p));
    Contributions held(p, std::vector<std::vector<bool>>(p, std::vector<bool>(p, false)));
    std::vector<std::vector<bool>> owned(p, std::vector<bool>(p, true));
    for (std::size_t n = 0; n < p; ++n) {
        for (std::size_t c = 0; c < p; ++c) {
            held[n][c][n] = true;
        }
    }
    for (std::size_t s = 0; s < steps.size(); ++s) {
        if (s >= 2 * rounds) {
            return semantics_fail(s + 1, "unexpected extra step");
        }
        const auto mask = uniform_xor(steps[s].pairing);
        if (!mask) {
            return semantics_fail(s + 1, "pairing is not a power-of-two xor exchange");
        }
        const bool halving = s < rounds;
        auto next_held = held;
        auto next_owned = owned;
        for (std::size_t i = 0; i < p; ++i) {
            const std::size_t peer = steps[s].pairing[i];
            std::size_t sent = 0;
            for (std::size_t c = 0; c < p; ++c) {
                if (!owned[i][c]) {
                    continue;
                }
                if (halving) {
                    // keep the half that agrees with this node on the exchanged bit
                    if ((c & *mask) == (i & *mask)) {
                        continue;
                    }
                    next_owned[i][c] = false;
                } else {
                    next_owned[peer][c] = true;
                }
                ++sent;
                for (std::size_t src = 0; src < p; ++src) {
                    if (held[i][c][src]) {
                        next_held[peer][c][src] = true;
                    }
                }
            }
            if (static_cast<double>(sent) * block != steps[s].volume_bytes) {
                std::ostringstream os;
                os << "node " << i << " ships " << sent << " blocks, volume says " << steps[s].volume_bytes / block;
                return semantics_fail(s + 1, os.str());
            }
        }
        held = std::move(next_held);
        owned = std::move(next_owned);
    }
    return check_all_reduce_complete(held, steps.size());
}

struct Block {
    std::size_t src;
    std::size_t dst;
};

inline SemanticsCheck verify_all_to_all(const std::vector<StepPlan> &steps, std::size_t p, double block, bool bruck) {
    std::vector<std::vector<Block>> held(p);
    for (std::size_t n = 0; n < p; ++n) {
        for (std::size_t d = 0; d < p; ++d) {
            held[n].push_back({n, d});
        }
    }
    for (std::size_t s = 0; s < steps.size(); ++s) {
        const auto &pairing = steps[s].pairing;
        std::optional<std::size_t> bit;
        if (bruck) {
            const auto shift = uniform_shift(pairing);
            if (!shift || !std::has_single_bit(*shift)) {
                return semantics_fail(s + 1, "pairing is not a power-of-two rotation");
            }
            bit = *shift;
        }
        std::vector<std::vector<Block>> next(p);
        for (std::size_t h = 0; h < p; ++h) {
            const std::size_t peer = pairing[h];
            std::size_t sent = 0;
            for (const auto &b : held[h]) {
                const std::size_t offset = (b.dst + p - h) % p;
                const bool forward = bruck ? (offset & *bit) != 0 : (b.dst == peer && b.dst != h);
                if (forward) {
                    next[peer].push_back(b);
                    ++sent;
                } else {
                    next[h].push_back(b);
                }
            }
            if (static_cast<double>(sent) * block != steps[s].volume_bytes) {
                std::ostringstream os;
                os << "node " << h << " ships " << sent << " blocks, volume says " << steps[s].volume_bytes / block;
                return semantics_fail(s + 1, os.str());
            }
        }
        held = std::move(next);
    }
    for (std::size_t n = 0; n < p; ++n) {
        std::vector<bool> from(p, false);
        for (const auto &b : held[n]) {
            if (b.dst != n) {
                std::ostringstream os;
                os << "block " << b.src << "->" << b.dst << " stranded at node " << n;
                return semantics_fail(steps.size(), os.str());
            }
            if (from[b.src]) {
                return semantics_fail(steps.size(), "duplicate block at node " + std::to_string(n));
            }
            from[b.src] = true;
        }
        for (std::size_t src = 0; src < p; ++src) {
            if (!from[src]) {
                std::ostringstream os;
                os << "node " << n << " never received block from node " << src;
                return semantics_fail(steps.size(), os.str());
            }
        }
    }
    return {};
}

} // namespace detail

/**
 * @brief Replays the collective at block granularity and checks its postcondition.
 *
 * All-to-All: each node ends with exactly one block from every node, addressed
 * to itself. AllReduce: every chunk on every node carries every node's
 * contribution. Each step's per-node shipped bytes must equal its volume.
 */
inline SemanticsCheck verify_collective_semantics(const std::vector<StepPlan> &steps, const CollectiveSpec &spec) {
    const std::size_t p = spec.nodes;
    const double block = static_cast<double>(spec.block_bytes());
    for (const auto &s : steps) {
        if (s.pairing.size() != p) {
            return detail::semantics_fail(s.index, "pairing size differs from node count");
        }
    }
    SemanticsCheck check;
    switch (spec.algorithm) {
    case Algorithm::RingAllReduce:
        check = detail::verify_ring(steps, p, block);
        break;
    case Algorithm::RabenseifnerAllReduce:
        check = detail::verify_rabenseifner(steps, p, block);
        break;
    case Algorithm::PairwiseAllToAll:
        check = detail::verify_all_to_all(steps, p, block, false);
        break;
    case Algorithm::BruckAllToAll:
        check = detail::verify_all_to_all(steps, p, block, true);
        break;
    }
    return check;
}

} // namespace ocsched
