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

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ocsched {

/**
 * @brief Raised when a port mapping is not a bijection.
 */
class PermutationError : public std::invalid_argument {
  public:
    enum class Kind { DuplicateSource, DuplicateDestination, OutOfRange, WrongPairCount, TooSmall };

    PermutationError(Kind kind, const std::string &what) : std::invalid_argument(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

  private:
    Kind kind_;
};

/**
 * @brief One OCS configuration: ingress port i is connected to egress port map()[i].
 *
 * Node i transmits on port i of every OCS, so a pairing of nodes and the
 * switch configuration realising it are the same object.
 */
class Permutation {
  public:
    using PortPair = std::pair<std::size_t, std::size_t>;

    /// Validates `map` as a bijection on {0..N-1}, N >= 2.
    explicit Permutation(std::vector<std::size_t> map) : map_(std::move(map)) { validate(); }

    static Permutation identity(std::size_t n) {
        std::vector<std::size_t> map(n);
        for (std::size_t i = 0; i < n; ++i) {
            map[i] = i;
        }
        return Permutation(std::move(map));
    }

    /// i -> (i + shift) mod n
    static Permutation shift(std::size_t n, std::size_t shift) {
        std::vector<std::size_t> map(n);
        for (std::size_t i = 0; i < n; ++i) {
            map[i] = (i + shift) % n;
        }
        return Permutation(std::move(map));
    }

    /// i -> i xor mask
    static Permutation exclusive_or(std::size_t n, std::size_t mask) {
        std::vector<std::size_t> map(n);
        for (std::size_t i = 0; i < n; ++i) {
            map[i] = i ^ mask;
        }
        return Permutation(std::move(map));
    }

    std::size_t size() const noexcept { return map_.size(); }
    std::size_t operator[](std::size_t port) const { return map_.at(port); }
    std::span<const std::size_t> map() const noexcept { return map_; }

    std::vector<PortPair> pairs() const {
        std::vector<PortPair> out;
        out.reserve(map_.size());
        for (std::size_t i = 0; i < map_.size(); ++i) {
            out.emplace_back(i, map_[i]);
        }
        return out;
    }

    friend bool operator==(const Permutation &, const Permutation &) = default;

  private:
    void validate() const {
        const std::size_t n = map_.size();
        if (n < 2) {
            throw PermutationError(PermutationError::Kind::TooSmall, "permutation needs at least 2 ports");
        }
        std::vector<bool> seen(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            if (map_[i] >= n) {
                throw PermutationError(PermutationError::Kind::OutOfRange,
                                       "egress port " + std::to_string(map_[i]) + " out of range");
            }
            if (seen[map_[i]]) {
                throw PermutationError(PermutationError::Kind::DuplicateDestination,
                                       "egress port " + std::to_string(map_[i]) + " used twice");
            }
            seen[map_[i]] = true;
        }
    }

    std::vector<std::size_t> map_;
};

/// Builds a permutation of `size` ports from explicit (ingress, egress) pairs.
inline Permutation make_permutation(std::span<const Permutation::PortPair> pairs, std::size_t size) {
    using Kind = PermutationError::Kind;
    if (size < 2) {
        throw PermutationError(Kind::TooSmall, "permutation needs at least 2 ports");
    }
    std::vector<std::size_t> map(size, size);
    std::vector<bool> dst_seen(size, false);
    for (const auto &[src, dst] : pairs) {
        if (src >= size || dst >= size) {
            throw PermutationError(Kind::OutOfRange, "pair (" + std::to_string(src) + "," + std::to_string(dst) +
                                                         ") out of range for " + std::to_string(size) + " ports");
        }
        if (map[src] != size) {
            throw PermutationError(Kind::DuplicateSource, "ingress port " + std::to_string(src) + " mapped twice");
        }
        if (dst_seen[dst]) {
            throw PermutationError(Kind::DuplicateDestination, "egress port " + std::to_string(dst) + " used twice");
        }
        map[src] = dst;
        dst_seen[dst] = true;
    }
    if (pairs.size() != size) {
        throw PermutationError(Kind::WrongPairCount, "expected " + std::to_string(size) + " pairs, got " +
                                                         std::to_string(pairs.size()));
    }
    return Permutation(std::move(map));
}

inline Permutation make_permutation(const std::vector<Permutation::PortPair> &pairs, std::size_t size) {
    return make_permutation(std::span<const Permutation::PortPair>(pairs), size);
}

inline bool permutation_equal(const Permutation &a, const Permutation &b) { return a == b; }

} // namespace ocsched
