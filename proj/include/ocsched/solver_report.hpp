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

#include <chrono>
#include <cstddef>
#include <string>

#include "ocsched/model_types.hpp"

namespace ocsched {

enum class Optimality { Proven, Heuristic };

inline const char *to_string(Optimality o) { return o == Optimality::Proven ? "proven" : "heuristic"; }

/// What every scheduler hands back: a timed schedule plus search statistics.
struct SolverReport {
    Schedule schedule;
    double cct = 0.0;
    std::size_t nodes = 0;
    double wall_s = 0.0;
    Optimality optimality = Optimality::Heuristic;
    /// LP bound at the root node; 0 when the scheduler does not compute one.
    double root_bound = 0.0;
    /// Node relaxations whose value exceeded the retimed schedule built from them.
    std::size_t bound_violations = 0;
};

/// Seconds elapsed on a steady clock since construction.
class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace ocsched
