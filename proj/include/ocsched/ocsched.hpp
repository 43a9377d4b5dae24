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

#include "ocsched/baselines.hpp"
#include "ocsched/branch_and_bound.hpp"
#include "ocsched/collectives.hpp"
#include "ocsched/heuristic.hpp"
#include "ocsched/lp_format.hpp"
#include "ocsched/milp_model.hpp"
#include "ocsched/oracle.hpp"
#include "ocsched/permutation.hpp"
#include "ocsched/simplex.hpp"
#include "ocsched/simulator.hpp"

#include "ocsched/harness/bundle.hpp"
#include "ocsched/harness/run.hpp"
#include "ocsched/harness/scenario_file.hpp"
#include "ocsched/harness/sweep.hpp"
