// Copyright 2026 The RICA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "rica/common.hpp"

#include <functional>
#include <vector>

namespace rica::optimizer {

/// Box-constrained derivative-free minimization problem.
struct OptProblem {
  std::function<double(const Vector&)> objective;
  Vector lower;
  Vector upper;
  Vector initial;
  int max_evals = 0;           // 0 -> 100 * dimension
  double radius_init = 0.5;
  double radius_final = 1e-4;
};

enum class StopReason { radius, eval_budget };

struct OptResult {
  Vector minimizer;
  double objective_value = 0.0;
  int evaluations = 0;
  StopReason converged_by = StopReason::radius;
};

/// Trust-region minimization with quadratic interpolation models built from
/// function values on a deterministic stencil (central differences where the
/// box allows, one-sided at bounds). Every evaluated point lies in the closed
/// box, the result never degrades the initial point, identical inputs give
/// identical evaluation sequences, and quadratic objectives are solved to
/// rounding accuracy.
OptResult minimize(const OptProblem& problem);

/// minimize from each start; returns the best result, ties broken by the
/// lowest start index. Starts must lie inside the box.
OptResult multistart_minimize(const OptProblem& problem, const std::vector<Vector>& starts);

}  // namespace rica::optimizer
