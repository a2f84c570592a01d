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
#include "rica/robustcov.hpp"
#include "rica/rotation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rica::ica {

struct OptBudget {
  double radius_init = 0.5;
  double radius_final = 1e-4;
  int max_evals_per_var = 100;
};

/// Stage initialization: a low-discrepancy lattice over the angle box,
/// followed by local minimization from the best few points.
struct MultistartPolicy {
  int starts_per_var = 4;
  int max_starts = 16;
  int local_starts = 3;
};

struct RicaConfig {
  int sweeps = -1;  // -1 means d + 1
  bool use_mcd_whitening = true;
  std::uint64_t seed = 1;
  OptBudget opt;
  MultistartPolicy multistart;
  robustcov::McdOptions mcd;
  double bowl_level = 0.9975;
  int n_threads = 1;  // within-fit kernel threads; fits themselves are single-threaded
};

struct TraceEntry {
  std::string phase;  // "stage", "full", or "sweep"
  int sweep = 0;
  int stage = 0;
  double value = 0.0;
};

struct UnmixResult {
  /// Row-convention unmixing: sources = (x - center) * unmixing,
  /// i.e. whitening followed by the separating rotation.
  Eigen::MatrixXd unmixing;
  Eigen::MatrixXd separating;        // orthogonal U-hat
  Eigen::MatrixXd whitening_matrix;  // symmetric inverse square root of the scatter
  Vector center;
  DataMatrix sources;                // z * U-hat^T
  std::vector<TraceEntry> trace;     // per-stage and per-sweep objective values
  rotation::AngleVector angles;      // angle estimate of the last accepted optimization
  double objective = 0.0;            // accepted full objective
  int degenerate_terms = 0;          // terms zeroed by the dcor degeneracy rule
};

/// Sum over k = 1..d-1 of bowl-dCor between source column k and the block of
/// columns k+1..d, with S = z * U(theta)^T. Each term lies in [0, 1], so the
/// sum is bounded by d - 1.
double rica_objective(const rotation::AngleVector& angles, const DataMatrix& z);

/// Minimizes the k-th objective term over the d-k angles of block k, blocks
/// 1..k-1 held fixed. Later blocks do not enter: distances within the
/// remainder subspace are invariant to rotations of that subspace.
Vector rica_stage(const DataMatrix& z, int k, const rotation::AngleVector& fixed_angles,
                  const RicaConfig& config = {});

/// The RICA estimator: MCD whitening, sequential angle estimation, then
/// `sweeps` refinement passes, each permuting the recovered source columns
/// and re-estimating with improve-only acceptance.
UnmixResult rica_fit(const DataMatrix& x, const RicaConfig& config = {});

/// The dCovICA baseline: identical pipeline with sample-covariance whitening
/// and raw distance-covariance terms, no bowl transform. Sweeps default to 0
/// for this method unless set explicitly in the config.
UnmixResult dcovica_fit(const DataMatrix& x, const RicaConfig& config = {});

}  // namespace rica::ica
