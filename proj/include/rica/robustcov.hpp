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

#include <cstdint>
#include <vector>

namespace rica::robustcov {

/// Unbiased sample covariance (n-1 denominator).
Eigen::MatrixXd sample_covariance(const DataMatrix& x);

struct RobustCovResult {
  Vector location;              // h-subset mean
  Eigen::MatrixXd scatter;      // consistency-rescaled h-subset covariance
  std::vector<int> subset;      // sorted indices of the best h-subset
  double raw_determinant = 0.0; // determinant of the unscaled subset covariance
  double consistency_factor = 1.0;
};

struct McdOptions {
  double h_fraction = 0.75;  // breakdown value 1 - h_fraction
  int n_starts = 500;        // random elemental starts
  int initial_c_steps = 2;   // concentration steps per start
  int n_finalists = 10;      // candidates iterated to convergence
  int max_c_steps = 100;
  double det_rel_tol = 1e-9;
  int n_threads = 1;
};

/// Location/scatter fit of the rows listed in idx.
struct SubsetFit {
  std::vector<int> subset;
  Vector location;
  Eigen::MatrixXd cov;
  double det = 0.0;
};
SubsetFit fit_subset(const DataMatrix& x, const std::vector<int>& idx);

/// One concentration step: rank all rows by Mahalanobis distance under
/// (location, cov), refit on the h closest. Ties broken by row index so the
/// result is a deterministic function of the inputs. The refit determinant
/// never exceeds the input subset's (the C-step theorem); asserted in tests.
SubsetFit mcd_c_step(const DataMatrix& x, const Vector& location, const Eigen::MatrixXd& cov,
                     int h);

/// FastMCD: random elemental starts, a couple of concentration steps each,
/// full iteration on the best few, winner by lowest determinant (ties by
/// lowest start index). Deterministic given (data, options, seed) regardless
/// of how many threads evaluate the starts. The scatter is rescaled by the
/// chi-square consistency factor so clean Gaussian data gives an unbiased
/// covariance estimate.
RobustCovResult fast_mcd(const DataMatrix& x, std::uint64_t seed, const McdOptions& options = {});
RobustCovResult fast_mcd(const DataMatrix& x, double h_fraction, std::uint64_t seed);

struct WhitenedData {
  DataMatrix z;
  Eigen::MatrixXd whitening_matrix;  // symmetric inverse square root of the scatter
  Vector center;
};

/// z = (x - center) * scatter^{-1/2}, with the symmetric (eigen) inverse
/// square root. Throws ConditioningError naming the eigenvalue ratio when the
/// scatter is numerically singular.
WhitenedData whiten(const DataMatrix& x, const Vector& center, const Eigen::MatrixXd& scatter);

}  // namespace rica::robustcov
