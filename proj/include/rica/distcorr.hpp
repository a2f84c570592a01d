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

namespace rica::distcorr {

/// dVar below this (after clamping at zero) marks a degenerate sample; a
/// constant sample carries no dependence, so dcor is defined as 0 there.
inline constexpr double kDegeneracyTol = 1e-12;

/// Raw pair-sum / triple-sum terms of the empirical distance covariance:
///   T1 = C(n,2)^-1 sum_{i<j} a_ij b_ij
///   T2 = [C(n,2)^-1 sum_{i<j} a_ij] [C(n,2)^-1 sum_{i<j} b_ij]
///   T3 = (1/3) C(n,3)^-1 sum_{i<j<k} [six cross products]
/// a, b are pairwise Euclidean distance matrices of the two samples.
struct DcovTerms {
  double t1 = 0.0, t2 = 0.0, t3 = 0.0;
  double value() const { return t1 + t2 - t3; }
};

struct DependenceStats {
  double dcov = 0.0;    // clamped at 0
  double dvar_x = 0.0;  // clamped at 0
  double dvar_y = 0.0;  // clamped at 0
  double dcor = 0.0;    // in [0, 1]
  bool degenerate_x = false;
  bool degenerate_y = false;
  // Unclamped diagnostics. The estimator can go fractionally negative.
  double raw_dcov = 0.0;
  double raw_dvar_x = 0.0;
  double raw_dvar_y = 0.0;
};

/// Reusable scratch for the O(n^2) kernel. One instance per thread of use;
/// reusing it across evaluations avoids repeated large allocations.
class Workspace {
 public:
  Eigen::MatrixXd ax, ay;            // pairwise distance matrices
  Eigen::VectorXd row_a, row_b;      // distance matrix row sums
  Eigen::VectorXd pab, paa, pbb;     // per-row partial reductions
  void resize(Eigen::Index n);
};

/// Throws unless x, y share n >= 3 rows of finite entries.
void validate_pair(const DataMatrix& x, const DataMatrix& y);

/// Fast O(n^2) path. The six-term triple sum is folded into row sums of the
/// distance matrices via
///   sum_{i<j<k}[six terms] = sum_i a_i. b_i. - sum_{i != j} a_ij b_ij,
/// an identity validated against dcov_terms_bruteforce in the test suite.
/// Per-row partials are combined serially, so the result is bitwise
/// independent of n_threads.
DcovTerms dcov_terms(const DataMatrix& x, const DataMatrix& y, Workspace& ws, int n_threads = 1);

/// Literal evaluation: pair sums plus the O(n^3) sum over index triples.
/// Serial reference for the fast path; intended for n up to ~100.
DcovTerms dcov_terms_bruteforce(const DataMatrix& x, const DataMatrix& y);

/// Empirical distance covariance, clamped at 0. Raw value via dcov_terms.
double dcov_n(const DataMatrix& x, const DataMatrix& y, int n_threads = 1);

/// Brute-force counterpart of dcov_n, same clamping.
double dcov_n_bruteforce(const DataMatrix& x, const DataMatrix& y);

/// Empirical distance variance, clamped at 0.
double dvar_n(const DataMatrix& x, int n_threads = 1);

/// Full statistics: dcov, both dvars, and dcor = dcov / sqrt(dvar_x dvar_y)
/// clamped to [0, 1]; degenerate samples give dcor = 0 with the flag set.
DependenceStats dcor_n(const DataMatrix& x, const DataMatrix& y, int n_threads = 1);
DependenceStats dcor_n(const DataMatrix& x, const DataMatrix& y, Workspace& ws, int n_threads = 1);

}  // namespace rica::distcorr
