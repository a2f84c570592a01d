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

#include <vector>

namespace rica::rotation {

/// Doubly-indexed Givens angles theta_{i,j}, 1 <= i < j <= d, packed by
/// blocks: block k holds theta_{k,k+1}, ..., theta_{k,d}. Legal ranges are
/// [0, 2*pi) for the first block and [0, pi) for the rest.
class AngleVector {
 public:
  AngleVector() = default;
  explicit AngleVector(int d);

  int dim() const { return d_; }
  int size() const { return static_cast<int>(theta_.size()); }

  /// 1-based paper indices, i < j.
  double& at(int i, int j) { return theta_[index_of(i, j)]; }
  double at(int i, int j) const { return theta_[index_of(i, j)]; }

  /// Flat offset of block k (1-based); the block has d - k entries.
  int block_offset(int k) const;
  int block_size(int k) const { return d_ - k; }

  const std::vector<double>& flat() const { return theta_; }
  std::vector<double>& flat() { return theta_; }

  /// Legal upper bound of the flat entry (2*pi on block 1, pi otherwise).
  double upper_bound(int flat_index) const;

 private:
  int index_of(int i, int j) const;
  int d_ = 0;
  std::vector<double> theta_;
};

/// Givens rotation: identity with entries (i,i) = (j,j) = cos(angle),
/// (i,j) = +sin(angle), (j,i) = -sin(angle). 1-based indices, i < j.
Eigen::MatrixXd givens(int d, int i, int j, double angle);

/// U(theta) = Q^{d-1} Q^{d-2} ... Q^1 with Q^k = Q_{k,d} ... Q_{k,k+1},
/// accumulated left to right in exactly this factor order. Row k of the
/// result depends only on angle blocks 1..k.
Eigen::MatrixXd compose(const AngleVector& angles);

/// Wraps every angle into its legal range by periodicity (2*pi on block 1,
/// pi on later blocks). compose of the result equals compose of the input up
/// to sign conventions; it is exactly equal for 2*pi shifts of block 1.
AngleVector canonicalize(const AngleVector& angles);

/// Structural check of the sequential-dependence property: true iff
/// perturbing any angle in blocks i > k leaves row k of compose unchanged
/// within 1e-14. Not for hot paths.
bool row_dependency_check(const AngleVector& angles, int k);

}  // namespace rica::rotation
