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

#include "rica/rotation.hpp"

#include <cmath>
#include <numbers>

namespace rica::rotation {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

AngleVector::AngleVector(int d) : d_(d) {
  if (d < 2) throw ValidationError("AngleVector: dimension must be >= 2");
  theta_.assign(static_cast<size_t>(d) * (d - 1) / 2, 0.0);
}

int AngleVector::block_offset(int k) const {
  if (k < 1 || k > d_ - 1) throw ValidationError("AngleVector: block index out of range");
  // Blocks 1..k-1 have sizes d-1, d-2, ..., d-k+1.
  return (k - 1) * d_ - (k - 1) * k / 2;
}

int AngleVector::index_of(int i, int j) const {
  if (i < 1 || i >= j || j > d_) throw ValidationError("AngleVector: need 1 <= i < j <= d");
  return block_offset(i) + (j - i - 1);
}

double AngleVector::upper_bound(int flat_index) const {
  if (flat_index < 0 || flat_index >= size())
    throw ValidationError("AngleVector: flat index out of range");
  return flat_index < d_ - 1 ? kTwoPi : std::numbers::pi;
}

Eigen::MatrixXd givens(int d, int i, int j, double angle) {
  if (d < 2 || i < 1 || i >= j || j > d)
    throw ValidationError("givens: need d >= 2 and 1 <= i < j <= d");
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(d, d);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  q(i - 1, i - 1) = c;
  q(j - 1, j - 1) = c;
  q(i - 1, j - 1) = s;
  q(j - 1, i - 1) = -s;
  return q;
}

Eigen::MatrixXd compose(const AngleVector& angles) {
  const int d = angles.dim();
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(d, d);
  // Right-multiplying by Q_{i,j}(t) mixes columns i and j:
  //   col_i' = cos(t) col_i - sin(t) col_j,  col_j' = sin(t) col_i + cos(t) col_j,
  // which is entrywise identical to the full matrix product.
  for (int k = d - 1; k >= 1; --k) {
    for (int j = d; j >= k + 1; --j) {
      const double t = angles.at(k, j);
      const double c = std::cos(t);
      const double s = std::sin(t);
      for (int r = 0; r < d; ++r) {
        const double ui = u(r, k - 1);
        const double uj = u(r, j - 1);
        u(r, k - 1) = c * ui - s * uj;
        u(r, j - 1) = s * ui + c * uj;
      }
    }
  }
  return u;
}

AngleVector canonicalize(const AngleVector& angles) {
  AngleVector out = angles;
  const int d = out.dim();
  for (int k = 1; k <= d - 1; ++k) {
    const double period = k == 1 ? kTwoPi : std::numbers::pi;
    for (int j = k + 1; j <= d; ++j) {
      double t = std::fmod(out.at(k, j), period);
      if (t < 0.0) t += period;
      out.at(k, j) = t;
    }
  }
  return out;
}

bool row_dependency_check(const AngleVector& angles, int k) {
  const int d = angles.dim();
  if (k < 1 || k > d) throw ValidationError("row_dependency_check: k out of range");
  const Eigen::VectorXd base_row = compose(angles).row(k - 1);
  for (int i = k + 1; i <= d - 1; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      AngleVector perturbed = angles;
      perturbed.at(i, j) += 0.37;
      const Eigen::VectorXd row = compose(perturbed).row(k - 1);
      if ((row - base_row).cwiseAbs().maxCoeff() > 1e-14) return false;
    }
  }
  return true;
}

}  // namespace rica::rotation
