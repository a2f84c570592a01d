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

#include <utility>

namespace rica::transforms {

/// Quantile of the chi-square distribution with df degrees of freedom:
/// the x with RegularizedLowerGamma(df/2, x/2) = prob, to 1e-10 in
/// probability. Bisection plus Newton polish on the incomplete gamma.
double chi2_quantile(double prob, int df);

/// Chi-square CDF (regularized lower incomplete gamma).
double chi2_cdf(double x, int df);

/// Parameters of the bowl transform R^p -> R^(p+1).
struct BowlParams {
  int p = 1;       // input dimension
  double q = 0.0;  // scaling constant, q > 0

  /// Default scaling q = sqrt(chi2_quantile(level, p)).
  static BowlParams for_dim(int p, double level = 0.9975);
};

/// Bowl transform of a single point:
///   u  = tanh(||x|| / q)
///   v1 = 10 u^2 (1-u)^2 x          (p components)
///   v2 = 10 u^6 (1-u)^2            (1 component)
/// Bounded, one-to-one, continuous, and redescending: far outliers map to
/// points near the origin.
Vector bowl(const Vector& x, const BowlParams& params);

/// Row-wise bowl transform of an n x p matrix, giving n x (p+1).
DataMatrix bowl_rows(const DataMatrix& x, const BowlParams& params);

struct BiloopParams {
  double c = 4.0;  // tuning constant, c > 0
};

/// Biloop transform R -> R^2, the univariate predecessor of the bowl:
///   u(x) = +- c (1 + cos(2 pi tanh(x/c) -+ pi)),  v(x) = sin(2 pi tanh(x/c)).
/// Odd: biloop(-x) = -biloop(x) componentwise.
std::pair<double, double> biloop(double x, const BiloopParams& params = {});

/// (x - median) / MAD per entry. MAD is the raw median absolute deviation;
/// set scale_normal_consistent to multiply it by 1.4826.
/// Throws DegenerateScaleError when MAD = 0.
Vector robust_standardize(const Vector& column, bool scale_normal_consistent = false);

/// dCor of the bowl-transformed pair: bowl is applied row-wise to each matrix
/// (p -> p+1 and q -> q+1 columns) with per-matrix scaling constants, then
/// the distance correlation of the transformed samples is returned.
double bowl_dcor(const DataMatrix& x, const DataMatrix& y, int n_threads = 1);

}  // namespace rica::transforms
