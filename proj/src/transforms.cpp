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

#include "rica/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "rica/distcorr.hpp"
#include "rica/special.hpp"

namespace rica::transforms {

double chi2_cdf(double x, int df) {
  if (df < 1) throw ValidationError("chi2_cdf: df must be >= 1");
  if (x <= 0.0) return 0.0;
  return regularized_lower_gamma(df / 2.0, x / 2.0);
}

double chi2_quantile(double prob, int df) {
  if (!(prob > 0.0 && prob < 1.0))
    throw ValidationError("chi2_quantile: prob must lie strictly in (0, 1)");
  if (df < 1) throw ValidationError("chi2_quantile: df must be >= 1");
  // Bracket the root, expand upward if needed.
  double lo = 0.0;
  double hi = df + 10.0;
  while (chi2_cdf(hi, df) < prob) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (chi2_cdf(mid, df) < prob)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-13 * (1.0 + hi)) break;
  }
  double x = 0.5 * (lo + hi);
  // Newton polish; density of chi2_df.
  const double a = df / 2.0;
  for (int i = 0; i < 8; ++i) {
    const double f = chi2_cdf(x, df) - prob;
    const double pdf =
        std::exp((a - 1.0) * std::log(x) - x / 2.0 - a * std::numbers::ln2 - std::lgamma(a));
    if (pdf <= 0.0) break;
    const double step = f / pdf;
    const double next = x - step;
    if (next <= lo || next >= hi) break;
    x = next;
    if (std::abs(step) < 1e-14 * (1.0 + x)) break;
  }
  return x;
}

BowlParams BowlParams::for_dim(int p, double level) {
  if (p < 1) throw ValidationError("BowlParams: dimension must be >= 1");
  BowlParams b;
  b.p = p;
  b.q = std::sqrt(chi2_quantile(level, p));
  return b;
}

Vector bowl(const Vector& x, const BowlParams& params) {
  if (x.size() != params.p) throw ValidationError("bowl: input length does not match params.p");
  if (!x.allFinite()) throw ValidationError("bowl: non-finite input");
  if (!(params.q > 0.0)) throw ValidationError("bowl: q must be positive");
  const double u = std::tanh(x.norm() / params.q);
  const double om = 1.0 - u;
  const double s1 = 10.0 * u * u * om * om;
  Vector out(params.p + 1);
  out.head(params.p) = s1 * x;
  out(params.p) = 10.0 * u * u * u * u * u * u * om * om;
  return out;
}

DataMatrix bowl_rows(const DataMatrix& x, const BowlParams& params) {
  if (x.cols() != params.p) throw ValidationError("bowl_rows: column count does not match params.p");
  if (!x.allFinite()) throw ValidationError("bowl_rows: non-finite input");
  if (!(params.q > 0.0)) throw ValidationError("bowl_rows: q must be positive");
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  DataMatrix out(n, p + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = std::tanh(x.row(i).norm() / params.q);
    const double om = 1.0 - u;
    const double s1 = 10.0 * u * u * om * om;
    out.row(i).head(p) = s1 * x.row(i);
    out(i, p) = 10.0 * u * u * u * u * u * u * om * om;
  }
  return out;
}

std::pair<double, double> biloop(double x, const BiloopParams& params) {
  if (!std::isfinite(x)) throw ValidationError("biloop: non-finite input");
  if (!(params.c > 0.0)) throw ValidationError("biloop: c must be positive");
  const double c = params.c;
  const double t = 2.0 * std::numbers::pi * std::tanh(x / c);
  const double u = x >= 0.0 ? c * (1.0 + std::cos(t + std::numbers::pi))
                            : -c * (1.0 + std::cos(t - std::numbers::pi));
  return {u, std::sin(t)};
}

namespace {

double median_of(std::vector<double> v) {
  const size_t n = v.size();
  auto mid = v.begin() + n / 2;
  std::nth_element(v.begin(), mid, v.end());
  if (n % 2 == 1) return *mid;
  const double hi = *mid;
  const double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

}  // namespace

Vector robust_standardize(const Vector& column, bool scale_normal_consistent) {
  if (column.size() < 1) throw ValidationError("robust_standardize: empty column");
  if (!column.allFinite()) throw ValidationError("robust_standardize: non-finite input");
  std::vector<double> v(column.data(), column.data() + column.size());
  const double med = median_of(v);
  for (double& e : v) e = std::abs(e - med);
  double mad = median_of(v);
  if (scale_normal_consistent) mad *= 1.4826;
  if (mad <= 0.0)
    throw DegenerateScaleError("robust_standardize: MAD is zero, scale is meaningless");
  return (column.array() - med) / mad;
}

double bowl_dcor(const DataMatrix& x, const DataMatrix& y, int n_threads) {
  distcorr::validate_pair(x, y);
  const DataMatrix bx = bowl_rows(x, BowlParams::for_dim(static_cast<int>(x.cols())));
  const DataMatrix by = bowl_rows(y, BowlParams::for_dim(static_cast<int>(y.cols())));
  return distcorr::dcor_n(bx, by, n_threads).dcor;
}

}  // namespace rica::transforms
