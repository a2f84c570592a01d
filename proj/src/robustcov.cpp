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

#include "rica/robustcov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rica/rng.hpp"
#include "rica/transforms.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace rica::robustcov {

namespace {

bool spd_solve(const Eigen::MatrixXd& cov, Eigen::LLT<Eigen::MatrixXd>& llt) {
  llt.compute(cov);
  return llt.info() == Eigen::Success &&
         llt.matrixL().toDenseMatrix().diagonal().minCoeff() > 1e-150;
}

double det_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  const Eigen::VectorXd diag = llt.matrixL().toDenseMatrix().diagonal();
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) logdet += 2.0 * std::log(diag(i));
  return std::exp(logdet);
}

struct Candidate {
  double det = std::numeric_limits<double>::infinity();
  int start = -1;
  SubsetFit fit;
  bool valid() const { return start >= 0 && std::isfinite(det); }
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.det != b.det) return a.det < b.det;
  return a.start < b.start;
}

}  // namespace

Eigen::MatrixXd sample_covariance(const DataMatrix& x) {
  const Eigen::Index n = x.rows();
  if (n < 2) throw DimensionError("sample_covariance: need at least two rows");
  require_finite(x, "sample_covariance");
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const DataMatrix centered = x.rowwise() - mean;
  return centered.transpose() * centered / static_cast<double>(n - 1);
}

SubsetFit fit_subset(const DataMatrix& x, const std::vector<int>& idx) {
  const Eigen::Index d = x.cols();
  const Eigen::Index h = static_cast<Eigen::Index>(idx.size());
  if (h < 2) throw DimensionError("fit_subset: need at least two rows");
  SubsetFit f;
  f.subset = idx;
  f.location = Vector::Zero(d);
  for (int i : idx) f.location += x.row(i).transpose();
  f.location /= static_cast<double>(h);
  f.cov = Eigen::MatrixXd::Zero(d, d);
  for (int i : idx) {
    const Vector c = x.row(i).transpose() - f.location;
    f.cov.noalias() += c * c.transpose();
  }
  f.cov /= static_cast<double>(h - 1);
  Eigen::LLT<Eigen::MatrixXd> llt;
  f.det = spd_solve(f.cov, llt) ? det_from_llt(llt) : 0.0;
  return f;
}

SubsetFit mcd_c_step(const DataMatrix& x, const Vector& location, const Eigen::MatrixXd& cov,
                     int h) {
  const Eigen::Index n = x.rows();
  if (h < 2 || h > n) throw DimensionError("mcd_c_step: h out of range");
  Eigen::LLT<Eigen::MatrixXd> llt;
  if (!spd_solve(cov, llt)) throw ConditioningError("mcd_c_step: singular covariance");
  std::vector<std::pair<double, int>> dist(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vector c = x.row(i).transpose() - location;
    dist[i] = {c.dot(llt.solve(c)), static_cast<int>(i)};
  }
  std::nth_element(dist.begin(), dist.begin() + (h - 1), dist.end());
  std::vector<int> keep(h);
  for (int i = 0; i < h; ++i) keep[i] = dist[i].second;
  std::sort(keep.begin(), keep.end());
  return fit_subset(x, keep);
}

RobustCovResult fast_mcd(const DataMatrix& x, std::uint64_t seed, const McdOptions& options) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  require_finite(x, "fast_mcd");
  if (n < 2 * (d + 1)) throw DimensionError("fast_mcd: need n >= 2(d+1)");
  const int h = static_cast<int>(std::floor(options.h_fraction * static_cast<double>(n)));
  if (h < d + 1 || h > n) throw DimensionError("fast_mcd: h = floor(h_fraction*n) out of range");

  RobustCovResult out;
  if (h == static_cast<int>(n)) {
    // The only subset is everything: plain sample estimates, factor 1.
    out.location = x.colwise().mean().transpose();
    out.scatter = sample_covariance(x);
    out.subset.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) out.subset[i] = static_cast<int>(i);
    out.raw_determinant = out.scatter.determinant();
    out.consistency_factor = 1.0;
    if (out.raw_determinant <= 0.0) throw ExactFitError("fast_mcd: singular sample covariance");
    return out;
  }

  std::vector<std::uint64_t> start_seeds(options.n_starts);
  for (int s = 0; s < options.n_starts; ++s) start_seeds[s] = derive_seed(seed, {1, (std::uint64_t)s});

  std::vector<Candidate> cands(options.n_starts);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 4) num_threads(options.n_threads > 0 ? options.n_threads : 1)
#endif
  for (int s = 0; s < options.n_starts; ++s) {
    Rng rng(start_seeds[s]);
    // Elemental (d+1)-point start, extended with extra points while singular.
    std::vector<int> idx = rng.sample_without_replacement(static_cast<int>(n), static_cast<int>(d) + 1);
    SubsetFit fit = fit_subset(x, idx);
    while (fit.det <= 0.0 && static_cast<Eigen::Index>(idx.size()) < n) {
      int extra;
      do {
        extra = rng.uniform_int(static_cast<int>(n));
      } while (std::find(idx.begin(), idx.end(), extra) != idx.end());
      idx.push_back(extra);
      fit = fit_subset(x, idx);
    }
    if (fit.det <= 0.0) continue;  // whole data set degenerate from this path
    bool ok = true;
    for (int step = 0; step < options.initial_c_steps; ++step) {
      SubsetFit next = mcd_c_step(x, fit.location, fit.cov, h);
      if (next.det <= 0.0) {
        ok = false;
        break;
      }
      fit = std::move(next);
    }
    if (!ok) continue;
    cands[s].det = fit.det;
    cands[s].start = s;
    cands[s].fit = std::move(fit);
  }

  std::vector<int> order;
  for (int s = 0; s < options.n_starts; ++s)
    if (cands[s].valid()) order.push_back(s);
  if (order.empty()) throw ExactFitError("fast_mcd: every start produced a singular subset");
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return better(cands[a], cands[b]); });
  const int n_final = std::min<int>(options.n_finalists, static_cast<int>(order.size()));

  std::vector<Candidate> finals(n_final);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic) num_threads(options.n_threads > 0 ? options.n_threads : 1)
#endif
  for (int f = 0; f < n_final; ++f) {
    Candidate c = cands[order[f]];
    for (int step = 0; step < options.max_c_steps; ++step) {
      SubsetFit next = mcd_c_step(x, c.fit.location, c.fit.cov, h);
      if (next.det <= 0.0) break;
      const double rel = (c.fit.det - next.det) / c.fit.det;
      c.fit = std::move(next);
      c.det = c.fit.det;
      if (rel < options.det_rel_tol) break;
    }
    finals[f] = std::move(c);
  }

  int win = 0;
  for (int f = 1; f < n_final; ++f)
    if (better(finals[f], finals[win])) win = f;
  const Candidate& best = finals[win];
  if (!best.valid() || best.det <= 0.0)
    throw ExactFitError("fast_mcd: best subset covariance is singular");

  const double alpha = static_cast<double>(h) / static_cast<double>(n);
  const double q = transforms::chi2_quantile(alpha, static_cast<int>(d));
  const double factor = alpha / transforms::chi2_cdf(q, static_cast<int>(d) + 2);

  out.location = best.fit.location;
  out.scatter = factor * best.fit.cov;
  out.subset = best.fit.subset;
  out.raw_determinant = best.det;
  out.consistency_factor = factor;
  return out;
}

RobustCovResult fast_mcd(const DataMatrix& x, double h_fraction, std::uint64_t seed) {
  McdOptions o;
  o.h_fraction = h_fraction;
  return fast_mcd(x, seed, o);
}

WhitenedData whiten(const DataMatrix& x, const Vector& center, const Eigen::MatrixXd& scatter) {
  const Eigen::Index d = x.cols();
  if (scatter.rows() != d || scatter.cols() != d || center.size() != d)
    throw DimensionError("whiten: shape mismatch");
  require_finite(x, "whiten");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(scatter);
  if (es.info() != Eigen::Success) throw ConditioningError("whiten: eigendecomposition failed");
  const Vector ev = es.eigenvalues();
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (!(lo > 1e-10 * hi)) {
    std::ostringstream os;
    os << "whiten: scatter nearly singular, eigenvalue ratio " << (hi > 0.0 ? lo / hi : 0.0);
    throw ConditioningError(os.str());
  }
  WhitenedData w;
  w.whitening_matrix =
      es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  w.center = center;
  w.z = (x.rowwise() - center.transpose()) * w.whitening_matrix;
  return w;
}

}  // namespace rica::robustcov
