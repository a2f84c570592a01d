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

#include "rica/ica.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

#include "rica/distcorr.hpp"
#include "rica/optimizer.hpp"
#include "rica/rng.hpp"
#include "rica/transforms.hpp"

namespace rica::ica {

namespace {

constexpr double kBoxMargin = 1e-9;  // closes the half-open angle ranges for the solver
constexpr std::uint64_t kMcdStream = 100;
constexpr std::uint64_t kSweepStream = 200;

enum class Mode { rica, dcovica };

struct TermEvaluator {
  Mode mode;
  std::vector<transforms::BowlParams> bowl_by_dim;  // index p-1, rica mode only
  distcorr::Workspace ws;
  int n_threads = 1;

  static TermEvaluator make(Mode mode, int d, double level, int n_threads) {
    TermEvaluator t;
    t.mode = mode;
    t.n_threads = n_threads;
    if (mode == Mode::rica) {
      t.bowl_by_dim.reserve(d);
      for (int p = 1; p <= d; ++p)
        t.bowl_by_dim.push_back(transforms::BowlParams::for_dim(p, level));
    }
    return t;
  }

  // k-th objective term on sources S (1-based k).
  double term(const DataMatrix& s, int k, bool* degenerate = nullptr) {
    const Eigen::Index d = s.cols();
    const DataMatrix left = s.col(k - 1);
    const DataMatrix right = s.rightCols(d - k);
    if (mode == Mode::rica) {
      const DataMatrix bl = transforms::bowl_rows(left, bowl_by_dim[0]);
      const DataMatrix br = transforms::bowl_rows(right, bowl_by_dim[d - k - 1]);
      const distcorr::DependenceStats st = distcorr::dcor_n(bl, br, ws, n_threads);
      if (degenerate && (st.degenerate_x || st.degenerate_y)) *degenerate = true;
      return st.dcor;
    }
    // dCovICA minimizes the raw statistic as defined; the clamped value would
    // plateau at zero near independence.
    return distcorr::dcov_terms(left, right, ws, n_threads).value();
  }

  double full(const DataMatrix& z, const Eigen::MatrixXd& u, int* degenerate_count = nullptr) {
    const DataMatrix s = z * u.transpose();
    double sum = 0.0;
    for (int k = 1; k <= s.cols() - 1; ++k) {
      bool deg = false;
      sum += term(s, k, &deg);
      if (deg && degenerate_count) ++(*degenerate_count);
    }
    return sum;
  }
};

// Additive low-discrepancy sequence over the unit cube (generalized golden
// ratio), mapped onto the angle box.
std::vector<Vector> lattice_starts(const Vector& lower, const Vector& upper, int count) {
  const int m = static_cast<int>(lower.size());
  double phi = 1.3;
  for (int i = 0; i < 64; ++i) phi = std::pow(1.0 + phi, 1.0 / (m + 1));
  Vector alpha(m);
  double a = 1.0;
  for (int j = 0; j < m; ++j) {
    a /= phi;
    alpha(j) = a;
  }
  std::vector<Vector> pts(count, Vector(m));
  for (int t = 0; t < count; ++t)
    for (int j = 0; j < m; ++j) {
      const double frac = std::fmod((t + 0.5) * alpha(j), 1.0);
      pts[t](j) = lower(j) + frac * (upper(j) - lower(j));
    }
  return pts;
}

struct StageOutcome {
  Vector block;
  double value = 0.0;
};

StageOutcome optimize_stage(const DataMatrix& z, int k, const rotation::AngleVector& fixed,
                            const RicaConfig& cfg, TermEvaluator& ev) {
  const int d = fixed.dim();
  const int m = d - k;
  rotation::AngleVector work = fixed;
  // Later blocks do not affect term k; zero them for reproducible evaluations.
  for (int i = k + 1; i <= d - 1; ++i)
    for (int j = i + 1; j <= d; ++j) work.at(i, j) = 0.0;

  auto objective = [&](const Vector& beta) {
    for (int j = 0; j < m; ++j) work.flat()[work.block_offset(k) + j] = beta(j);
    const Eigen::MatrixXd u = rotation::compose(work);
    const DataMatrix s = z * u.transpose();
    return ev.term(s, k);
  };

  optimizer::OptProblem prob;
  prob.objective = objective;
  prob.lower = Vector::Zero(m);
  prob.upper = Vector::Constant(m, (k == 1 ? 2.0 * std::numbers::pi : std::numbers::pi) - kBoxMargin);
  prob.initial = Vector::Zero(m);
  prob.max_evals = cfg.opt.max_evals_per_var * m;
  prob.radius_init = cfg.opt.radius_init;
  prob.radius_final = cfg.opt.radius_final;

  const int n_starts = std::min(cfg.multistart.starts_per_var * m, cfg.multistart.max_starts);
  const std::vector<Vector> grid = lattice_starts(prob.lower, prob.upper, n_starts);
  std::vector<std::pair<double, int>> scored(grid.size());
  for (size_t t = 0; t < grid.size(); ++t) scored[t] = {objective(grid[t]), static_cast<int>(t)};
  std::sort(scored.begin(), scored.end());
  const int n_local = std::min<int>(cfg.multistart.local_starts, static_cast<int>(grid.size()));
  std::vector<Vector> starts;
  starts.reserve(n_local);
  for (int t = 0; t < n_local; ++t) starts.push_back(grid[scored[t].second]);

  const optimizer::OptResult r = optimizer::multistart_minimize(prob, starts);
  return {r.minimizer, r.objective_value};
}

// Column permutation of the current sources, folded into the separating
// matrix as an orthogonal factor with det +1 (sign bookkeeping on row 1).
Eigen::MatrixXd permutation_factor(const std::vector<int>& perm) {
  const int d = static_cast<int>(perm.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) p(i, perm[i]) = 1.0;
  if (p.determinant() < 0.0) p.row(0) *= -1.0;
  return p;
}

UnmixResult fit(const DataMatrix& x, const RicaConfig& cfg, Mode mode) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (d < 2) throw DimensionError("fit: need at least two columns");
  if (n < 2 * (d + 1)) throw DimensionError("fit: need n >= 2(d+1) rows");
  require_finite(x, "fit input");

  robustcov::WhitenedData w;
  if (mode == Mode::rica && cfg.use_mcd_whitening) {
    robustcov::McdOptions mcd_opts = cfg.mcd;
    mcd_opts.n_threads = cfg.n_threads;
    const robustcov::RobustCovResult mcd =
        robustcov::fast_mcd(x, derive_seed(cfg.seed, {kMcdStream}), mcd_opts);
    w = robustcov::whiten(x, mcd.location, mcd.scatter);
  } else {
    w = robustcov::whiten(x, x.colwise().mean().transpose(), robustcov::sample_covariance(x));
  }
  const DataMatrix& z = w.z;

  TermEvaluator ev =
      TermEvaluator::make(mode, static_cast<int>(d), cfg.bowl_level, cfg.n_threads);

  UnmixResult res;
  rotation::AngleVector theta(static_cast<int>(d));
  for (int k = 1; k <= d - 1; ++k) {
    const StageOutcome st = optimize_stage(z, k, theta, cfg, ev);
    for (int j = 0; j < d - k; ++j) theta.flat()[theta.block_offset(k) + j] = st.block(j);
    res.trace.push_back({"stage", 0, k, st.value});
  }
  Eigen::MatrixXd u_best = rotation::compose(theta);
  int degenerate = 0;
  double j_best = ev.full(z, u_best, &degenerate);
  res.trace.push_back({"full", 0, 0, j_best});
  rotation::AngleVector angles_best = theta;

  const int n_sweeps = cfg.sweeps < 0 ? static_cast<int>(d) + 1 : cfg.sweeps;
  Rng sweep_rng(derive_seed(cfg.seed, {kSweepStream}));
  for (int s = 1; s <= n_sweeps; ++s) {
    const Eigen::MatrixXd basis = permutation_factor(sweep_rng.permutation(static_cast<int>(d))) * u_best;
    const DataMatrix zp = z * basis.transpose();
    rotation::AngleVector phi(static_cast<int>(d));
    for (int k = 1; k <= d - 1; ++k) {
      const StageOutcome st = optimize_stage(zp, k, phi, cfg, ev);
      for (int j = 0; j < d - k; ++j) phi.flat()[phi.block_offset(k) + j] = st.block(j);
      res.trace.push_back({"stage", s, k, st.value});
    }
    const Eigen::MatrixXd u_cand = rotation::compose(phi) * basis;
    int deg_cand = 0;
    const double j_cand = ev.full(z, u_cand, &deg_cand);
    res.trace.push_back({"sweep", s, 0, j_cand});
    if (j_cand < j_best) {
      j_best = j_cand;
      u_best = u_cand;
      angles_best = phi;
      degenerate = deg_cand;
    }
  }

  res.separating = u_best;
  res.whitening_matrix = w.whitening_matrix;
  res.center = w.center;
  res.sources = z * u_best.transpose();
  res.unmixing = w.whitening_matrix * u_best.transpose();
  res.angles = angles_best;
  res.objective = j_best;
  res.degenerate_terms = degenerate;
  return res;
}

}  // namespace

double rica_objective(const rotation::AngleVector& angles, const DataMatrix& z) {
  if (z.cols() != angles.dim()) throw DimensionError("rica_objective: dimension mismatch");
  if (z.rows() < 3) throw DimensionError("rica_objective: need n >= 3");
  TermEvaluator ev = TermEvaluator::make(Mode::rica, angles.dim(), 0.9975, 1);
  return ev.full(z, rotation::compose(angles));
}

Vector rica_stage(const DataMatrix& z, int k, const rotation::AngleVector& fixed_angles,
                  const RicaConfig& config) {
  const int d = fixed_angles.dim();
  if (k < 1 || k > d - 1) throw ValidationError("rica_stage: stage index out of range");
  if (z.cols() != d) throw DimensionError("rica_stage: dimension mismatch");
  TermEvaluator ev = TermEvaluator::make(Mode::rica, d, config.bowl_level, config.n_threads);
  return optimize_stage(z, k, fixed_angles, config, ev).block;
}

UnmixResult rica_fit(const DataMatrix& x, const RicaConfig& config) {
  return fit(x, config, Mode::rica);
}

UnmixResult dcovica_fit(const DataMatrix& x, const RicaConfig& config) {
  RicaConfig cfg = config;
  if (cfg.sweeps < 0) cfg.sweeps = 0;  // baseline method has no sweep refinement
  return fit(x, cfg, Mode::dcovica);
}

}  // namespace rica::ica
