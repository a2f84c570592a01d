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

#include "rica/optimizer.hpp"

#include <cmath>
#include <sstream>

namespace rica::optimizer {

namespace {

struct BudgetExhausted {};

std::string point_to_string(const Vector& x) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x(i);
  os << ")";
  return os.str();
}

class Evaluator {
 public:
  Evaluator(const OptProblem& p, int max_evals) : p_(p), max_evals_(max_evals) {}

  double operator()(const Vector& x) {
    if (count_ >= max_evals_) throw BudgetExhausted{};
    const double f = p_.objective(x);
    ++count_;
    if (!std::isfinite(f))
      throw ObjectiveError("optimizer: objective returned a non-finite value at " +
                           point_to_string(x));
    if (!has_best_ || f < best_f_) {
      has_best_ = true;
      best_f_ = f;
      best_x_ = x;
    }
    return f;
  }

  int count() const { return count_; }
  double best_f() const { return best_f_; }
  const Vector& best_x() const { return best_x_; }

 private:
  const OptProblem& p_;
  int max_evals_;
  int count_ = 0;
  bool has_best_ = false;
  double best_f_ = 0.0;
  Vector best_x_;
};

void validate(const OptProblem& p) {
  const Eigen::Index m = p.initial.size();
  if (m < 1 || p.lower.size() != m || p.upper.size() != m)
    throw ValidationError("optimizer: inconsistent problem dimensions");
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!(p.lower(i) < p.upper(i)))
      throw ValidationError("optimizer: lower bound must be strictly below upper bound");
    if (p.initial(i) < p.lower(i) || p.initial(i) > p.upper(i))
      throw ValidationError("optimizer: initial point outside the box");
  }
  if (!(p.radius_final < p.radius_init) || !(p.radius_final > 0.0))
    throw ValidationError("optimizer: need 0 < radius_final < radius_init");
  if (!p.objective) throw ValidationError("optimizer: missing objective");
}

// Exact minimization of q(p) = g.p + p'Hp/2 over a box around the origin by
// cyclic coordinate descent; each coordinate solve is closed-form.
Vector solve_box_quadratic(const Vector& g, const Eigen::MatrixXd& h, const Vector& lo,
                           const Vector& hi) {
  const Eigen::Index m = g.size();
  Vector p = Vector::Zero(m);
  for (int sweep = 0; sweep < 120; ++sweep) {
    double max_move = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      double lin = g(i);
      for (Eigen::Index j = 0; j < m; ++j)
        if (j != i) lin += h(i, j) * p(j);
      double t;
      if (h(i, i) > 1e-14) {
        t = -lin / h(i, i);
        t = std::min(std::max(t, lo(i)), hi(i));
      } else {
        // Non-convex or flat direction: pick the better end of the interval.
        const double q_lo = lin * lo(i) + 0.5 * h(i, i) * lo(i) * lo(i);
        const double q_hi = lin * hi(i) + 0.5 * h(i, i) * hi(i) * hi(i);
        t = q_lo <= q_hi ? lo(i) : hi(i);
      }
      max_move = std::max(max_move, std::abs(t - p(i)));
      p(i) = t;
    }
    if (max_move < 1e-14) break;
  }
  return p;
}

}  // namespace

OptResult minimize(const OptProblem& problem) {
  validate(problem);
  const Eigen::Index m = problem.initial.size();
  const int max_evals = problem.max_evals > 0 ? problem.max_evals : 100 * static_cast<int>(m);
  if (max_evals < static_cast<int>(m) + 2)
    throw ValidationError("optimizer: max_evals must be at least dimension + 2");

  Evaluator eval(problem, max_evals);
  StopReason reason = StopReason::radius;

  try {
    Vector c = problem.initial;
    double fc = eval(c);
    double delta = problem.radius_init;
    const double delta_max = 16.0 * problem.radius_init;

    Vector g(m), step_sign(m), offset_f(m);
    Eigen::MatrixXd hess(m, m);

    while (delta >= problem.radius_final) {
      // Quadratic interpolation model on a stencil of radius h.
      const double h = delta;
      for (Eigen::Index i = 0; i < m; ++i) {
        const double room_up = problem.upper(i) - c(i);
        const double room_dn = c(i) - problem.lower(i);
        if (room_up >= h && room_dn >= h) {
          Vector xp = c, xm = c;
          xp(i) += h;
          xm(i) -= h;
          const double fp = eval(xp);
          const double fm = eval(xm);
          g(i) = (fp - fm) / (2.0 * h);
          hess(i, i) = (fp - 2.0 * fc + fm) / (h * h);
          step_sign(i) = h;
          offset_f(i) = fp;
        } else {
          // One-sided stencil along the roomier direction.
          const double dir = room_up >= room_dn ? 1.0 : -1.0;
          const double room = std::max(room_up, room_dn);
          const double s = dir * std::min(h, room / 2.0);
          Vector x1 = c, x2 = c;
          x1(i) += s;
          x2(i) += 2.0 * s;
          const double f1 = eval(x1);
          const double f2 = eval(x2);
          g(i) = (-3.0 * fc + 4.0 * f1 - f2) / (2.0 * s);
          hess(i, i) = (f2 - 2.0 * f1 + fc) / (s * s);
          step_sign(i) = s;
          offset_f(i) = f1;
        }
      }
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i + 1; j < m; ++j) {
          Vector x = c;
          x(i) += step_sign(i);
          x(j) += step_sign(j);
          const double fij = eval(x);
          const double hij = (fij - offset_f(i) - offset_f(j) + fc) / (step_sign(i) * step_sign(j));
          hess(i, j) = hij;
          hess(j, i) = hij;
        }
      }

      // Model step within trust radius and box.
      Vector lo(m), hi(m);
      for (Eigen::Index i = 0; i < m; ++i) {
        lo(i) = std::max(problem.lower(i) - c(i), -delta);
        hi(i) = std::min(problem.upper(i) - c(i), delta);
      }
      const Vector p = solve_box_quadratic(g, hess, lo, hi);
      const double pred = -(g.dot(p) + 0.5 * p.dot(hess * p));
      if (!(pred > 1e-13 * std::max(1.0, std::abs(fc)))) {
        delta *= 0.5;
        continue;
      }
      const Vector cand = c + p;
      const double f_new = eval(cand);
      const double rho = (fc - f_new) / pred;
      if (rho >= 0.1) {
        c = cand;
        fc = f_new;
        if (rho >= 0.7 && p.lpNorm<Eigen::Infinity>() >= 0.9 * delta)
          delta = std::min(2.0 * delta, delta_max);
      } else {
        delta *= 0.5;
      }
    }
  } catch (const BudgetExhausted&) {
    reason = StopReason::eval_budget;
  }

  OptResult r;
  r.minimizer = eval.best_x();
  r.objective_value = eval.best_f();
  r.evaluations = eval.count();
  r.converged_by = reason;
  return r;
}

OptResult multistart_minimize(const OptProblem& problem, const std::vector<Vector>& starts) {
  if (starts.empty()) throw ValidationError("multistart_minimize: no starts given");
  for (const Vector& s : starts) {
    if (s.size() != problem.lower.size())
      throw ValidationError("multistart_minimize: start dimension mismatch");
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) < problem.lower(i) || s(i) > problem.upper(i))
        throw ValidationError("multistart_minimize: start outside the box");
  }
  OptResult best;
  bool have = false;
  int total_evals = 0;
  for (const Vector& s : starts) {
    OptProblem sub = problem;
    sub.initial = s;
    OptResult r = minimize(sub);
    total_evals += r.evaluations;
    if (!have || r.objective_value < best.objective_value) {
      best = r;
      have = true;
    }
  }
  best.evaluations = total_evals;
  return best;
}

}  // namespace rica::optimizer
