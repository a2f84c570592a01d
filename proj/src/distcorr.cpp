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

#include "rica/distcorr.hpp"

#include <cmath>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace rica::distcorr {

namespace {

// Fill the pairwise Euclidean distance matrix. xt is p x n (one observation
// per column) so the inner loop touches contiguous memory.
void pairwise_distances(const Eigen::MatrixXd& xt, Eigen::MatrixXd& out, int n_threads) {
  const Eigen::Index n = xt.cols();
  const Eigen::Index p = xt.rows();
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 16) num_threads(n_threads > 0 ? n_threads : 1)
#endif
  for (Eigen::Index i = 0; i < n; ++i) {
    out(i, i) = 0.0;
    const double* xi = xt.col(i).data();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double* xj = xt.col(j).data();
      double s = 0.0;
      for (Eigen::Index k = 0; k < p; ++k) {
        const double d = xi[k] - xj[k];
        s += d * d;
      }
      const double dist = std::sqrt(s);
      out(i, j) = dist;
      out(j, i) = dist;
    }
  }
}

struct KernelSums {
  double s_a = 0.0, s_b = 0.0;        // sum over i != j of a_ij, b_ij
  double s_ab = 0.0;                  // sum over i != j of a_ij b_ij
  double s_aa = 0.0, s_bb = 0.0;      // squared versions
  double rr_ab = 0.0;                 // sum_i row_a[i] row_b[i]
  double rr_aa = 0.0, rr_bb = 0.0;
};

// Per-row partials in parallel, serial combine over rows: the totals do not
// depend on thread count or schedule.
KernelSums reduce(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Workspace& ws,
                  int n_threads) {
  const Eigen::Index n = a.rows();
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) num_threads(n_threads > 0 ? n_threads : 1)
#endif
  for (Eigen::Index i = 0; i < n; ++i) {
    double ra = 0.0, rb = 0.0, ab = 0.0, aa = 0.0, bb = 0.0;
    const double* arow = a.data() + i * n;  // column i == row i by symmetry
    const double* brow = b.data() + i * n;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double av = arow[j];
      const double bv = brow[j];
      ra += av;
      rb += bv;
      ab += av * bv;
      aa += av * av;
      bb += bv * bv;
    }
    ws.row_a[i] = ra;
    ws.row_b[i] = rb;
    ws.pab[i] = ab;
    ws.paa[i] = aa;
    ws.pbb[i] = bb;
  }
  KernelSums s;
  for (Eigen::Index i = 0; i < n; ++i) {
    s.s_a += ws.row_a[i];
    s.s_b += ws.row_b[i];
    s.s_ab += ws.pab[i];
    s.s_aa += ws.paa[i];
    s.s_bb += ws.pbb[i];
    s.rr_ab += ws.row_a[i] * ws.row_b[i];
    s.rr_aa += ws.row_a[i] * ws.row_a[i];
    s.rr_bb += ws.row_b[i] * ws.row_b[i];
  }
  return s;
}

DcovTerms terms_from_sums(double s_a, double s_b, double s_ab, double rr_ab, Eigen::Index n) {
  const double dn = static_cast<double>(n);
  DcovTerms t;
  t.t1 = s_ab / (dn * (dn - 1.0));
  t.t2 = (s_a / (dn * (dn - 1.0))) * (s_b / (dn * (dn - 1.0)));
  t.t3 = 2.0 * (rr_ab - s_ab) / (dn * (dn - 1.0) * (dn - 2.0));
  return t;
}

struct TripleStats {
  DcovTerms ab, aa, bb;
};

TripleStats all_terms(const DataMatrix& x, const DataMatrix& y, Workspace& ws, int n_threads) {
  validate_pair(x, y);
  const Eigen::Index n = x.rows();
  ws.resize(n);
  Eigen::MatrixXd xt = x.transpose();
  Eigen::MatrixXd yt = y.transpose();
  pairwise_distances(xt, ws.ax, n_threads);
  pairwise_distances(yt, ws.ay, n_threads);
  const KernelSums s = reduce(ws.ax, ws.ay, ws, n_threads);
  TripleStats out;
  out.ab = terms_from_sums(s.s_a, s.s_b, s.s_ab, s.rr_ab, n);
  out.aa = terms_from_sums(s.s_a, s.s_a, s.s_aa, s.rr_aa, n);
  out.bb = terms_from_sums(s.s_b, s.s_b, s.s_bb, s.rr_bb, n);
  return out;
}

double clamp0(double v) { return v > 0.0 ? v : 0.0; }

DependenceStats stats_from(const TripleStats& t) {
  DependenceStats s;
  s.raw_dcov = t.ab.value();
  s.raw_dvar_x = t.aa.value();
  s.raw_dvar_y = t.bb.value();
  s.dcov = clamp0(s.raw_dcov);
  s.dvar_x = clamp0(s.raw_dvar_x);
  s.dvar_y = clamp0(s.raw_dvar_y);
  s.degenerate_x = s.dvar_x < kDegeneracyTol;
  s.degenerate_y = s.dvar_y < kDegeneracyTol;
  if (s.degenerate_x || s.degenerate_y) {
    s.dcor = 0.0;
  } else {
    const double r = s.dcov / std::sqrt(s.dvar_x * s.dvar_y);
    s.dcor = r < 0.0 ? 0.0 : (r > 1.0 ? 1.0 : r);
  }
  return s;
}

}  // namespace

void Workspace::resize(Eigen::Index n) {
  if (ax.rows() != n) {
    ax.resize(n, n);
    ay.resize(n, n);
    row_a.resize(n);
    row_b.resize(n);
    pab.resize(n);
    paa.resize(n);
    pbb.resize(n);
  }
}

void validate_pair(const DataMatrix& x, const DataMatrix& y) {
  if (x.rows() != y.rows())
    throw DimensionError("distcorr: samples must share the same number of rows");
  if (x.rows() < 3) throw DimensionError("distcorr: need n >= 3 observations");
  require_finite(x, "distcorr x");
  require_finite(y, "distcorr y");
}

DcovTerms dcov_terms(const DataMatrix& x, const DataMatrix& y, Workspace& ws, int n_threads) {
  return all_terms(x, y, ws, n_threads).ab;
}

DcovTerms dcov_terms_bruteforce(const DataMatrix& x, const DataMatrix& y) {
  validate_pair(x, y);
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd a(n, n), b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = 0.0;
    b(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      a(i, j) = a(j, i) = (x.row(i) - x.row(j)).norm();
      b(i, j) = b(j, i) = (y.row(i) - y.row(j)).norm();
    }
  }
  const double dn = static_cast<double>(n);
  const double c2 = dn * (dn - 1.0) / 2.0;
  const double c3 = dn * (dn - 1.0) * (dn - 2.0) / 6.0;
  double t1 = 0.0, sa = 0.0, sb = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      t1 += a(i, j) * b(i, j);
      sa += a(i, j);
      sb += b(i, j);
    }
  double t3 = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      for (Eigen::Index k = j + 1; k < n; ++k) {
        t3 += a(i, j) * b(i, k) + a(i, k) * b(i, j) + a(i, j) * b(j, k) + a(j, k) * b(i, j) +
              a(i, k) * b(j, k) + a(j, k) * b(i, k);
      }
  DcovTerms t;
  t.t1 = t1 / c2;
  t.t2 = (sa / c2) * (sb / c2);
  t.t3 = t3 / (3.0 * c3);
  return t;
}

double dcov_n(const DataMatrix& x, const DataMatrix& y, int n_threads) {
  Workspace ws;
  return clamp0(dcov_terms(x, y, ws, n_threads).value());
}

double dcov_n_bruteforce(const DataMatrix& x, const DataMatrix& y) {
  return clamp0(dcov_terms_bruteforce(x, y).value());
}

double dvar_n(const DataMatrix& x, int n_threads) { return dcov_n(x, x, n_threads); }

DependenceStats dcor_n(const DataMatrix& x, const DataMatrix& y, Workspace& ws, int n_threads) {
  return stats_from(all_terms(x, y, ws, n_threads));
}

DependenceStats dcor_n(const DataMatrix& x, const DataMatrix& y, int n_threads) {
  Workspace ws;
  return dcor_n(x, y, ws, n_threads);
}

}  // namespace rica::distcorr
