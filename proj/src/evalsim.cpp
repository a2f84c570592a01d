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

#include "rica/evalsim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "rica/io.hpp"

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace rica::evalsim {

namespace {

using Component = SourceSpec::Component;
using Family = SourceSpec::Family;

double analytic_mean(const SourceSpec& s) {
  switch (s.family) {
    case Family::student_t:
    case Family::laplace:
    case Family::uniform:
      return 0.0;
    case Family::exponential:
      return 1.0;  // raw exponential(1), shifted below
    case Family::laplace_mixture:
    case Family::gauss_mixture: {
      double m = 0.0;
      for (const Component& c : s.components) m += c.weight * c.location;
      return m;
    }
  }
  return 0.0;
}

double analytic_var(const SourceSpec& s) {
  switch (s.family) {
    case Family::student_t:
      return static_cast<double>(s.dof) / (s.dof - 2);
    case Family::laplace:
      return 2.0;
    case Family::uniform:
      return 1.0;  // on [-sqrt(3), sqrt(3)]
    case Family::exponential:
      return 1.0;
    case Family::laplace_mixture: {
      const double m = analytic_mean(s);
      double v = 0.0;
      for (const Component& c : s.components)
        v += c.weight * (2.0 * c.scale * c.scale + c.location * c.location);
      return v - m * m;
    }
    case Family::gauss_mixture: {
      const double m = analytic_mean(s);
      double v = 0.0;
      for (const Component& c : s.components)
        v += c.weight * (c.scale * c.scale + c.location * c.location);
      return v - m * m;
    }
  }
  return 1.0;
}

SourceSpec make_spec(char key, Family family, int dof, std::vector<Component> comps,
                     const std::string& description) {
  SourceSpec s;
  s.key = key;
  s.family = family;
  s.dof = dof;
  s.components = std::move(comps);
  s.description = description;
  s.shift = analytic_mean(s);
  s.scale = std::sqrt(analytic_var(s));
  return s;
}

std::vector<SourceSpec> build_catalogue() {
  std::vector<SourceSpec> cat;
  cat.push_back(make_spec('a', Family::student_t, 3, {}, "Student t, 3 dof"));
  cat.push_back(make_spec('b', Family::laplace, 0, {{1, 0, 1}}, "double exponential, scale 1"));
  cat.push_back(make_spec('c', Family::uniform, 0, {}, "uniform on [-sqrt(3), sqrt(3)]"));
  cat.push_back(make_spec('d', Family::student_t, 5, {}, "Student t, 5 dof"));
  cat.push_back(make_spec('e', Family::exponential, 0, {}, "exponential(1), shifted to mean 0"));
  cat.push_back(make_spec('f', Family::laplace_mixture, 0,
                          {{0.5, -1.5, 0.5}, {0.5, 1.5, 0.5}},
                          "mixture of two double exponentials at -+1.5, scale 0.5"));
  cat.push_back(make_spec('g', Family::gauss_mixture, 0, {{0.5, -1.0, 0.3}, {0.5, 1.0, 0.3}},
                          "symmetric 2-Gaussian mixture, multimodal: N(-+1, 0.3^2)"));
  cat.push_back(make_spec('h', Family::gauss_mixture, 0, {{0.5, -1.0, 0.8}, {0.5, 1.0, 0.8}},
                          "symmetric 2-Gaussian mixture, transitional: N(-+1, 0.8^2)"));
  cat.push_back(make_spec('i', Family::gauss_mixture, 0, {{0.5, -0.5, 1.0}, {0.5, 0.5, 1.0}},
                          "symmetric 2-Gaussian mixture, unimodal: N(-+0.5, 1)"));
  cat.push_back(make_spec('j', Family::gauss_mixture, 0, {{0.6, -1.0, 0.35}, {0.4, 1.4, 0.35}},
                          "asymmetric 2-Gaussian mixture, multimodal: "
                          "0.6 N(-1, 0.35^2) + 0.4 N(1.4, 0.35^2)"));
  cat.push_back(make_spec('k', Family::gauss_mixture, 0, {{0.6, -0.7, 0.7}, {0.4, 1.2, 0.6}},
                          "asymmetric 2-Gaussian mixture, transitional: "
                          "0.6 N(-0.7, 0.7^2) + 0.4 N(1.2, 0.6^2)"));
  cat.push_back(make_spec('l', Family::gauss_mixture, 0, {{0.75, -0.3, 1.0}, {0.25, 1.0, 0.5}},
                          "asymmetric 2-Gaussian mixture, unimodal: "
                          "0.75 N(-0.3, 1) + 0.25 N(1, 0.5^2)"));
  cat.push_back(make_spec('m', Family::gauss_mixture, 0,
                          {{0.25, -2.2, 0.25}, {0.25, -0.8, 0.25}, {0.25, 0.8, 0.25}, {0.25, 2.2, 0.25}},
                          "symmetric 4-Gaussian mixture, multimodal: "
                          "equal weights at -+0.8, -+2.2, sd 0.25"));
  cat.push_back(make_spec('n', Family::gauss_mixture, 0,
                          {{0.25, -1.5, 0.55}, {0.25, -0.5, 0.55}, {0.25, 0.5, 0.55}, {0.25, 1.5, 0.55}},
                          "symmetric 4-Gaussian mixture, transitional: "
                          "equal weights at -+0.5, -+1.5, sd 0.55"));
  cat.push_back(make_spec('o', Family::gauss_mixture, 0,
                          {{0.25, -1.05, 1.0}, {0.25, -0.35, 1.0}, {0.25, 0.35, 1.0}, {0.25, 1.05, 1.0}},
                          "symmetric 4-Gaussian mixture, unimodal: "
                          "equal weights at -+0.35, -+1.05, sd 1"));
  cat.push_back(make_spec('p', Family::gauss_mixture, 0,
                          {{0.4, -1.8, 0.25}, {0.25, -0.4, 0.3}, {0.2, 0.9, 0.25}, {0.15, 2.1, 0.3}},
                          "asymmetric 4-Gaussian mixture, multimodal: weights "
                          "(0.4, 0.25, 0.2, 0.15) at (-1.8, -0.4, 0.9, 2.1), sd (0.25, 0.3, 0.25, 0.3)"));
  cat.push_back(make_spec('q', Family::gauss_mixture, 0,
                          {{0.35, -1.4, 0.6}, {0.3, -0.3, 0.5}, {0.2, 0.8, 0.5}, {0.15, 1.9, 0.55}},
                          "asymmetric 4-Gaussian mixture, transitional: weights "
                          "(0.35, 0.3, 0.2, 0.15) at (-1.4, -0.3, 0.8, 1.9), sd (0.6, 0.5, 0.5, 0.55)"));
  cat.push_back(make_spec('r', Family::gauss_mixture, 0,
                          {{0.4, -0.7, 0.9}, {0.3, 0.0, 0.8}, {0.2, 0.6, 0.7}, {0.1, 1.4, 0.6}},
                          "asymmetric 4-Gaussian mixture, unimodal: weights "
                          "(0.4, 0.3, 0.2, 0.1) at (-0.7, 0, 0.6, 1.4), sd (0.9, 0.8, 0.7, 0.6)"));
  return cat;
}

int pick_component(const std::vector<Component>& comps, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (size_t i = 0; i < comps.size(); ++i) {
    acc += comps[i].weight;
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(comps.size()) - 1;
}

}  // namespace

double SourceSpec::sample(Rng& rng) const {
  double raw = 0.0;
  switch (family) {
    case Family::student_t:
      raw = rng.student_t(dof);
      break;
    case Family::laplace:
      raw = rng.laplace(1.0);
      break;
    case Family::uniform:
      raw = rng.uniform(-std::sqrt(3.0), std::sqrt(3.0));
      break;
    case Family::exponential:
      raw = rng.exponential();
      break;
    case Family::laplace_mixture: {
      const Component& c = components[pick_component(components, rng)];
      raw = c.location + rng.laplace(c.scale);
      break;
    }
    case Family::gauss_mixture: {
      const Component& c = components[pick_component(components, rng)];
      raw = rng.normal(c.location, c.scale);
      break;
    }
  }
  return (raw - shift) / scale;
}

const std::vector<SourceSpec>& catalogue() {
  static const std::vector<SourceSpec> cat = build_catalogue();
  return cat;
}

const SourceSpec& source_by_key(char key) {
  for (const SourceSpec& s : catalogue())
    if (s.key == key) return s;
  throw ValidationError(std::string("unknown source distribution key '") + key + "'");
}

DataMatrix sample_sources(const std::vector<char>& keys, int n, Rng& rng) {
  if (n < 2) throw DimensionError("sample_sources: need n >= 2");
  const int d = static_cast<int>(keys.size());
  DataMatrix s(n, d);
  for (int j = 0; j < d; ++j) {
    const SourceSpec& spec = source_by_key(keys[j]);
    for (int i = 0; i < n; ++i) s(i, j) = spec.sample(rng);
    const double mean = s.col(j).mean();
    const double sd = std::sqrt((s.col(j).array() - mean).square().sum() / (n - 1));
    if (sd > 0.0) s.col(j) /= sd;
  }
  return s;
}

double amari_error(const Eigen::MatrixXd& p) {
  const Eigen::Index d = p.rows();
  if (d < 2 || p.cols() != d) throw DimensionError("amari_error: need a square matrix, d >= 2");
  require_finite(p, "amari_error");
  const Eigen::MatrixXd a = p.cwiseAbs();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double row_max = a.row(i).maxCoeff();
    if (row_max <= 0.0) throw ValidationError("amari_error: all-zero row");
    sum += a.row(i).sum() / row_max - 1.0;
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    const double col_max = a.col(j).maxCoeff();
    if (col_max <= 0.0) throw ValidationError("amari_error: all-zero column");
    sum += a.col(j).sum() / col_max - 1.0;
  }
  return sum / (2.0 * static_cast<double>(d) * static_cast<double>(d - 1));
}

Eigen::MatrixXd random_mixing_matrix(int d, std::uint64_t seed) {
  if (d < 2) throw ValidationError("random_mixing_matrix: need d >= 2");
  Rng rng(seed);
  Eigen::MatrixXd a(d, d);
  for (long draw = 0; draw < 1000000; ++draw) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = rng.normal();
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    const double cond = svd.singularValues()(0) / svd.singularValues()(d - 1);
    if (cond <= 2.0) return a;
  }
  throw GenerationError("random_mixing_matrix: rejection sampling exhausted its draw budget");
}

std::string to_string(ContaminationSpec::Kind kind) {
  switch (kind) {
    case ContaminationSpec::Kind::none: return "none";
    case ContaminationSpec::Kind::clustered: return "clustered";
    case ContaminationSpec::Kind::multiplicative: return "multiplicative";
    case ContaminationSpec::Kind::increasing: return "increasing";
  }
  return "none";
}

ContaminationSpec::Kind contamination_kind_from_string(const std::string& name) {
  if (name == "none") return ContaminationSpec::Kind::none;
  if (name == "clustered") return ContaminationSpec::Kind::clustered;
  if (name == "multiplicative") return ContaminationSpec::Kind::multiplicative;
  if (name == "increasing") return ContaminationSpec::Kind::increasing;
  throw ValidationError("unknown contamination kind '" + name + "'");
}

namespace {

void check_fraction(double fraction) {
  if (!(fraction >= 0.0 && fraction <= 0.5))
    throw ValidationError("contamination fraction must lie in [0, 0.5]");
}

}  // namespace

DataMatrix contaminate_clustered(const DataMatrix& s, double fraction, std::uint64_t seed) {
  check_fraction(fraction);
  const int n = static_cast<int>(s.rows());
  const int d = static_cast<int>(s.cols());
  const int m = static_cast<int>(std::floor(fraction * n));
  DataMatrix out = s;
  if (m == 0) return out;
  Rng rng(seed);
  const std::vector<int> rows = rng.sample_without_replacement(n, m);
  for (int i : rows)
    for (int j = 0; j < d; ++j) out(i, j) = rng.normal(15.0, 1.0);
  return out;
}

DataMatrix contaminate_multiplicative(const DataMatrix& s, double fraction, std::uint64_t seed,
                                      bool per_column_choice) {
  check_fraction(fraction);
  const int n = static_cast<int>(s.rows());
  const int d = static_cast<int>(s.cols());
  const int m = static_cast<int>(std::floor(fraction * n));
  DataMatrix out = s;
  if (m == 0) return out;
  const Eigen::RowVectorXd col_min = s.colwise().minCoeff();
  const Eigen::RowVectorXd col_max = s.colwise().maxCoeff();
  Rng rng(seed);
  const std::vector<int> rows = rng.sample_without_replacement(n, m);
  Eigen::RowVectorXd u(d);
  for (int i : rows) {
    do {
      for (int j = 0; j < d; ++j) u(j) = rng.uniform();
    } while (u.sum() <= 1.0);
    if (per_column_choice) {
      for (int j = 0; j < d; ++j) {
        const double extreme = rng.uniform() < 0.5 ? col_max(j) : col_min(j);
        out(i, j) = u(j) * d * extreme;
      }
    } else {
      const bool use_max = rng.uniform() < 0.5;
      for (int j = 0; j < d; ++j) out(i, j) = u(j) * d * (use_max ? col_max(j) : col_min(j));
    }
  }
  return out;
}

DataMatrix contaminate_increasing(const DataMatrix& s, int count, std::uint64_t seed) {
  const int n = static_cast<int>(s.rows());
  const int d = static_cast<int>(s.cols());
  if (count < 0 || count > static_cast<int>(0.2 * n))
    throw ValidationError("contaminate_increasing: count must lie in [0, 0.2n]");
  DataMatrix out = s;
  if (count == 0) return out;
  Rng rng(seed);
  const std::vector<int> rows = rng.sample_without_replacement(n, count);
  for (int i : rows) {
    const int j = rng.uniform_int(d);
    out(i, j) = rng.uniform() < 0.5 ? -5.0 : 5.0;
  }
  return out;
}

DataMatrix contaminate(const DataMatrix& s, const ContaminationSpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case ContaminationSpec::Kind::none:
      return s;
    case ContaminationSpec::Kind::clustered:
      return contaminate_clustered(s, spec.fraction, seed);
    case ContaminationSpec::Kind::multiplicative:
      return contaminate_multiplicative(s, spec.fraction, seed, spec.per_column_choice);
    case ContaminationSpec::Kind::increasing:
      return contaminate_increasing(
          s, static_cast<int>(std::floor(spec.fraction * static_cast<double>(s.rows()))), seed);
  }
  return s;
}

std::vector<TrialResult> run_benchmark(const BenchConfig& config) {
  if (config.replications < 0) throw ValidationError("run_benchmark: negative replications");
  if (config.d < 2) throw ValidationError("run_benchmark: need d >= 2");
  if (config.methods.empty()) throw ValidationError("run_benchmark: no methods");
  for (const std::string& m : config.methods)
    if (m != "rica" && m != "dcovica")
      throw ValidationError("run_benchmark: unknown method '" + m + "'");
  std::vector<char> dists = config.distributions;
  if (dists.empty())
    for (const SourceSpec& s : catalogue()) dists.push_back(s.key);
  for (char k : dists) (void)source_by_key(k);

  const int n_dists = static_cast<int>(dists.size());
  const int n_methods = static_cast<int>(config.methods.size());
  const int n_tasks = n_dists * config.replications;
  std::vector<TrialResult> results(static_cast<size_t>(n_tasks) * n_methods);

  int pool = config.n_threads;
#if defined(_OPENMP)
  if (pool <= 0) pool = omp_get_max_threads();
#else
  pool = 1;
#endif

#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic) num_threads(pool)
#endif
  for (int task = 0; task < n_tasks; ++task) {
    const int di = task / config.replications;
    const int rep = task % config.replications;
    const std::uint64_t trial_seed = derive_seed(config.seed, {2, (std::uint64_t)di, (std::uint64_t)rep});
    Rng gen(trial_seed);
    const std::vector<char> keys(config.d, dists[di]);
    DataMatrix s, x;
    Eigen::MatrixXd a;
    std::string gen_error;
    try {
      s = sample_sources(keys, config.n, gen);
      s = contaminate(s, config.contamination, derive_seed(trial_seed, {3}));
      a = random_mixing_matrix(config.d, derive_seed(trial_seed, {4}));
      x = s * a.transpose();
    } catch (const Error& e) {
      gen_error = e.what();
    }
    for (int mi = 0; mi < n_methods; ++mi) {
      TrialResult& tr = results[static_cast<size_t>(task) * n_methods + mi];
      tr.method = config.methods[mi];
      tr.distribution = dists[di];
      tr.contamination = to_string(config.contamination.kind);
      tr.d = config.d;
      tr.n = config.n;
      tr.seed = trial_seed;
      if (!gen_error.empty()) {
        tr.amari = std::numeric_limits<double>::quiet_NaN();
        tr.error = gen_error;
        continue;
      }
      ica::RicaConfig fit_cfg = config.base;
      fit_cfg.seed = derive_seed(trial_seed, {5, (std::uint64_t)mi});
      fit_cfg.n_threads = 1;  // the harness parallelizes across trials, never inside a fit
      if (tr.method == "dcovica" && config.dcovica_sweeps >= 0)
        fit_cfg.sweeps = config.dcovica_sweeps;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const ica::UnmixResult fit = tr.method == "rica" ? ica::rica_fit(x, fit_cfg)
                                                         : ica::dcovica_fit(x, fit_cfg);
        tr.amari = amari_error(fit.unmixing.transpose() * a);
      } catch (const Error& e) {
        tr.amari = std::numeric_limits<double>::quiet_NaN();
        tr.error = e.what();
      }
      const auto t1 = std::chrono::steady_clock::now();
      tr.runtime_seconds = std::chrono::duration<double>(t1 - t0).count();
    }
  }
  return results;
}

void write_trials_csv(std::ostream& os, const std::vector<TrialResult>& trials) {
  os << "method,distribution,contamination,d,n,seed,amari,runtime_seconds\n";
  for (const TrialResult& t : trials) {
    os << t.method << ',' << t.distribution << ',' << t.contamination << ',' << t.d << ','
       << t.n << ',' << t.seed << ',' << io::format_double(t.amari) << ','
       << io::format_double(t.runtime_seconds) << '\n';
  }
}

namespace {

struct SummaryCell {
  double sum = 0.0;
  int count = 0;
  int failed = 0;
};

using SummaryGrid = std::map<char, std::map<std::string, SummaryCell>>;

SummaryGrid summarize(const std::vector<TrialResult>& trials, std::vector<std::string>& methods) {
  SummaryGrid grid;
  for (const TrialResult& t : trials) {
    if (std::find(methods.begin(), methods.end(), t.method) == methods.end())
      methods.push_back(t.method);
    SummaryCell& c = grid[t.distribution][t.method];
    if (t.error.empty() && std::isfinite(t.amari)) {
      c.sum += t.amari;
      ++c.count;
    } else {
      ++c.failed;
    }
  }
  return grid;
}

}  // namespace

void write_summary_csv(std::ostream& os, const std::vector<TrialResult>& trials) {
  std::vector<std::string> methods;
  const SummaryGrid grid = summarize(trials, methods);
  os << "distribution";
  for (const std::string& m : methods) os << ',' << m;
  os << '\n';
  std::map<std::string, SummaryCell> total;
  for (const auto& [key, row] : grid) {
    os << key;
    for (const std::string& m : methods) {
      const auto it = row.find(m);
      if (it != row.end() && it->second.count > 0) {
        os << ',' << io::format_double(100.0 * it->second.sum / it->second.count);
        total[m].sum += it->second.sum;
        total[m].count += it->second.count;
      } else {
        os << ',';
      }
    }
    os << '\n';
  }
  os << "mean";
  for (const std::string& m : methods) {
    const SummaryCell& c = total[m];
    if (c.count > 0)
      os << ',' << io::format_double(100.0 * c.sum / c.count);
    else
      os << ',';
  }
  os << '\n';
}

std::string format_summary_table(const std::vector<TrialResult>& trials) {
  std::vector<std::string> methods;
  const SummaryGrid grid = summarize(trials, methods);
  std::ostringstream os;
  os << "Amari error (x100), mean per distribution\n";
  os << "dist";
  for (const std::string& m : methods) {
    os << "  ";
    os.width(12);
    os << m;
  }
  os << '\n';
  std::map<std::string, SummaryCell> total;
  char buf[64];
  for (const auto& [key, row] : grid) {
    os << "   " << key;
    for (const std::string& m : methods) {
      const auto it = row.find(m);
      if (it != row.end() && it->second.count > 0) {
        std::snprintf(buf, sizeof buf, "%12.2f", 100.0 * it->second.sum / it->second.count);
        os << "  " << buf;
        total[m].sum += it->second.sum;
        total[m].count += it->second.count;
      } else {
        os << "  " << "           -";
      }
    }
    os << '\n';
  }
  os << "mean";
  for (const std::string& m : methods) {
    const SummaryCell& c = total[m];
    if (c.count > 0) {
      std::snprintf(buf, sizeof buf, "%12.2f", 100.0 * c.sum / c.count);
      os << "  " << buf;
    } else {
      os << "  " << "           -";
    }
  }
  os << '\n';
  return os.str();
}

}  // namespace rica::evalsim
