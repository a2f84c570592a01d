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
#include "rica/ica.hpp"
#include "rica/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace rica::evalsim {

/// One entry of the 18-distribution benchmark catalogue (keys 'a'..'r').
/// Families and parameters are recorded in `description`; `shift` and
/// `scale` standardize the raw family to zero mean, unit variance.
struct SourceSpec {
  enum class Family { student_t, laplace, uniform, exponential, laplace_mixture, gauss_mixture };
  struct Component {
    double weight = 1.0;
    double location = 0.0;
    double scale = 1.0;  // sd for Gaussian components, b for Laplace
  };

  char key = '?';
  std::string description;
  Family family = Family::student_t;
  int dof = 0;
  std::vector<Component> components;
  double shift = 0.0;
  double scale = 1.0;

  double sample(Rng& rng) const;
};

/// The benchmark catalogue: Student t (3, 5 dof), double exponential,
/// uniform, shifted exponential, a double-exponential mixture, and symmetric/
/// asymmetric Gaussian mixtures of two and four components spanning
/// multimodal, transitional, and unimodal shapes.
const std::vector<SourceSpec>& catalogue();
const SourceSpec& source_by_key(char key);

/// n x d source matrix: column j sampled i.i.d. from keys[j], then
/// normalized to unit sample variance.
DataMatrix sample_sources(const std::vector<char>& keys, int n, Rng& rng);

/// Amari error of P, invariant to scaling, sign, and permutation; 0 is
/// perfect, random matrices score about 0.4. Throws on an all-zero row or
/// column.
double amari_error(const Eigen::MatrixXd& p);

/// Standard-normal-entry matrix, rejection-sampled until the condition
/// number lies in [1, 2]. Deterministic per seed.
Eigen::MatrixXd random_mixing_matrix(int d, std::uint64_t seed);

struct ContaminationSpec {
  enum class Kind { none, clustered, multiplicative, increasing };
  Kind kind = Kind::none;
  double fraction = 0.10;         // of rows; for `increasing`, count = floor(fraction * n)
  bool per_column_choice = false; // multiplicative: min/max drawn per column instead of per row
};

std::string to_string(ContaminationSpec::Kind kind);
ContaminationSpec::Kind contamination_kind_from_string(const std::string& name);

/// Replaces floor(fraction*n) rows (chosen uniformly without replacement) by
/// rows of independent N(15, 1) draws.
DataMatrix contaminate_clustered(const DataMatrix& s, double fraction, std::uint64_t seed);

/// Replaces floor(fraction*n) rows: per row, draw a uniform [0,1]^d vector
/// (redrawn until its sum exceeds 1), multiply entrywise by d and by the
/// column minimum or maximum of s, the min/max choice drawn once per row
/// (or per column when per_column_choice is set).
DataMatrix contaminate_multiplicative(const DataMatrix& s, double fraction, std::uint64_t seed,
                                      bool per_column_choice = false);

/// Sets one uniformly chosen coordinate of `count` distinct rows to +5 or -5
/// with equal probability. count must not exceed 0.2 * n.
DataMatrix contaminate_increasing(const DataMatrix& s, int count, std::uint64_t seed);

DataMatrix contaminate(const DataMatrix& s, const ContaminationSpec& spec, std::uint64_t seed);

struct TrialResult {
  std::string method;
  char distribution = '?';
  std::string contamination;
  int d = 0;
  int n = 0;
  std::uint64_t seed = 0;
  double amari = 0.0;       // NaN marks a failed trial
  double runtime_seconds = 0.0;
  std::string error;        // empty on success
};

struct BenchConfig {
  std::vector<std::string> methods{"rica", "dcovica"};
  std::vector<char> distributions;  // empty -> full catalogue
  ContaminationSpec contamination;
  int d = 2;
  int n = 1000;
  int replications = 0;
  std::uint64_t seed = 1;
  int n_threads = 0;  // 0 -> all available; parallelism is across trials only
  ica::RicaConfig base;
  int dcovica_sweeps = -1;  // -1 -> the method default (no sweeps)
};

/// Runs every (distribution, replication) dataset through each method and
/// records the Amari error against the known mixing matrix. Per-trial seeds
/// are derived from the master seed, so results do not depend on scheduling;
/// a failed trial records an error marker instead of aborting the batch.
std::vector<TrialResult> run_benchmark(const BenchConfig& config);

/// Flat table: method,distribution,contamination,d,n,seed,amari,runtime_seconds.
void write_trials_csv(std::ostream& os, const std::vector<TrialResult>& trials);

/// Per-distribution mean Amari error (x100 convention), one column per
/// method, a final mean row; failed trials are excluded and counted.
void write_summary_csv(std::ostream& os, const std::vector<TrialResult>& trials);
std::string format_summary_table(const std::vector<TrialResult>& trials);

}  // namespace rica::evalsim
