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

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace rica {

/// splitmix64 step; used both as a mixer and to derive child seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Derives an independent child seed from a master seed and an index path.
/// Pure function: the same (master, path) always yields the same seed, so
/// per-trial streams do not depend on execution order.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Seeded generator with hand-rolled samplers. All draws go through
/// next_u64()/uniform(), so sequences are identical across standard-library
/// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed == 0 ? 0x9E3779B97F4A7C15ULL : seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Uniform integer in [0, n). n must be positive.
  int uniform_int(int n);

  /// Standard normal via the polar method (cached spare deviate).
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }

  /// Exponential with rate 1.
  double exponential();

  /// Laplace (double exponential) with location 0 and scale b.
  double laplace(double b = 1.0);

  /// Student t with integer degrees of freedom.
  double student_t(int dof);

  /// Fisher-Yates permutation of {0, ..., n-1}.
  std::vector<int> permutation(int n);

  /// k distinct indices from {0, ..., n-1}, in draw order.
  std::vector<int> sample_without_replacement(int n, int k);

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rica
