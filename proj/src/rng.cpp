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

#include "rica/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace rica {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = master;
  (void)splitmix64(s);
  for (std::uint64_t p : path) {
    s ^= p + 0x9E3779B97F4A7C15ULL + (s << 6) + (s >> 2);
    (void)splitmix64(s);
  }
  std::uint64_t out = s;
  return splitmix64(out);
}

int Rng::uniform_int(int n) {
  if (n <= 0) throw std::invalid_argument("Rng::uniform_int: n must be positive");
  // Rejection to avoid modulo bias.
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return static_cast<int>(x % un);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

double Rng::exponential() { return -std::log1p(-uniform()); }

double Rng::laplace(double b) {
  const double e = exponential();
  return (uniform() < 0.5 ? -b : b) * e;
}

double Rng::student_t(int dof) {
  const double z = normal();
  double chi2 = 0.0;
  for (int i = 0; i < dof; ++i) {
    const double g = normal();
    chi2 += g * g;
  }
  return z / std::sqrt(chi2 / dof);
}

std::vector<int> Rng::permutation(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  for (int i = n - 1; i > 0; --i) {
    const int j = uniform_int(i + 1);
    std::swap(p[i], p[j]);
  }
  return p;
}

std::vector<int> Rng::sample_without_replacement(int n, int k) {
  // Floyd's algorithm; O(k) draws, order of first appearance.
  std::vector<int> out;
  out.reserve(k);
  std::vector<bool> seen(n, false);
  for (int j = n - k; j < n; ++j) {
    const int t = uniform_int(j + 1);
    if (seen[t]) {
      out.push_back(j);
      seen[j] = true;
    } else {
      out.push_back(t);
      seen[t] = true;
    }
  }
  return out;
}

}  // namespace rica
