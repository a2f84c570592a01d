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

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace rica {

inline constexpr const char* kVersion = "0.1.0";

/// n x d sample matrix, rows are observations.
using DataMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (bad flags, non-finite data, index abuse).
struct ValidationError : Error {
  using Error::Error;
};

/// Sample too small or shapes incompatible.
struct DimensionError : Error {
  using Error::Error;
};

/// Zero scale where a positive one is required (MAD = 0).
struct DegenerateScaleError : Error {
  using Error::Error;
};

/// Scatter matrix too ill-conditioned to invert for whitening.
struct ConditioningError : Error {
  using Error::Error;
};

/// Objective callback returned a non-finite value.
struct ObjectiveError : Error {
  using Error::Error;
};

/// Rejection sampler exhausted its draw budget.
struct GenerationError : Error {
  using Error::Error;
};

/// All MCD subset candidates were singular (data on a lower-dimensional set).
struct ExactFitError : Error {
  using Error::Error;
};

inline void require_finite(const DataMatrix& x, const char* what) {
  if (!x.allFinite()) throw ValidationError(std::string(what) + ": non-finite entries");
}

}  // namespace rica
