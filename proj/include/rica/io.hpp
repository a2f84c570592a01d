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

#include <cstdint>
#include <string>
#include <vector>

namespace rica::io {

/// Shortest round-trip decimal representation (%.17g trimmed); CSV output is
/// byte-stable per platform.
std::string format_double(double v);

struct DelimitedTable {
  DataMatrix values;
  bool had_header = false;
  std::vector<std::string> header;
};

/// Reads a numeric delimited file, rows = observations. Comma or whitespace
/// separated (auto-detected), one optional header line. Ragged or
/// non-numeric content raises ValidationError with row/column diagnostics.
DelimitedTable read_delimited(const std::string& path);

/// Writes a matrix as comma-separated values with round-trip formatting.
void write_matrix_csv(const std::string& path, const DataMatrix& m);

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex characters.
std::string file_digest(const std::string& path);

bool file_exists(const std::string& path);

}  // namespace rica::io
