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

#include "rica/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace rica::io {

std::string format_double(double v) {
  char buf[40];
  // Try shorter representations first, keep the first that round-trips.
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v || (std::isnan(back) && std::isnan(v))) return buf;
  }
  return buf;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, bool comma) {
  std::vector<std::string> out;
  if (comma) {
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    out.push_back(cur);
  } else {
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
  }
  return out;
}

bool parse_number(const std::string& field, double& out) {
  const char* s = field.c_str();
  char* end = nullptr;
  out = std::strtod(s, &end);
  if (end == s) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0';
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  size_t b = s.find_last_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

}  // namespace

DelimitedTable read_delimited(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ValidationError("input file '" + path + "' is empty");

  const bool comma = lines[0].find(',') != std::string::npos;
  DelimitedTable t;
  size_t first_row = 0;
  {
    // A non-numeric first line is a header.
    const auto fields = split_fields(lines[0], comma);
    double v;
    bool numeric = !fields.empty();
    for (const auto& f : fields)
      if (!parse_number(trim(f), v)) numeric = false;
    if (!numeric) {
      t.had_header = true;
      for (const auto& f : fields) t.header.push_back(trim(f));
      first_row = 1;
      if (lines.size() == 1) throw ValidationError("input file '" + path + "' has a header but no data");
    }
  }

  const size_t n_rows = lines.size() - first_row;
  size_t n_cols = 0;
  std::vector<std::vector<double>> rows;
  rows.reserve(n_rows);
  for (size_t r = first_row; r < lines.size(); ++r) {
    const auto fields = split_fields(lines[r], comma);
    std::vector<double> vals;
    vals.reserve(fields.size());
    for (size_t c = 0; c < fields.size(); ++c) {
      double v;
      if (!parse_number(trim(fields[c]), v)) {
        std::ostringstream os;
        os << "non-numeric value '" << trim(fields[c]) << "' at row " << (r + 1) << ", column "
           << (c + 1) << " of '" << path << "'";
        throw ValidationError(os.str());
      }
      vals.push_back(v);
    }
    if (n_cols == 0) n_cols = vals.size();
    if (vals.size() != n_cols) {
      std::ostringstream os;
      os << "ragged input: row " << (r + 1) << " of '" << path << "' has " << vals.size()
         << " columns, expected " << n_cols;
      throw ValidationError(os.str());
    }
    rows.push_back(std::move(vals));
  }

  t.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n_cols));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < n_cols; ++j) t.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return t;
}

void write_matrix_csv(const std::string& path, const DataMatrix& m) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write output file '" + path + "'");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file for digest '" + path + "'");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[65536];
  while (in) {
    in.read(buf, sizeof buf);
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

bool file_exists(const std::string& path) { return std::filesystem::exists(path); }

}  // namespace rica::io
