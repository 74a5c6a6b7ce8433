// Copyright 2026 the sinkscale authors
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

#include "sinkscale/mmio.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sinkscale/errors.hpp"

namespace sinkscale {
namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

bool parse_double(const std::string& tok, double* out) {
  if (tok.empty()) return false;
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size()) return false;
  *out = v;
  return true;
}

bool parse_u32(const std::string& tok, std::uint32_t* out) {
  if (tok.empty() || !std::isdigit(static_cast<unsigned char>(tok[0]))) {
    return false;
  }
  errno = 0;
  char* end = nullptr;
  unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
  if (end != tok.c_str() + tok.size() || errno == ERANGE || v > 0xFFFFFFFFull) {
    return false;
  }
  *out = static_cast<std::uint32_t>(v);
  return true;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError(what, line_no);
}

std::string lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

// Reads the next line that is neither blank nor a '%' comment. Returns
// false at end of file; line_no tracks the 1-based physical line.
bool next_data_line(std::istream& in, std::size_t& line_no, std::string& out) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos) continue;
    if (line[pos] == '%') continue;
    out = line;
    return true;
  }
  return false;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path + " for reading");
  return in;
}

}  // namespace

SparseNonnegMatrix read_matrix_market(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::size_t line_no = 0;

  std::string line;
  if (!std::getline(in, line)) fail(1, "empty file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> banner = tokenize(line);
  if (banner.size() < 5 || lower(banner[0]) != "%%matrixmarket" ||
      lower(banner[1]) != "matrix" || lower(banner[2]) != "coordinate" ||
      (lower(banner[3]) != "real" && lower(banner[3]) != "integer") ||
      lower(banner[4]) != "general") {
    fail(line_no,
         "expected header '%%MatrixMarket matrix coordinate real general'");
  }

  if (!next_data_line(in, line_no, line)) fail(line_no + 1, "missing size line");
  std::vector<std::string> size_toks = tokenize(line);
  std::uint32_t n_rows = 0, n_cols = 0, nnz = 0;
  if (size_toks.size() != 3 || !parse_u32(size_toks[0], &n_rows) ||
      !parse_u32(size_toks[1], &n_cols) || !parse_u32(size_toks[2], &nnz)) {
    fail(line_no, "size line must be 'rows cols nonzeros'");
  }
  if (n_rows == 0 || n_cols == 0) {
    fail(line_no, "matrix dimensions must be positive");
  }

  std::vector<Entry> entries;
  entries.reserve(nnz);
  while (entries.size() < nnz) {
    if (!next_data_line(in, line_no, line)) {
      fail(line_no + 1, "file ends after " + std::to_string(entries.size()) +
                            " of " + std::to_string(nnz) + " entries");
    }
    std::vector<std::string> toks = tokenize(line);
    std::uint32_t i = 0, j = 0;
    double v = 0.0;
    if (toks.size() != 3 || !parse_u32(toks[0], &i) ||
        !parse_u32(toks[1], &j) || !parse_double(toks[2], &v)) {
      fail(line_no, "entry line must be 'row col value'");
    }
    if (i < 1 || i > n_rows) {
      fail(line_no, "row index " + std::to_string(i) + " out of range [1, " +
                        std::to_string(n_rows) + "]");
    }
    if (j < 1 || j > n_cols) {
      fail(line_no, "column index " + std::to_string(j) +
                        " out of range [1, " + std::to_string(n_cols) + "]");
    }
    if (!std::isfinite(v) || !(v > 0.0)) {
      fail(line_no, "entry value must be finite and strictly positive");
    }
    entries.push_back(Entry{i - 1, j - 1, v});
  }
  if (next_data_line(in, line_no, line)) {
    fail(line_no, "more entries than the " + std::to_string(nnz) +
                      " declared on the size line");
  }
  return SparseNonnegMatrix(n_rows, n_cols, entries);
}

void write_matrix_market(const SparseNonnegMatrix& a,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.n_rows() << " " << a.n_cols() << " " << a.values().size() << "\n";
  char buf[64];
  for (std::size_t k = 0; k < a.values().size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g", a.values()[k]);
    out << (a.row_of()[k] + 1) << " " << (a.col_idx()[k] + 1) << " " << buf
        << "\n";
  }
  if (!out) throw IoError("failed writing " + path);
}

std::vector<double> read_target_vector(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::size_t line_no = 0;
  std::string line;
  std::vector<double> out;
  while (next_data_line(in, line_no, line)) {
    std::vector<std::string> toks = tokenize(line);
    double v = 0.0;
    if (toks.size() != 1 || !parse_double(toks[0], &v)) {
      fail(line_no, "expected a single numeric value");
    }
    if (!std::isfinite(v) || !(v > 0.0)) {
      fail(line_no, "target must be finite and strictly positive");
    }
    out.push_back(v);
  }
  return out;
}

BipartiteGraph read_edge_list(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::size_t line_no = 0;
  std::string line;
  if (!next_data_line(in, line_no, line)) fail(1, "missing 'n m' header");
  std::vector<std::string> toks = tokenize(line);
  std::uint32_t n_left = 0, n_right = 0;
  if (toks.size() != 2 || !parse_u32(toks[0], &n_left) ||
      !parse_u32(toks[1], &n_right)) {
    fail(line_no, "header must be 'n_left n_right'");
  }
  if (n_left == 0 || n_right == 0) {
    fail(line_no, "part sizes must be positive");
  }
  BipartiteGraph g{n_left, n_right, {}};
  while (next_data_line(in, line_no, line)) {
    toks = tokenize(line);
    std::uint32_t i = 0, j = 0;
    if (toks.size() != 2 || !parse_u32(toks[0], &i) || !parse_u32(toks[1], &j)) {
      fail(line_no, "edge line must be 'left right'");
    }
    if (i < 1 || i > n_left) {
      fail(line_no, "left index " + std::to_string(i) + " out of range [1, " +
                        std::to_string(n_left) + "]");
    }
    if (j < 1 || j > n_right) {
      fail(line_no, "right index " + std::to_string(j) + " out of range [1, " +
                        std::to_string(n_right) + "]");
    }
    g.edges.emplace_back(i - 1, j - 1);
  }
  return g;
}

}  // namespace sinkscale
