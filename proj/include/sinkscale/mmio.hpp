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

#ifndef SINKSCALE_MMIO_HPP_
#define SINKSCALE_MMIO_HPP_

#include <string>
#include <vector>

#include "sinkscale/matching.hpp"
#include "sinkscale/sparse.hpp"

namespace sinkscale {

// Matrix Market coordinate format, "real general", 1-based indices. Entries
// must be strictly positive; diagnostics carry 1-based line numbers.
SparseNonnegMatrix read_matrix_market(const std::string& path);

// Writes entries in canonical (row, col) order with enough digits that a
// read of the written file reproduces the matrix bit for bit.
void write_matrix_market(const SparseNonnegMatrix& a, const std::string& path);

// One strictly positive value per line; '%' lines are comments.
std::vector<double> read_target_vector(const std::string& path);

// Header line "n_left n_right", then one 1-based "i j" edge per line.
// '%' lines are comments.
BipartiteGraph read_edge_list(const std::string& path);

}  // namespace sinkscale

#endif  // SINKSCALE_MMIO_HPP_
