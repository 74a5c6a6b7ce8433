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

#ifndef SINKSCALE_ERRORS_HPP_
#define SINKSCALE_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sinkscale {

// Base class for every validation failure raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix/vector shapes do not agree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Two vectors that must have equal length do not.
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

// Structural defect in a sparse matrix: index out of range, duplicate
// coordinate, or a stored value that is not strictly positive.
class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

// A target entry is not strictly positive.
class InvalidTarget : public Error {
 public:
  using Error::Error;
};

// Row and column targets whose sums differ beyond tolerance.
class TargetSumMismatch : public Error {
 public:
  using Error::Error;
};

// The matrix has a row or column with no stored entries. Carries the
// 1-based index of the first offending line.
class ZeroRowOrColumn : public Error {
 public:
  enum class Axis { kRow, kCol };

  ZeroRowOrColumn(Axis axis, std::size_t index_1based)
      : Error((axis == Axis::kRow ? "row " : "column ") +
              std::to_string(index_1based) + " has no positive entries"),
        axis_(axis),
        index_(index_1based) {}

  Axis axis() const { return axis_; }
  std::size_t index() const { return index_; }  // 1-based

 private:
  Axis axis_;
  std::size_t index_;
};

// A probability vector with a negative entry or a sum too far from 1.
class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

class NonpositiveTheta : public Error {
 public:
  using Error::Error;
};

class NonpositiveDelta : public Error {
 public:
  using Error::Error;
};

// A matrix expected to be row- or column-stochastic is neither.
class NotStochastic : public Error {
 public:
  using Error::Error;
};

// An operation requiring equal part sizes received a rectangular graph.
class NotSquare : public Error {
 public:
  using Error::Error;
};

// Supplied reference matrix does not have the required marginals.
class WitnessInfeasible : public Error {
 public:
  using Error::Error;
};

// Supplied reference matrix has an entry outside the instance's support.
class WitnessSupportViolation : public Error {
 public:
  using Error::Error;
};

// Instance generator could not produce a usable support pattern.
class DegenerateSupport : public Error {
 public:
  using Error::Error;
};

// Malformed input file. Carries the 1-based line number of the defect.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// File could not be opened or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sinkscale

#endif  // SINKSCALE_ERRORS_HPP_
