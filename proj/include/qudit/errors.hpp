// Copyright 2026 The qudit-gates Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qudit {

/// Operands of incompatible dimension (gate vs. state, matrix vs. matrix).
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// exp_i_hermitian was handed a matrix that is not Hermitian.
class InvalidGenerator : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An optical element references a path that is not live, or the circuit
/// topology is otherwise inconsistent.
class CircuitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Efficiency requested for a row with zero total counts.
class UndefinedEfficiency : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Visibility calibration could not reach the requested mean efficiency.
class CalibrationError : public std::runtime_error {
 public:
  CalibrationError(const std::string& what, double achievable_min, double achievable_max)
      : std::runtime_error(what), min_(achievable_min), max_(achievable_max) {}

  double achievable_min() const noexcept { return min_; }
  double achievable_max() const noexcept { return max_; }

 private:
  double min_;
  double max_;
};

/// Malformed JSON/CSV input. field() names the offending key or column.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace qudit
