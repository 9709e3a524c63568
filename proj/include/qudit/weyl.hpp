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

// Heisenberg-Weyl operator basis and unitary synthesis.
//
//   D(l, m) = phase(l, m) * Z^l X^m
//   Q(l, m) = chi D(l, m) + conj(chi) D(l, m)^dagger,   chi = (1 + i) / 2
//   A       = sum_{l,m} c(l, m) Q(l, m)                 (Hermitian, c real)
//   U       = exp(i A)
//   U       = sum_{l,m} h(l, m) X^l Z^m                 (decompose / reconstruct)
//
// The default phase is exp(i pi l m / d). With it the d^2 operators Q(l, m)
// span the Hermitian matrices for every d from 2 to 12 except d = 8, where
// the span has real dimension 56 of 64. WeylPhase::QuarterTurn selects exp(i pi l m / 2) instead, which
// at d = 4 loses completeness (rank 14).

#include "qudit/core.hpp"
#include "qudit/errors.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace qudit {

struct WeylIndex {
  int l = 0;
  int m = 0;
};

enum class WeylPhase {
  Symmetric,    ///< exp(i pi l m / d)
  QuarterTurn,  ///< exp(i pi l m / 2)
};

/// d x d table indexed (l, m) -> (row, col).
template <typename T>
class CoefficientTable {
 public:
  using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

  explicit CoefficientTable(QuditDim dim) : dim_(dim), c_(Matrix::Zero(dim.index(), dim.index())) {}
  CoefficientTable(QuditDim dim, Matrix c);

  QuditDim dim() const noexcept { return dim_; }
  const Matrix& table() const noexcept { return c_; }

  T operator()(int l, int m) const { return c_(l, m); }
  T& operator()(int l, int m) { return c_(l, m); }

 private:
  QuditDim dim_;
  Matrix c_;
};

template <typename T>
CoefficientTable<T>::CoefficientTable(QuditDim dim, Matrix c) : dim_(dim), c_(std::move(c)) {
  if (c_.rows() != dim.index() || c_.cols() != dim.index()) {
    throw DimensionMismatch("coefficient table must be " + std::to_string(dim.value()) + "x" +
                            std::to_string(dim.value()));
  }
  if (!c_.allFinite()) throw std::invalid_argument("coefficient table has non-finite entries");
}

using HermitianCoefficients = CoefficientTable<double>;

/// h(l, m) multiplying X^l Z^m.
using WeylCoefficients = CoefficientTable<Complex>;

GateMatrix weyl_operator(WeylIndex idx, QuditDim dim, WeylPhase phase = WeylPhase::Symmetric);
GateMatrix q_basis(WeylIndex idx, QuditDim dim, WeylPhase phase = WeylPhase::Symmetric);

GateMatrix hermitian_from_coeffs(const HermitianCoefficients& c, WeylPhase phase = WeylPhase::Symmetric);

/// exp(i A) via A = V diag(lambda) V^dagger. A must be Hermitian within
/// kTolerance * max(1, ||A||_F); it is symmetrized before diagonalization.
/// Throws InvalidGenerator otherwise.
GateMatrix exp_i_hermitian(const GateMatrix& a);

/// X^l Z^m, the decomposition basis element.
GateMatrix shift_clock(WeylIndex idx, QuditDim dim);

/// Hilbert-Schmidt projection h(l, m) = tr((X^l Z^m)^dagger U) / d.
/// Accepts any square matrix; the basis spans all of them.
WeylCoefficients decompose(const GateMatrix& u);

GateMatrix reconstruct(const WeylCoefficients& h);

/// c(l, m) uniform in [-1, 1), drawn from mt19937_64(seed) as
/// (x >> 11) * 2^-53 * 2 - 1 in row-major order.
HermitianCoefficients random_hermitian_coefficients(QuditDim dim, std::uint64_t seed);

}  // namespace qudit
