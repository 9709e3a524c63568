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

// Generalized Pauli algebra on a single d-level system.
//
// Conventions:
//   X|l> = |l+1 mod d>
//   Z|l> = w^l |l>,  w = exp(2 pi i / d)
//   Y    = X * Z     (for d = 2 this is i*sigma_y, not sigma_y)
//
// Gates are dense d x d complex matrices; all values are immutable once
// built and all free functions are pure.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qudit {

using Complex = std::complex<double>;

/// Default equality tolerance (Frobenius norm) for algebraic identities.
inline constexpr double kTolerance = 1e-12;

class QuditDim {
 public:
  explicit QuditDim(int d);

  int value() const noexcept { return d_; }
  Eigen::Index index() const noexcept { return d_; }

  friend bool operator==(QuditDim, QuditDim) = default;

 private:
  int d_;
};

class GateMatrix {
 public:
  /// Takes ownership of a square matrix of size >= 2.
  explicit GateMatrix(Eigen::MatrixXcd entries);

  static GateMatrix identity(QuditDim dim);
  static GateMatrix zero(QuditDim dim);

  QuditDim dim() const noexcept { return dim_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  bool is_unitary(double tol = kTolerance) const;
  bool is_hermitian(double tol = kTolerance) const;

  friend GateMatrix operator*(const GateMatrix& a, const GateMatrix& b);
  friend GateMatrix operator+(const GateMatrix& a, const GateMatrix& b);
  friend GateMatrix operator-(const GateMatrix& a, const GateMatrix& b);
  friend GateMatrix operator*(Complex s, const GateMatrix& g);

 private:
  QuditDim dim_;
  Eigen::MatrixXcd m_;
};

/// ||a - b||_F. Throws DimensionMismatch.
double frobenius_distance(const GateMatrix& a, const GateMatrix& b);

/// |tr(a^dagger b)| / d; equals 1 iff b = e^{i phi} a for unitary a, b.
double phase_insensitive_overlap(const GateMatrix& a, const GateMatrix& b);

class QuditState {
 public:
  /// Amplitudes must be normalized within kTolerance.
  QuditState(QuditDim dim, Eigen::VectorXcd amplitudes);
  QuditState(QuditDim dim, std::span<const Complex> amplitudes);

  static QuditState basis(QuditDim dim, int level);

  QuditDim dim() const noexcept { return dim_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return v_; }
  Complex operator[](int level) const { return v_(level); }
  double norm() const { return v_.norm(); }

 private:
  QuditDim dim_;
  Eigen::VectorXcd v_;
};

/// exp(2 pi i k / d), exact on quarter turns so that e.g. Z for d = 4 is
/// exactly diag(1, i, -1, -i).
Complex root_of_unity(long long k, int d);

GateMatrix make_x(QuditDim dim);
GateMatrix make_z(QuditDim dim);
GateMatrix make_y(QuditDim dim);

GateMatrix dagger(const GateMatrix& g);

/// g^n for any integer n; negative powers use dagger(g), so g must be
/// unitary for n < 0 to mean the inverse.
GateMatrix gate_power(const GateMatrix& g, long long n);

/// Matrix-vector product. Throws DimensionMismatch.
QuditState apply(const GateMatrix& g, const QuditState& s);

/// Logical level j <-> OAM label l = j + offset.
class SubspaceMap {
 public:
  SubspaceMap(QuditDim dim, int oam_offset) : dim_(dim), offset_(oam_offset) {}

  QuditDim dim() const noexcept { return dim_; }
  int oam_offset() const noexcept { return offset_; }

  /// Throws std::out_of_range.
  int logical_to_oam(int logical) const;
  int oam_to_logical(int oam) const;

  bool contains_oam(int oam) const noexcept;
  std::vector<int> oam_labels() const;

 private:
  QuditDim dim_;
  int offset_;
};

/// The experiment's window: d = 4, OAM labels {-2, -1, 0, 1}.
inline SubspaceMap experiment_subspace() { return SubspaceMap(QuditDim(4), -2); }

}  // namespace qudit
