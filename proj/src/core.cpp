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

#include "qudit/core.hpp"

#include "qudit/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qudit {

namespace {

QuditDim checked_square_dim(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("gate matrix must be square, got " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  }
  return QuditDim(static_cast<int>(m.rows()));
}

void require_same_dim(QuditDim a, QuditDim b, const char* op) {
  if (a != b) {
    throw DimensionMismatch(std::string(op) + ": dimension " + std::to_string(a.value()) + " vs " +
                            std::to_string(b.value()));
  }
}

long long floor_mod(long long a, long long n) {
  long long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

QuditDim::QuditDim(int d) : d_(d) {
  if (d < 2) throw std::invalid_argument("qudit dimension must be >= 2, got " + std::to_string(d));
}

GateMatrix::GateMatrix(Eigen::MatrixXcd entries) : dim_(checked_square_dim(entries)), m_(std::move(entries)) {}

GateMatrix GateMatrix::identity(QuditDim dim) {
  return GateMatrix(Eigen::MatrixXcd::Identity(dim.index(), dim.index()));
}

GateMatrix GateMatrix::zero(QuditDim dim) {
  return GateMatrix(Eigen::MatrixXcd::Zero(dim.index(), dim.index()));
}

bool GateMatrix::is_unitary(double tol) const {
  const auto id = Eigen::MatrixXcd::Identity(dim_.index(), dim_.index());
  return (m_.adjoint() * m_ - id).norm() <= tol;
}

bool GateMatrix::is_hermitian(double tol) const { return (m_ - m_.adjoint()).norm() <= tol; }

GateMatrix operator*(const GateMatrix& a, const GateMatrix& b) {
  require_same_dim(a.dim_, b.dim_, "gate product");
  return GateMatrix(a.m_ * b.m_);
}

GateMatrix operator+(const GateMatrix& a, const GateMatrix& b) {
  require_same_dim(a.dim_, b.dim_, "gate sum");
  return GateMatrix(a.m_ + b.m_);
}

GateMatrix operator-(const GateMatrix& a, const GateMatrix& b) {
  require_same_dim(a.dim_, b.dim_, "gate difference");
  return GateMatrix(a.m_ - b.m_);
}

GateMatrix operator*(Complex s, const GateMatrix& g) { return GateMatrix(s * g.m_); }

double frobenius_distance(const GateMatrix& a, const GateMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "frobenius_distance");
  return (a.matrix() - b.matrix()).norm();
}

double phase_insensitive_overlap(const GateMatrix& a, const GateMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "phase_insensitive_overlap");
  return std::abs((a.matrix().adjoint() * b.matrix()).trace()) / a.dim().value();
}

QuditState::QuditState(QuditDim dim, Eigen::VectorXcd amplitudes) : dim_(dim), v_(std::move(amplitudes)) {
  if (v_.size() != dim_.index()) {
    throw DimensionMismatch("state has " + std::to_string(v_.size()) + " amplitudes for dimension " +
                            std::to_string(dim_.value()));
  }
  if (std::abs(v_.squaredNorm() - 1.0) > kTolerance) {
    throw std::invalid_argument("qudit state is not normalized");
  }
}

QuditState::QuditState(QuditDim dim, std::span<const Complex> amplitudes)
    : QuditState(dim, Eigen::Map<const Eigen::VectorXcd>(amplitudes.data(),
                                                        static_cast<Eigen::Index>(amplitudes.size()))) {}

QuditState QuditState::basis(QuditDim dim, int level) {
  if (level < 0 || level >= dim.value()) {
    throw std::out_of_range("basis level " + std::to_string(level) + " outside [0, " +
                            std::to_string(dim.value()) + ")");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim.index());
  v(level) = 1.0;
  return QuditState(dim, std::move(v));
}

Complex root_of_unity(long long k, int d) {
  const long long r = floor_mod(k, d);
  if ((4 * r) % d == 0) {
    switch ((4 * r) / d) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / d);
}

GateMatrix make_x(QuditDim dim) {
  const int d = dim.value();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int l = 0; l < d; ++l) m((l + 1) % d, l) = 1.0;
  return GateMatrix(std::move(m));
}

GateMatrix make_z(QuditDim dim) {
  const int d = dim.value();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int l = 0; l < d; ++l) m(l, l) = root_of_unity(l, d);
  return GateMatrix(std::move(m));
}

GateMatrix make_y(QuditDim dim) { return make_x(dim) * make_z(dim); }

GateMatrix dagger(const GateMatrix& g) { return GateMatrix(g.matrix().adjoint()); }

GateMatrix gate_power(const GateMatrix& g, long long n) {
  GateMatrix base = n < 0 ? dagger(g) : g;
  unsigned long long e = n < 0 ? static_cast<unsigned long long>(-(n + 1)) + 1 : static_cast<unsigned long long>(n);
  GateMatrix result = GateMatrix::identity(g.dim());
  while (e != 0) {
    if (e & 1ULL) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

QuditState apply(const GateMatrix& g, const QuditState& s) {
  require_same_dim(g.dim(), s.dim(), "apply");
  Eigen::VectorXcd out = g.matrix() * s.amplitudes();
  return QuditState(s.dim(), std::move(out));
}

int SubspaceMap::logical_to_oam(int logical) const {
  if (logical < 0 || logical >= dim_.value()) {
    throw std::out_of_range("logical index " + std::to_string(logical) + " outside [0, " +
                            std::to_string(dim_.value()) + ")");
  }
  return logical + offset_;
}

int SubspaceMap::oam_to_logical(int oam) const {
  if (!contains_oam(oam)) {
    throw std::out_of_range("OAM label " + std::to_string(oam) + " outside window [" +
                            std::to_string(offset_) + ", " + std::to_string(offset_ + dim_.value() - 1) + "]");
  }
  return oam - offset_;
}

bool SubspaceMap::contains_oam(int oam) const noexcept {
  return oam >= offset_ && oam < offset_ + dim_.value();
}

std::vector<int> SubspaceMap::oam_labels() const {
  std::vector<int> labels(static_cast<std::size_t>(dim_.value()));
  for (int j = 0; j < dim_.value(); ++j) labels[static_cast<std::size_t>(j)] = j + offset_;
  return labels;
}

}  // namespace qudit
