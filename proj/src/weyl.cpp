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

#include "qudit/weyl.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <random>
#include <string>

namespace qudit {

namespace {

void check_index(WeylIndex idx, QuditDim dim) {
  const int d = dim.value();
  if (idx.l < 0 || idx.l >= d || idx.m < 0 || idx.m >= d) {
    throw std::out_of_range("Weyl index (" + std::to_string(idx.l) + ", " + std::to_string(idx.m) +
                            ") outside [0, " + std::to_string(d) + ")");
  }
}

// exp(i pi l m / n) = root_of_unity(l m, 2 n)
Complex weyl_phase(WeylIndex idx, QuditDim dim, WeylPhase phase) {
  const long long lm = static_cast<long long>(idx.l) * idx.m;
  const int n = phase == WeylPhase::QuarterTurn ? 2 : dim.value();
  return root_of_unity(lm, 2 * n);
}

constexpr Complex kChi{0.5, 0.5};

}  // namespace

GateMatrix shift_clock(WeylIndex idx, QuditDim dim) {
  check_index(idx, dim);
  return gate_power(make_x(dim), idx.l) * gate_power(make_z(dim), idx.m);
}

GateMatrix weyl_operator(WeylIndex idx, QuditDim dim, WeylPhase phase) {
  check_index(idx, dim);
  return weyl_phase(idx, dim, phase) * (gate_power(make_z(dim), idx.l) * gate_power(make_x(dim), idx.m));
}

GateMatrix q_basis(WeylIndex idx, QuditDim dim, WeylPhase phase) {
  const GateMatrix dop = weyl_operator(idx, dim, phase);
  return kChi * dop + std::conj(kChi) * dagger(dop);
}

GateMatrix hermitian_from_coeffs(const HermitianCoefficients& c, WeylPhase phase) {
  const QuditDim dim = c.dim();
  GateMatrix a = GateMatrix::zero(dim);
  for (int l = 0; l < dim.value(); ++l) {
    for (int m = 0; m < dim.value(); ++m) {
      if (c(l, m) == 0.0) continue;
      a = a + Complex(c(l, m), 0.0) * q_basis({l, m}, dim, phase);
    }
  }
  return a;
}

GateMatrix exp_i_hermitian(const GateMatrix& a) {
  const Eigen::MatrixXcd& m = a.matrix();
  const double tol = kTolerance * std::max(1.0, m.norm());
  const double asym = (m - m.adjoint()).norm();
  if (!(asym <= tol)) {
    throw InvalidGenerator("generator is not Hermitian: ||A - A^dagger||_F = " + std::to_string(asym));
  }
  const Eigen::MatrixXcd sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(sym);
  if (eig.info() != Eigen::Success) throw InvalidGenerator("Hermitian eigendecomposition failed");

  const Eigen::VectorXd& lambda = eig.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) phases(k) = std::polar(1.0, lambda(k));
  const Eigen::MatrixXcd& v = eig.eigenvectors();
  return GateMatrix(v * phases.asDiagonal() * v.adjoint());
}

WeylCoefficients decompose(const GateMatrix& u) {
  const QuditDim dim = u.dim();
  const int d = dim.value();
  WeylCoefficients h(dim);
  for (int l = 0; l < d; ++l) {
    for (int m = 0; m < d; ++m) {
      const GateMatrix basis = shift_clock({l, m}, dim);
      h(l, m) = (basis.matrix().adjoint() * u.matrix()).trace() / static_cast<double>(d);
    }
  }
  return h;
}

GateMatrix reconstruct(const WeylCoefficients& h) {
  const QuditDim dim = h.dim();
  GateMatrix u = GateMatrix::zero(dim);
  for (int l = 0; l < dim.value(); ++l) {
    for (int m = 0; m < dim.value(); ++m) {
      if (h(l, m) == Complex{}) continue;
      u = u + h(l, m) * shift_clock({l, m}, dim);
    }
  }
  return u;
}

HermitianCoefficients random_hermitian_coefficients(QuditDim dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  HermitianCoefficients c(dim);
  for (int l = 0; l < dim.value(); ++l) {
    for (int m = 0; m < dim.value(); ++m) c(l, m) = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  }
  return c;
}

}  // namespace qudit
