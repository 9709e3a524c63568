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
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

using namespace qudit;
using qudit::test_support::frob;

namespace {

const QuditDim d2{2};
const QuditDim d4{4};
const Complex I{0.0, 1.0};

GateMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd m(n, n);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (Complex z : row) m(r, c++) = z;
    ++r;
  }
  return GateMatrix(m);
}

}  // namespace

TEST(QuditDim, RejectsBelowTwo) {
  EXPECT_THROW(QuditDim(1), std::invalid_argument);
  EXPECT_THROW(QuditDim(0), std::invalid_argument);
  EXPECT_EQ(QuditDim(2).value(), 2);
}

TEST(MakeX, CyclicPermutationWithWrapAround) {
  const GateMatrix x = make_x(d4);
  for (int l = 0; l < 4; ++l) {
    for (int r = 0; r < 4; ++r) EXPECT_EQ(x(r, l), Complex(r == (l + 1) % 4 ? 1.0 : 0.0));
  }
  EXPECT_EQ(x(0, 3), Complex(1.0));
  EXPECT_TRUE(x.is_unitary());
}

TEST(MakeX, QubitIsSigmaX) {
  EXPECT_EQ(frob(make_x(d2).matrix(), from_rows({{0, 1}, {1, 0}}).matrix()), 0.0);
}

TEST(MakeX, ActsAsShiftOnBasis) {
  const QuditState out = apply(make_x(d4), QuditState::basis(d4, 2));
  EXPECT_EQ(out[3], Complex(1.0));
  EXPECT_EQ(out[0] + out[1] + out[2], Complex(0.0));
}

TEST(MakeZ, DiagonalPowersOfOmega) {
  const GateMatrix z = make_z(d4);
  const std::array<Complex, 4> diag{1.0, I, -1.0, -I};
  for (int l = 0; l < 4; ++l) EXPECT_EQ(z(l, l), diag[static_cast<std::size_t>(l)]);
  EXPECT_EQ(frob(z.matrix(), Eigen::MatrixXcd(z.matrix().diagonal().asDiagonal())), 0.0);

  const QuditState out = apply(z, QuditState::basis(d4, 2));
  EXPECT_EQ(out[2], Complex(-1.0));
  EXPECT_EQ(frob(make_z(d2).matrix(), from_rows({{1, 0}, {0, -1}}).matrix()), 0.0);
}

TEST(MakeZ, GeneralDimensionMatchesPolar) {
  const QuditDim d5{5};
  const GateMatrix z = make_z(d5);
  for (int l = 0; l < 5; ++l) EXPECT_NEAR(std::abs(z(l, l) - std::polar(1.0, 2 * M_PI * l / 5)), 0.0, 1e-15);
}

TEST(MakeY, QubitIsSigmaYUpToMinusI) {
  // X Z by hand: [[0,1],[1,0]] [[1,0],[0,-1]] = [[0,-1],[1,0]] = -i * [[0,-i],[i,0]].
  const GateMatrix sigma_y = from_rows({{0, -I}, {I, 0}});
  EXPECT_LT(frob(make_y(d2).matrix(), (-I * sigma_y).matrix()), 1e-15);
  EXPECT_NEAR(phase_insensitive_overlap(make_y(d2), sigma_y), 1.0, 1e-15);
}

TEST(MakeY, ColumnsCarryOmegaPowers) {
  const GateMatrix y = make_y(d4);
  const GateMatrix z = make_z(d4);
  for (int l = 0; l < 4; ++l) {
    for (int r = 0; r < 4; ++r) {
      const Complex expected = r == (l + 1) % 4 ? z(l, l) : Complex(0.0);
      EXPECT_EQ(y(r, l), expected) << "r=" << r << " l=" << l;
    }
  }
  for (int d : {2, 3, 4, 7}) {
    const QuditState out = apply(make_y(QuditDim(d)), QuditState::basis(QuditDim(d), 0));
    EXPECT_EQ(out[1], Complex(1.0));
  }
}

TEST(GatePower, SquareSwapsParities) {
  const GateMatrix x2 = gate_power(make_x(d4), 2);
  const std::array<int, 4> image{2, 3, 0, 1};
  for (int l = 0; l < 4; ++l) EXPECT_EQ(x2(image[static_cast<std::size_t>(l)], l), Complex(1.0));
}

TEST(GatePower, ZeroAndInverse) {
  EXPECT_EQ(frob(gate_power(make_x(d4), 0).matrix(), Eigen::MatrixXcd::Identity(4, 4)), 0.0);
  EXPECT_LT(frobenius_distance(gate_power(make_x(d4), 3), dagger(make_x(d4))), 1e-12);
  EXPECT_LT(frobenius_distance(gate_power(make_z(d4), -1), dagger(make_z(d4))), 1e-12);
}

TEST(GatePower, ShiftMatchesPermutationOracle) {
  for (int d : {2, 3, 4, 5, 8}) {
    const QuditDim dim(d);
    for (int n = -2 * d; n <= 2 * d; ++n) {
      const GateMatrix xn = gate_power(make_x(dim), n);
      for (int l = 0; l < d; ++l) {
        const QuditState out = apply(xn, QuditState::basis(dim, l));
        const int target = ((l + n) % d + d) % d;
        for (int k = 0; k < d; ++k) {
          EXPECT_NEAR(std::abs(out[k] - Complex(k == target ? 1.0 : 0.0)), 0.0, 1e-12)
              << "d=" << d << " n=" << n << " l=" << l;
        }
      }
    }
  }
}

TEST(GroupRelations, OrderAndCommutation) {
  for (int d : {2, 3, 4, 5, 8}) {
    const QuditDim dim(d);
    const GateMatrix id = GateMatrix::identity(dim);
    const GateMatrix x = make_x(dim), z = make_z(dim);
    EXPECT_LT(frobenius_distance(gate_power(x, d), id), 1e-12) << d;
    EXPECT_LT(frobenius_distance(gate_power(z, d), id), 1e-12) << d;
    const Complex w_inv = std::conj(root_of_unity(1, d));
    EXPECT_LT(frobenius_distance(x * z, w_inv * (z * x)), 1e-12) << d;
    EXPECT_TRUE(make_y(dim).is_unitary());
  }
  EXPECT_LT(frobenius_distance(make_x(d4) * make_z(d4), -I * (make_z(d4) * make_x(d4))), 1e-12);
}

TEST(Dagger, InversePermutationAndConjugatePhases) {
  const QuditState out = apply(dagger(make_x(d4)), QuditState::basis(d4, 0));
  EXPECT_EQ(out[3], Complex(1.0));
  const GateMatrix zd = dagger(make_z(d4));
  for (int l = 0; l < 4; ++l) EXPECT_EQ(zd(l, l), std::conj(make_z(d4)(l, l)));

  std::mt19937_64 rng(11);
  const GateMatrix u = test_support::random_unitary(4, rng);
  EXPECT_EQ(frobenius_distance(dagger(dagger(u)), u), 0.0);
}

TEST(Apply, ShiftsSuperpositionAndKeepsIdentity) {
  const double s = 1.0 / std::sqrt(2.0);
  const QuditState in(d4, std::array<Complex, 4>{s, s, 0, 0});
  const QuditState out = apply(make_x(d4), in);
  EXPECT_NEAR(std::abs(out[1] - s) + std::abs(out[2] - s) + std::abs(out[0]) + std::abs(out[3]), 0.0, 1e-15);

  EXPECT_EQ((apply(GateMatrix::identity(d4), in).amplitudes() - in.amplitudes()).norm(), 0.0);

  const QuditState even(d4, std::array<Complex, 4>{s, 0, s, 0});
  const QuditState flipped = apply(make_z(d4), even);
  EXPECT_NEAR(std::abs(flipped[0] - s) + std::abs(flipped[2] + s), 0.0, 1e-15);
}

TEST(Apply, DimensionMismatchThrows) {
  EXPECT_THROW(apply(make_x(QuditDim(3)), QuditState::basis(d4, 0)), DimensionMismatch);
  EXPECT_THROW(make_x(QuditDim(3)) * make_x(d4), DimensionMismatch);
}

TEST(Apply, PreservesNormOnRandomPairs) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + trial % 7;
    const GateMatrix g = test_support::random_unitary(d, rng);
    const QuditState s = test_support::random_state(d, rng);
    EXPECT_NEAR(apply(g, s).norm(), 1.0, 1e-12);
  }
}

TEST(QuditState, RejectsUnnormalized) {
  EXPECT_THROW(QuditState(d4, std::array<Complex, 4>{1, 1, 0, 0}), std::invalid_argument);
  EXPECT_THROW(QuditState::basis(d4, 4), std::out_of_range);
}

TEST(SubspaceMap, ExperimentWindow) {
  const SubspaceMap map = experiment_subspace();
  EXPECT_EQ(map.logical_to_oam(3), 1);
  EXPECT_EQ(map.oam_to_logical(-2), 0);
  EXPECT_EQ(map.oam_labels(), (std::vector<int>{-2, -1, 0, 1}));
  EXPECT_THROW(map.logical_to_oam(4), std::out_of_range);
  EXPECT_THROW(map.oam_to_logical(2), std::out_of_range);

  const SubspaceMap trivial(QuditDim(5), 0);
  for (int j = 0; j < 5; ++j) {
    EXPECT_EQ(trivial.logical_to_oam(j), j);
    EXPECT_EQ(trivial.oam_to_logical(trivial.logical_to_oam(j)), j);
  }
}
