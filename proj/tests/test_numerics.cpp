#include "helpers.hpp"
#include "mblo/errors.hpp"
#include "mblo/numerics.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <numbers>

using namespace mblo;

TEST(Numerics, HaarUnitaryIsUnitaryAndDeterministic) {
  for (int m : {1, 2, 5, 10}) {
    const ComplexMatrix U = haar_unitary(m, 42);
    EXPECT_TRUE(is_unitary(U, 1e-12));
    EXPECT_EQ((U - haar_unitary(m, 42)).norm(), 0.0);
  }
  EXPECT_GT((haar_unitary(4, 1) - haar_unitary(4, 2)).norm(), 1e-3);
}

TEST(Numerics, HaarFirstMomentVanishes) {
  // E|U_00|^2 = 1/m and E U_00 = 0 for Haar measure.
  const int m = 3, n = 4000;
  cplx mean = 0.0;
  double second = 0.0;
  for (int t = 0; t < n; ++t) {
    const ComplexMatrix U = haar_unitary(m, derive_seed(5, t));
    mean += U(0, 0);
    second += std::norm(U(0, 0));
  }
  EXPECT_LT(std::abs(mean / double(n)), 0.03);
  EXPECT_NEAR(second / n, 1.0 / m, 0.02);
}

TEST(Numerics, SymplecticHomomorphism) {
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix A = haar_unitary(4, derive_seed(1, t));
    const ComplexMatrix B = haar_unitary(4, derive_seed(2, t));
    const RealMatrix lhs = symplectic_of_unitary(A * B);
    const RealMatrix rhs = symplectic_of_unitary(A) * symplectic_of_unitary(B);
    EXPECT_LT((lhs - rhs).norm(), 1e-12);
    EXPECT_TRUE(is_symplectic(lhs, 1e-12));
    EXPECT_LT((lhs * lhs.transpose() - RealMatrix::Identity(8, 8)).norm(), 1e-12);
  }
}

TEST(Numerics, SymplecticOfNonUnitaryThrows) {
  ComplexMatrix A = ComplexMatrix::Identity(2, 2);
  A(0, 1) = 0.5;
  EXPECT_THROW(symplectic_of_unitary(A), InvalidArgument);
}

TEST(Numerics, InterleavePermutation) {
  // (q1, p1 | q2, p2) with one mode each becomes (q1, q2, p1, p2).
  const RealMatrix P = xxpp_interleave_permutation(1, 1);
  RealVector x(4);
  x << 1, 2, 3, 4;
  RealVector expect(4);
  expect << 1, 3, 2, 4;
  EXPECT_EQ((P * x - expect).norm(), 0.0);
  const auto rows = xxpp_interleave_rows(2, 1);
  EXPECT_EQ(rows, (std::vector<int>{0, 1, 4, 2, 3, 5}));
}

TEST(Numerics, ComplexBasisIsUnitary) {
  const ComplexMatrix S = complex_basis_S(3);
  EXPECT_LT((S * S.adjoint() - ComplexMatrix::Identity(6, 6)).norm(), 1e-14);
}

TEST(Numerics, MinEigenvalueRejectsAsymmetric) {
  RealMatrix A(2, 2);
  A << 1, 0.5, 0, 1;
  EXPECT_THROW(min_eigenvalue_sym(A), InvalidArgument);
  A << 2, 1, 1, 2;
  EXPECT_NEAR(min_eigenvalue_sym(A), 1.0, 1e-14);
}

TEST(Numerics, DeriveSeedSpreads) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
  EXPECT_EQ(derive_seed(9, 4), derive_seed(9, 4));
}

TEST(Numerics, ParallelForCoversEveryIndexAndRethrows) {
  std::vector<int> hits(1000, 0);
  parallel_for(1000, 4, [&](int i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 3, [](int i) {
                 if (i == 7) throw InvalidArgument("boom");
               }),
               InvalidArgument);
}

TEST(Numerics, BlockDiag) {
  const RealMatrix A = RealMatrix::Constant(1, 1, 2.0);
  const RealMatrix B = RealMatrix::Identity(2, 2);
  const RealMatrix C = block_diag(A, B);
  EXPECT_EQ(C.rows(), 3);
  EXPECT_EQ(C(0, 0), 2.0);
  EXPECT_EQ(C(0, 1), 0.0);
  EXPECT_EQ(C(2, 2), 1.0);
}
