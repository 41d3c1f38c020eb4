#include "helpers.hpp"
#include "mblo/errors.hpp"
#include "mblo/oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>

using namespace mblo;
using testing_helpers::random_complex_symmetric;

namespace {

// Sum over perfect matchings, no memoisation.
cplx naive_hafnian(const ComplexMatrix& A, std::vector<int> idx) {
  if (idx.empty()) return 1.0;
  const int i = idx[0];
  cplx acc = 0.0;
  for (std::size_t k = 1; k < idx.size(); ++k) {
    std::vector<int> rest;
    for (std::size_t l = 1; l < idx.size(); ++l)
      if (l != k) rest.push_back(idx[l]);
    acc += A(i, idx[k]) * naive_hafnian(A, rest);
  }
  return acc;
}

cplx naive_hafnian(const ComplexMatrix& A) {
  std::vector<int> idx(A.rows());
  std::iota(idx.begin(), idx.end(), 0);
  return naive_hafnian(A, idx);
}

cplx naive_permanent(const ComplexMatrix& W) {
  std::vector<int> p(W.rows());
  std::iota(p.begin(), p.end(), 0);
  cplx acc = 0.0;
  do {
    cplx prod = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) prod *= W(i, p[i]);
    acc += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return acc;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Two-mode Fock-space oracle: squeezed inputs with signed tanh, then a_k^dag -> sum_j U_jk b_j^dag.
std::map<std::pair<int, int>, double> fock_probabilities(const ComplexMatrix& U, double r1, double r2, int cutoff) {
  auto coeff = [](double r, int k) -> cplx {
    if (k % 2) return 0.0;
    const int n = k / 2;
    // r > 0 squeezes q; r < 0 squeezes p.
    return std::pow(-std::tanh(r), n) * std::sqrt(factorial(k)) / (std::pow(2.0, n) * factorial(n)) /
           std::sqrt(std::cosh(r));
  };
  auto binom = [](int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); };
  std::map<std::pair<int, int>, cplx> amp;
  for (int k1 = 0; k1 <= cutoff; k1 += 2)
    for (int k2 = 0; k1 + k2 <= cutoff; k2 += 2) {
      const cplx c = coeff(r1, k1) * coeff(r2, k2) / std::sqrt(factorial(k1) * factorial(k2));
      for (int i = 0; i <= k1; ++i)
        for (int j = 0; j <= k2; ++j) {
          const int n0 = i + j, n1 = k1 + k2 - n0;
          const cplx term = c * binom(k1, i) * std::pow(U(0, 0), i) * std::pow(U(1, 0), k1 - i) * binom(k2, j) *
                            std::pow(U(0, 1), j) * std::pow(U(1, 1), k2 - j) *
                            std::sqrt(factorial(n0) * factorial(n1));
          amp[{n0, n1}] += term;
        }
    }
  std::map<std::pair<int, int>, double> prob;
  for (const auto& [k, a] : amp) prob[k] = std::norm(a);
  return prob;
}

}  // namespace

TEST(Hafnian, TrivialValues) {
  ComplexMatrix A(2, 2);
  A << 0, 1, 1, 0;
  EXPECT_NEAR(std::abs(hafnian(A) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(hafnian(ComplexMatrix::Ones(4, 4)).real(), 3.0, 1e-12);
  EXPECT_NEAR(hafnian(ComplexMatrix::Ones(6, 6)).real(), 15.0, 1e-12);
  EXPECT_EQ(hafnian(ComplexMatrix(0, 0)), cplx(1.0));
}

TEST(Hafnian, MatchesNaiveMatchingSum) {
  std::mt19937_64 rng(1);
  for (int n = 2; n <= 10; n += 2) {
    const ComplexMatrix A = random_complex_symmetric(n, rng);
    const cplx h = hafnian(A);
    EXPECT_LT(std::abs(h - naive_hafnian(A)), 1e-9 * std::max(1.0, std::abs(h))) << n;
  }
}

TEST(Hafnian, RejectsBadInput) {
  EXPECT_THROW(hafnian(ComplexMatrix::Ones(3, 3)), InvalidArgument);
  ComplexMatrix A = ComplexMatrix::Ones(2, 2);
  A(0, 1) = 2.0;
  EXPECT_THROW(hafnian(A), InvalidArgument);
}

TEST(Hafnian, BlockMultiplicative) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix A = random_complex_symmetric(4, rng), B = random_complex_symmetric(6, rng);
    ComplexMatrix C = ComplexMatrix::Zero(10, 10);
    C.topLeftCorner(4, 4) = A;
    C.bottomRightCorner(6, 6) = B;
    EXPECT_LT(std::abs(hafnian(C) - hafnian(A) * hafnian(B)), 1e-9 * std::max(1.0, std::abs(hafnian(C))));
  }
}

TEST(Hafnian, MultilinearInRowColumnPair) {
  std::mt19937_64 rng(3);
  const ComplexMatrix u = random_complex_symmetric(6, rng);
  const ComplexMatrix noise = random_complex_symmetric(6, rng);
  ComplexMatrix v = u, w = u;
  const cplx a(0.3, -1.2), b(2.0, 0.5);
  for (int j = 0; j < 6; ++j) {
    if (j == 2) continue;
    v(2, j) = v(j, 2) = noise(2, j);
    w(2, j) = w(j, 2) = a * u(2, j) + b * v(2, j);
  }
  const cplx lhs = hafnian(w);
  const cplx rhs = a * hafnian(u) + b * hafnian(v);
  EXPECT_LT(std::abs(lhs - rhs), 1e-9 * std::max(1.0, std::abs(lhs)));
}

TEST(Permanent, TrivialValues) {
  EXPECT_NEAR(permanent(ComplexMatrix::Identity(3, 3)).real(), 1.0, 1e-15);
  EXPECT_NEAR(permanent(ComplexMatrix::Ones(3, 3)).real(), 6.0, 1e-12);
  EXPECT_NEAR(permanent(ComplexMatrix::Ones(1, 1)).real(), 1.0, 1e-15);
}

TEST(Permanent, MatchesPermutationSum) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> tern(-1, 1);
  for (int t = 0; t < 20; ++t) {
    ComplexMatrix W(4, 4);
    for (int i = 0; i < 16; ++i) W.data()[i] = tern(rng);
    EXPECT_LT(std::abs(permanent(W) - naive_permanent(W)), 1e-12);
  }
  const ComplexMatrix Z = random_complex_symmetric(6, rng) + ComplexMatrix::Random(6, 6);
  EXPECT_LT(std::abs(permanent(Z) - naive_permanent(Z)), 1e-9 * std::abs(naive_permanent(Z)));
}

TEST(Permanent, HafnianBridge) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 5; ++n) {
    const ComplexMatrix W = ComplexMatrix::Random(n, n);
    ComplexMatrix B = ComplexMatrix::Zero(2 * n, 2 * n);
    B.topRightCorner(n, n) = W;
    B.bottomLeftCorner(n, n) = W.transpose();
    EXPECT_LT(std::abs(hafnian(B) - permanent(W)), 1e-10 * std::max(1.0, std::abs(permanent(W))));
  }
}

TEST(GbsProbability, VacuumAndSingleModeSqueezing) {
  EXPECT_NEAR(gbs_probability(0.5 * RealMatrix::Identity(4, 4), {0, 0}), 1.0, 1e-14);
  const double r = 0.7;
  RealMatrix V = RealMatrix::Zero(2, 2);
  V(0, 0) = 0.5 * std::exp(-2 * r);
  V(1, 1) = 0.5 * std::exp(2 * r);
  EXPECT_NEAR(gbs_probability(V, {0}), 1.0 / std::cosh(r), 1e-14);
  EXPECT_NEAR(gbs_probability(V, {1}), 0.0, 1e-15);
  // <2|S|0>^2 = tanh^2 / (2 cosh).
  EXPECT_NEAR(gbs_probability(V, {2}), std::pow(std::tanh(r), 2) / (2 * std::cosh(r)), 1e-14);
}

TEST(GbsProbability, MatchesTruncatedFockOracle) {
  const double r1 = 0.4, r2 = -0.3;
  for (int t = 0; t < 5; ++t) {
    const ComplexMatrix U = haar_unitary(2, derive_seed(33, t));
    RealMatrix Vin = RealMatrix::Zero(4, 4);
    Vin(0, 0) = 0.5 * std::exp(-2 * r1);
    Vin(2, 2) = 0.5 * std::exp(2 * r1);
    Vin(1, 1) = 0.5 * std::exp(-2 * r2);
    Vin(3, 3) = 0.5 * std::exp(2 * r2);
    const RealMatrix S = symplectic_of_unitary(U);
    const RealMatrix V = S * Vin * S.transpose();
    const auto fock = fock_probabilities(U, r1, r2, 8);
    double in_range = 0.0;
    for (int n0 = 0; n0 <= 4; ++n0)
      for (int n1 = 0; n0 + n1 <= 4; ++n1) {
        const auto it = fock.find({n0, n1});
        const double pf = it == fock.end() ? 0.0 : it->second;
        EXPECT_NEAR(gbs_probability(V, {n0, n1}), pf, 1e-12) << n0 << "," << n1;
        if (n0 <= 2 && n1 <= 2) in_range += pf;
      }
    EXPECT_LE(in_range, 1.0 + 1e-12);
  }
}

TEST(Embedding, InvariantsHold) {
  for (const RealMatrix& Wp : {RealMatrix(RealMatrix::Ones(1, 1)), RealMatrix((RealMatrix(2, 2) << 1, 1, 0, 1).finished()),
                               RealMatrix((RealMatrix(2, 2) << 1, -1, 1, 1).finished())}) {
    const int N = 2 * static_cast<int>(Wp.rows()) + 2;
    const EmbeddingResult e = embed_worst_case(Wp, N, 2 * N);
    EXPECT_TRUE(is_unitary(e.U, 1e-10));
    EXPECT_LT((e.U.topLeftCorner(N, N) * e.Y_norm2 - e.Y).norm(), 1e-10);
    EXPECT_LT((e.Y * e.Y.transpose() - e.W).norm(), 1e-10);
    EXPECT_NEAR(e.Y_norm2 * e.Y_norm2, e.W_norm2, 1e-10);
    const cplx per = permanent(e.Wprime);
    EXPECT_LT(std::abs(hafnian(e.W) - per), 1e-10);
    ComplexMatrix WW = ComplexMatrix::Zero(2 * N, 2 * N);
    WW.topLeftCorner(N, N) = e.W;
    WW.bottomRightCorner(N, N) = e.W;
    EXPECT_LT(std::abs(hafnian(WW) - per * per), 1e-9);
  }
}

TEST(Embedding, IdealProbabilityFollowsPermanent) {
  const double r0 = 0.5;
  for (const RealMatrix& Wp : {RealMatrix(RealMatrix::Ones(1, 1)), RealMatrix((RealMatrix(2, 2) << 1, 1, 0, 1).finished()),
                               RealMatrix(RealMatrix::Zero(1, 1))}) {
    const EmbeddingResult e = embed_worst_case(Wp, 4, 8);
    RealMatrix Vin = 0.5 * RealMatrix::Identity(16, 16);
    for (int i = 0; i < 4; ++i) {
      Vin(i, i) = 0.5 * std::exp(-2 * r0);
      Vin(8 + i, 8 + i) = 0.5 * std::exp(2 * r0);
    }
    const RealMatrix S = symplectic_of_unitary(e.U);
    const double q = gbs_probability(S * Vin * S.transpose(), {1, 1, 1, 1, 0, 0, 0, 0});
    const double per = permanent(e.Wprime).real();
    const double expect = std::pow(std::tanh(r0) / e.W_norm2, 4) * per * per / std::pow(std::cosh(r0), 4);
    EXPECT_NEAR(q, expect, 1e-14);
  }
}

TEST(Embedding, RejectsBadSizes) {
  EXPECT_THROW(embed_worst_case(RealMatrix::Ones(1, 1), 4, 6), InvalidArgument);
  EXPECT_THROW(embed_worst_case(RealMatrix::Ones(2, 2), 2, 8), InvalidArgument);
  EXPECT_THROW(embed_worst_case(RealMatrix::Constant(1, 1, 2.0), 4, 8), InvalidArgument);
}

TEST(HafSumExpansion, ReducesAndHolds) {
  std::mt19937_64 rng(6);
  const ComplexMatrix B = random_complex_symmetric(6, rng), C = random_complex_symmetric(6, rng);
  const ComplexMatrix Z = ComplexMatrix::Zero(6, 6);
  EXPECT_LT(std::abs(haf_sum_expansion(B, Z) - hafnian(B)), 1e-12 * std::abs(hafnian(B)));
  EXPECT_LT(std::abs(haf_sum_expansion(Z, C) - hafnian(C)), 1e-12 * std::abs(hafnian(C)));
  EXPECT_TRUE(haf_sum_expansion_check(B, C));
  EXPECT_TRUE(haf_sum_expansion_check(random_complex_symmetric(8, rng), random_complex_symmetric(8, rng)));
}
