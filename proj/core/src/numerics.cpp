#include "mblo/numerics.hpp"

#include "mblo/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mblo {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Seed derive_seed(Seed seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

Seed derive_seed(Seed seed, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(seed, a), b);
}

ComplexMatrix haar_unitary(int m, Seed seed) {
  Rng rng(seed);
  return haar_unitary(m, rng);
}

ComplexMatrix haar_unitary(int m, Rng& rng) {
  if (m < 1) throw InvalidArgument("haar_unitary: mode count must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix Z(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      Z(i, j) = cplx(re, im) / std::sqrt(2.0);
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(Z);
  ComplexMatrix Q = qr.householderQ();
  const ComplexMatrix& R = qr.matrixQR();
  for (int j = 0; j < m; ++j) {
    const cplx d = R(j, j);
    const double a = std::abs(d);
    Q.col(j) *= (a > 0.0) ? d / a : cplx(1.0, 0.0);
  }
  return Q;
}

bool is_unitary(const ComplexMatrix& U, double tol) {
  if (U.rows() != U.cols() || U.rows() == 0) return false;
  const ComplexMatrix I = ComplexMatrix::Identity(U.rows(), U.cols());
  return (U.adjoint() * U - I).norm() <= tol;
}

RealMatrix symplectic_of_unitary(const ComplexMatrix& U) {
  if (!is_unitary(U, 1e-8)) throw InvalidArgument("symplectic_of_unitary: input is not unitary");
  const int m = static_cast<int>(U.rows());
  RealMatrix G(2 * m, 2 * m);
  G.topLeftCorner(m, m) = U.real();
  G.topRightCorner(m, m) = -U.imag();
  G.bottomLeftCorner(m, m) = U.imag();
  G.bottomRightCorner(m, m) = U.real();
  return G;
}

RealMatrix symplectic_form(int m) {
  RealMatrix W = RealMatrix::Zero(2 * m, 2 * m);
  W.topRightCorner(m, m).setIdentity();
  W.bottomLeftCorner(m, m) = -RealMatrix::Identity(m, m);
  return W;
}

bool is_symplectic(const RealMatrix& G, double tol) {
  if (G.rows() != G.cols() || G.rows() % 2 != 0) return false;
  const RealMatrix W = symplectic_form(static_cast<int>(G.rows() / 2));
  return (G * W * G.transpose() - W).norm() <= tol;
}

std::vector<int> xxpp_interleave_rows(int m1, int m2) {
  if (m1 < 1 || m2 < 1) throw InvalidArgument("xxpp_interleave_permutation: block sizes must be >= 1");
  std::vector<int> src;
  src.reserve(2 * (m1 + m2));
  for (int i = 0; i < m1; ++i) src.push_back(i);
  for (int i = 0; i < m2; ++i) src.push_back(2 * m1 + i);
  for (int i = 0; i < m1; ++i) src.push_back(m1 + i);
  for (int i = 0; i < m2; ++i) src.push_back(2 * m1 + m2 + i);
  return src;
}

RealMatrix xxpp_interleave_permutation(int m1, int m2) {
  const auto src = xxpp_interleave_rows(m1, m2);
  const int n = static_cast<int>(src.size());
  RealMatrix P = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) P(i, src[i]) = 1.0;
  return P;
}

ComplexMatrix complex_basis_S(int m) {
  if (m < 1) throw InvalidArgument("complex_basis_S: mode count must be >= 1");
  const double h = 1.0 / std::sqrt(2.0);
  const cplx i(0.0, 1.0);
  ComplexMatrix S = ComplexMatrix::Zero(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    S(k, k) = h;
    S(k, m + k) = i * h;
    S(m + k, k) = h;
    S(m + k, m + k) = -i * h;
  }
  return S;
}

namespace {

RealMatrix checked_symmetrize(const RealMatrix& A) {
  if (A.rows() != A.cols() || A.rows() == 0)
    throw InvalidArgument("symmetric eigenproblem: matrix must be square and non-empty");
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidArgument("symmetric eigenproblem: matrix is not symmetric");
  return 0.5 * (A + A.transpose());
}

}  // namespace

RealVector eigenvalues_sym(const RealMatrix& A) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(checked_symmetrize(A), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double min_eigenvalue_sym(const RealMatrix& A) { return eigenvalues_sym(A).minCoeff(); }

double frobenius(const RealMatrix& A) { return A.norm(); }

RealMatrix block_diag(const RealMatrix& A, const RealMatrix& B) {
  RealMatrix C = RealMatrix::Zero(A.rows() + B.rows(), A.cols() + B.cols());
  C.topLeftCorner(A.rows(), A.cols()) = A;
  C.bottomRightCorner(B.rows(), B.cols()) = B;
  return C;
}

void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  const int workers = std::clamp(jobs, 1, n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace mblo
