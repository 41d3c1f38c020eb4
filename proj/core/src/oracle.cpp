#include "mblo/oracle.hpp"

#include "mblo/errors.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

namespace mblo {

namespace {

void check_symmetric(const ComplexMatrix& A) {
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidArgument("hafnian: matrix is not symmetric");
}

}  // namespace

cplx hafnian(const ComplexMatrix& A) {
  if (A.rows() != A.cols()) throw InvalidArgument("hafnian: matrix must be square");
  const int n = static_cast<int>(A.rows());
  if (n % 2 != 0) throw InvalidArgument("hafnian: dimension must be even");
  if (n > 20) throw InvalidArgument("hafnian: dimension limited to 20");
  if (n == 0) return 1.0;
  check_symmetric(A);

  const std::uint32_t full = (1u << n) - 1u;
  std::vector<cplx> memo(std::size_t{1} << n);
  std::vector<char> done(std::size_t{1} << n, 0);
  std::function<cplx(std::uint32_t)> haf = [&](std::uint32_t mask) -> cplx {
    if (mask == 0) return 1.0;
    if (done[mask]) return memo[mask];
    const int i = std::countr_zero(mask);
    const std::uint32_t rest = mask & ~(1u << i);
    cplx acc = 0.0;
    for (std::uint32_t r = rest; r; r &= r - 1) {
      const int j = std::countr_zero(r);
      const cplx a = A(i, j);
      if (a != 0.0) acc += a * haf(rest & ~(1u << j));
    }
    done[mask] = 1;
    memo[mask] = acc;
    return acc;
  };
  return haf(full);
}

cplx hafnian_sub(const ComplexMatrix& A, const std::vector<int>& idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  ComplexMatrix B(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b) B(a, b) = A(idx[a], idx[b]);
  return hafnian(B);
}

cplx permanent(const ComplexMatrix& W) {
  if (W.rows() != W.cols()) throw InvalidArgument("permanent: matrix must be square");
  const int n = static_cast<int>(W.rows());
  if (n > 12) throw InvalidArgument("permanent: size limited to 12");
  if (n == 0) return 1.0;
  ComplexVector rowsum = ComplexVector::Zero(n);
  cplx total = 0.0;
  std::uint32_t gray = 0;
  for (std::uint32_t k = 1; k < (1u << n); ++k) {
    const std::uint32_t next = k ^ (k >> 1);
    const int j = std::countr_zero(next ^ gray);
    if (next & (1u << j))
      rowsum += W.col(j);
    else
      rowsum -= W.col(j);
    gray = next;
    cplx prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= rowsum(i);
    total += (std::popcount(gray) % 2 == 0) ? prod : -prod;
  }
  return (n % 2 == 0) ? total : -total;
}

ComplexMatrix sigma_Q(const RealMatrix& V) {
  if (V.rows() != V.cols() || V.rows() % 2 != 0 || V.rows() == 0)
    throw InvalidArgument("sigma_Q: covariance must be 2M x 2M");
  const int M = static_cast<int>(V.rows() / 2);
  const ComplexMatrix S = complex_basis_S(M);
  return S * V.cast<cplx>() * S.adjoint() + 0.5 * ComplexMatrix::Identity(2 * M, 2 * M);
}

ComplexMatrix a_matrix(const ComplexMatrix& SigmaQ) {
  const auto n = SigmaQ.rows();
  const int M = static_cast<int>(n / 2);
  ComplexMatrix X = ComplexMatrix::Zero(n, n);
  X.topRightCorner(M, M).setIdentity();
  X.bottomLeftCorner(M, M).setIdentity();
  const ComplexMatrix inv = SigmaQ.inverse();
  return X * (ComplexMatrix::Identity(n, n) - inv);
}

std::vector<int> pattern_indices(const std::vector<int>& n) {
  const int M = static_cast<int>(n.size());
  std::vector<int> idx;
  for (int half = 0; half < 2; ++half)
    for (int i = 0; i < M; ++i) {
      if (n[i] < 0) throw InvalidArgument("photon pattern entries must be non-negative");
      for (int c = 0; c < n[i]; ++c) idx.push_back(i + half * M);
    }
  return idx;
}

double gbs_probability(const RealMatrix& V, const std::vector<int>& n) {
  const ComplexMatrix SQ = sigma_Q(V);
  if (static_cast<Eigen::Index>(n.size()) * 2 != V.rows())
    throw InvalidArgument("gbs_probability: pattern length must equal the mode count");
  Eigen::LLT<ComplexMatrix> llt(SQ);
  if (llt.info() != Eigen::Success) throw InvalidArgument("gbs_probability: Sigma_Q is not positive definite");
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < SQ.rows(); ++i) logdet += 2.0 * std::log(std::real(llt.matrixL()(i, i)));
  const ComplexMatrix A = a_matrix(SQ);
  double fact = 1.0;
  for (int k : n)
    for (int c = 2; c <= k; ++c) fact *= c;
  const cplx h = hafnian_sub(A, pattern_indices(n));
  return std::real(h) / fact * std::exp(-0.5 * logdet);
}

ComplexMatrix worst_case_W(const RealMatrix& Wprime, int N) {
  const int N0 = static_cast<int>(Wprime.rows());
  if (Wprime.rows() != Wprime.cols() || N0 < 1) throw InvalidArgument("worst_case_W: W' must be square and non-empty");
  if (N % 2 != 0 || N / 2 < N0) throw InvalidArgument("worst_case_W: need N even with N/2 >= N0");
  const int h = N / 2;
  RealMatrix K = RealMatrix::Zero(h, h);
  K.topLeftCorner(N0, N0) = Wprime;
  for (int i = N0; i < h; ++i) K(i, i) = 1.0;
  RealMatrix W = RealMatrix::Zero(N, N);
  W.topRightCorner(h, h) = K;
  W.bottomLeftCorner(h, h) = K.transpose();
  return W.cast<cplx>();
}

namespace {

ComplexMatrix psd_sqrt(const ComplexMatrix& H) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (H + H.adjoint()));
  const RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

EmbeddingResult embed_worst_case(const RealMatrix& Wprime, int N, int M) {
  const int N0 = static_cast<int>(Wprime.rows());
  if (N < 2 * N0) throw InvalidArgument("embed_worst_case: need N >= 2 N0");
  if (M < 2 * N) throw InvalidArgument("embed_worst_case: need M >= 2N");
  for (Eigen::Index i = 0; i < Wprime.size(); ++i) {
    const double w = Wprime.data()[i];
    if (w != -1.0 && w != 0.0 && w != 1.0) throw InvalidArgument("embed_worst_case: W' entries must be in {-1, 0, 1}");
  }

  EmbeddingResult out;
  out.N = N;
  out.N0 = N0;
  out.Wprime = Wprime.cast<cplx>();
  out.W = worst_case_W(Wprime, N);

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(out.W.real());
  ComplexVector root(N);
  for (int i = 0; i < N; ++i) root(i) = std::sqrt(cplx(es.eigenvalues()(i), 0.0));
  out.Y = es.eigenvectors().cast<cplx>() * root.asDiagonal();
  out.W_norm2 = es.eigenvalues().cwiseAbs().maxCoeff();
  out.Y_norm2 = Eigen::JacobiSVD<ComplexMatrix>(out.Y).singularValues()(0);
  if (out.Y_norm2 <= 0.0) throw InvalidArgument("embed_worst_case: W vanishes");

  const ComplexMatrix A = out.Y / out.Y_norm2;
  const ComplexMatrix I = ComplexMatrix::Identity(N, N);
  ComplexMatrix D(2 * N, 2 * N);
  D.topLeftCorner(N, N) = A;
  D.topRightCorner(N, N) = psd_sqrt(I - A * A.adjoint());
  D.bottomLeftCorner(N, N) = psd_sqrt(I - A.adjoint() * A);
  D.bottomRightCorner(N, N) = -A.adjoint();

  // Re-orthonormalise; positive R diagonal keeps the leading block intact to rounding.
  Eigen::HouseholderQR<ComplexMatrix> qr(D);
  ComplexMatrix Q = qr.householderQ();
  for (int j = 0; j < 2 * N; ++j) {
    const cplx d = qr.matrixQR()(j, j);
    if (std::abs(d) > 0.0) Q.col(j) *= d / std::abs(d);
  }
  out.U = ComplexMatrix::Identity(M, M);
  out.U.topLeftCorner(2 * N, 2 * N) = Q;
  return out;
}

cplx haf_sum_expansion(const ComplexMatrix& B, const ComplexMatrix& C) {
  if (B.rows() != C.rows() || B.cols() != C.cols() || B.rows() != B.cols())
    throw InvalidArgument("haf_sum_expansion: B and C must be square of equal size");
  const int n = static_cast<int>(B.rows());
  if (n > 16) throw InvalidArgument("haf_sum_expansion: dimension limited to 16");
  cplx total = 0.0;
  for (std::uint32_t J = 0; J < (1u << n); ++J) {
    if (std::popcount(J) % 2 != 0) continue;
    std::vector<int> in, out;
    for (int i = 0; i < n; ++i) ((J >> i) & 1u ? in : out).push_back(i);
    total += hafnian_sub(B, in) * hafnian_sub(C, out);
  }
  return total;
}

bool haf_sum_expansion_check(const ComplexMatrix& B, const ComplexMatrix& C, double rel_tol) {
  const cplx lhs = hafnian(B + C);
  const cplx rhs = haf_sum_expansion(B, C);
  return std::abs(lhs - rhs) <= rel_tol * std::max(1.0, std::abs(lhs));
}

}  // namespace mblo
