#pragma once

#include "mblo/numerics.hpp"

#include <vector>

namespace mblo {

/// Exact hafnian by pairing the lowest free index, memoised on the remaining
/// index mask. Dimension must be even and at most 20.
cplx hafnian(const ComplexMatrix& A);

/// Hafnian of the principal submatrix on `idx` (indices may repeat).
cplx hafnian_sub(const ComplexMatrix& A, const std::vector<int>& idx);

/// Ryser's formula with Gray-code updates; size at most 12.
cplx permanent(const ComplexMatrix& W);

/// Sigma_Q = S V S^dagger + I/2.
ComplexMatrix sigma_Q(const RealMatrix& V);

/// A = X (I - Sigma_Q^{-1}), X = [[0, I], [I, 0]].
ComplexMatrix a_matrix(const ComplexMatrix& SigmaQ);

/// Index list n (+) n selecting rows/cols of A for a photon pattern.
std::vector<int> pattern_indices(const std::vector<int>& n);

/// Photon-number probability of a zero-mean Gaussian state with covariance V.
/// Patterns with repeated photons are handled by index repetition and 1/prod n_i!.
double gbs_probability(const RealMatrix& V, const std::vector<int>& n);

struct EmbeddingResult {
  ComplexMatrix Wprime;  // N0 x N0
  ComplexMatrix W;       // N x N
  ComplexMatrix Y;       // W = Y Y^T
  ComplexMatrix U;       // M x M, top-left N x N block = Y / ||Y||_2
  double W_norm2 = 0.0;  // spectral norm of W
  double Y_norm2 = 0.0;
  int N = 0;
  int N0 = 0;
};

/// W = [[0, W' (+) I], [W'^T (+) I, 0]] with N/2 - N0 identity padding.
ComplexMatrix worst_case_W(const RealMatrix& Wprime, int N);

EmbeddingResult embed_worst_case(const RealMatrix& Wprime, int N, int M);

/// Sum over even subsets J of Haf(B_J) Haf(C_{complement of J}).
cplx haf_sum_expansion(const ComplexMatrix& B, const ComplexMatrix& C);
bool haf_sum_expansion_check(const ComplexMatrix& B, const ComplexMatrix& C, double rel_tol = 1e-9);

}  // namespace mblo
