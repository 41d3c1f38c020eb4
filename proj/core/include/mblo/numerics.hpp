#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <random>

namespace mblo {

using cplx = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

using Seed = std::uint64_t;
using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent child seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Child seed for stream `index` of `seed`. Stable across platforms.
Seed derive_seed(Seed seed, std::uint64_t index);
Seed derive_seed(Seed seed, std::uint64_t a, std::uint64_t b);

/// Haar-random m x m unitary (QR of a Ginibre matrix, R diagonal made positive).
ComplexMatrix haar_unitary(int m, Seed seed);
ComplexMatrix haar_unitary(int m, Rng& rng);

bool is_unitary(const ComplexMatrix& U, double tol);

/// xxpp real representation [[Re U, -Im U], [Im U, Re U]].
RealMatrix symplectic_of_unitary(const ComplexMatrix& U);

/// Symplectic form [[0, I], [-I, 0]] in xxpp ordering.
RealMatrix symplectic_form(int m);

bool is_symplectic(const RealMatrix& G, double tol);

/// Permutation taking (q1, p1, q2, p2) block order to (q1, q2, p1, p2), where
/// the blocks have m1 and m2 modes.
RealMatrix xxpp_interleave_permutation(int m1, int m2);

/// Row index map of the same permutation: row i of the result is row src[i] of the input.
std::vector<int> xxpp_interleave_rows(int m1, int m2);

/// (1/sqrt 2) [[I, iI], [I, -iI]], mapping (q, p) to (a, a*).
ComplexMatrix complex_basis_S(int m);

/// Smallest eigenvalue of a symmetric matrix; symmetrizes first.
double min_eigenvalue_sym(const RealMatrix& A);
RealVector eigenvalues_sym(const RealMatrix& A);

double frobenius(const RealMatrix& A);

RealMatrix block_diag(const RealMatrix& A, const RealMatrix& B);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Callers store results by index.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn);

}  // namespace mblo
