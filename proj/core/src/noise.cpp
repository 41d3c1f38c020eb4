#include "mblo/noise.hpp"

#include "mblo/errors.hpp"
#include "mblo/oracle.hpp"
#include "mblo/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace mblo {

RealMatrix noise_gram(const ComplexMatrix& U) {
  const IORelation rel = assemble_mblo(U);
  return rel.N * rel.N.transpose();
}

double analytic_floor(int M) {
  if (M < 1) throw InvalidArgument("analytic_floor: M must be positive");
  return 0.5 * std::log((3.0 - 2.0 * std::numbers::sqrt2) * M + 2.0);
}

double squeezing_db(double r) { return 10.0 * std::log10(std::exp(2.0 * r)); }

namespace {

RealMatrix default_input(const RealMatrix& V_in, Eigen::Index dim) {
  if (V_in.size() == 0) return 0.5 * RealMatrix::Identity(dim, dim);
  if (V_in.rows() != dim || V_in.cols() != dim) throw InvalidArgument("input covariance has the wrong dimension");
  return V_in;
}

double inverse_frobenius(const RealMatrix& V_in) {
  Eigen::LLT<RealMatrix> llt(V_in);
  if (llt.info() != Eigen::Success) throw InvalidArgument("input covariance is not positive definite");
  const RealMatrix inv = llt.solve(RealMatrix::Identity(V_in.rows(), V_in.cols()));
  return inv.norm();
}

}  // namespace

double tvd_bound_from_gram(double r, const RealMatrix& gram, const RealMatrix& V_in) {
  if (r < 0.0) throw InvalidArgument("tvd_bound: r must be non-negative");
  const RealMatrix V = default_input(V_in, gram.rows());
  return std::exp(-r) * std::sqrt(gram.norm() * inverse_frobenius(V) / 8.0);
}

double tvd_bound(double r, const ComplexMatrix& U, const RealMatrix& V_in) {
  return tvd_bound_from_gram(r, noise_gram(U), V_in);
}

double hardness_from_gram(const RealMatrix& gram, const RealMatrix& V_in, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("hardness_threshold: beta must lie in (0, 1)");
  const RealMatrix V = default_input(V_in, gram.rows());
  return 0.5 * std::log(gram.norm() * inverse_frobenius(V) / (8.0 * beta * beta));
}

double hardness_threshold(const ComplexMatrix& U, const RealMatrix& V_in, double beta) {
  return hardness_from_gram(noise_gram(U), V_in, beta);
}

ThresholdReport threshold_from_gram(const RealMatrix& gram, const RealMatrix& V_in,
                                    const std::vector<double>& tvd_targets) {
  ThresholdReport rep;
  rep.M = static_cast<int>(gram.rows() / 2);
  rep.lambda_min = min_eigenvalue_sym(gram);
  if (!(rep.lambda_min > 0.0)) throw InvalidArgument("noise Gram matrix is not positive definite");
  rep.r_easiness = 0.5 * std::log(rep.lambda_min);
  rep.r_floor = analytic_floor(rep.M);
  rep.frobenius_NNt = gram.norm();
  for (double beta : tvd_targets) rep.r_hardness.emplace_back(beta, hardness_from_gram(gram, V_in, beta));
  return rep;
}

ThresholdReport easiness_threshold(const ComplexMatrix& U, const std::vector<double>& tvd_targets,
                                   const RealMatrix& V_in) {
  return threshold_from_gram(noise_gram(U), V_in, tvd_targets);
}

double gaussian_fidelity(const RealMatrix& V, const RealMatrix& V_id) {
  if (V.rows() != V_id.rows() || V.cols() != V_id.cols() || V.rows() != V.cols())
    throw InvalidArgument("gaussian_fidelity: covariance shapes differ");
  const double det = (V + V_id).determinant();
  if (!(det > 0.0)) throw InvalidArgument("gaussian_fidelity: V + V_id is not positive definite");
  return 1.0 / std::sqrt(det);
}

SweepResult haar_sweep(const std::vector<int>& M_list, int trials, Seed seed, int jobs) {
  if (trials < 1) throw InvalidArgument("sweep: trials must be >= 1");
  if (M_list.empty()) throw InvalidArgument("sweep: empty M list");
  for (int M : M_list)
    if (M < 2 || M % 2 != 0) throw InvalidArgument("sweep: every M must be even and >= 2");

  SweepResult out;
  out.seed = seed;
  out.records.resize(M_list.size() * static_cast<std::size_t>(trials));
  parallel_for(static_cast<int>(out.records.size()), jobs, [&](int idx) {
    const int M = M_list[idx / trials];
    const int t = idx % trials;
    const ComplexMatrix U = haar_unitary(M, derive_seed(seed, static_cast<std::uint64_t>(M), static_cast<std::uint64_t>(t)));
    const RealMatrix gram = noise_gram(U);
    SweepRecord& rec = out.records[idx];
    rec.M = M;
    rec.trial = t;
    rec.lambda_min = min_eigenvalue_sym(gram);
    rec.r_easiness = 0.5 * std::log(rec.lambda_min);
    rec.frob = gram.norm();
  });

  for (std::size_t i = 0; i < M_list.size(); ++i) {
    SweepSummary s;
    s.M = M_list[i];
    s.trials = trials;
    s.r_floor = analytic_floor(s.M);
    s.r_min = std::numeric_limits<double>::infinity();
    s.r_max = -std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (int t = 0; t < trials; ++t) {
      const double r = out.records[i * trials + t].r_easiness;
      s.r_min = std::min(s.r_min, r);
      s.r_max = std::max(s.r_max, r);
      total += r;
    }
    s.r_mean = std::clamp(total / trials, s.r_min, s.r_max);
    out.summaries.push_back(s);
  }
  return out;
}

namespace {

double double_factorial_odd(int k) {  // (2k - 1)!!
  double v = 1.0;
  for (int i = 3; i <= 2 * k - 1; i += 2) v *= i;
  return v;
}

}  // namespace

GapReport multiplicative_gap_check(double r, const ComplexMatrix& U, const RealMatrix& V_in, const std::vector<int>& n,
                                   const GapContext* ctx) {
  const IORelation rel = assemble_mblo(U);
  const int M = rel.m();
  const RealMatrix Vin = default_input(V_in, 2 * M);
  if (static_cast<int>(n.size()) != M) throw InvalidArgument("gap check: pattern length must equal M");

  const RealMatrix V_ideal = rel.G * Vin * rel.G.transpose();
  const RealMatrix noise = 0.5 * std::exp(-2.0 * r) * rel.N * rel.N.transpose();
  const RealMatrix V_noisy = V_ideal + noise;

  GapReport rep;
  rep.p = gbs_probability(V_noisy, n);
  rep.q = gbs_probability(V_ideal, n);

  const ComplexMatrix SQ = sigma_Q(V_ideal);
  const ComplexMatrix SQn = sigma_Q(V_noisy);
  const ComplexMatrix S = complex_basis_S(M);
  const ComplexMatrix dSigma = S * noise.cast<cplx>() * S.adjoint();
  const ComplexMatrix SQinv = SQ.inverse();

  rep.delta_sigma_frob = dSigma.norm();
  rep.sigma_inv_frob = SQinv.norm();
  rep.det_bound = rep.delta_sigma_frob * rep.sigma_inv_frob;
  rep.det_precondition = std::abs((dSigma * SQinv).trace()) <= 1.0 / 3.0;
  const double det_ratio = std::sqrt(std::abs(SQ.determinant() / SQn.determinant()));
  rep.det_gap = std::abs(1.0 - det_ratio);

  // Hafnian perturbation: Haf(A + C) = sum_J Haf(A_{J^c}) Haf(C_J), |C_ij| <= C_max.
  const std::vector<int> idx = pattern_indices(n);
  const ComplexMatrix A = a_matrix(SQ);
  ComplexMatrix An(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) An(a, b) = A(idx[a], idx[b]);
  const double c_max = 2.0 * rep.sigma_inv_frob * rep.sigma_inv_frob * rep.delta_sigma_frob;
  const int dim = static_cast<int>(An.rows());
  double tail = 0.0;
  for (std::uint32_t J = 1; J < (1u << dim); ++J) {
    const int pc = std::popcount(J);
    if (pc % 2 != 0) continue;
    std::vector<int> rest;
    for (int i = 0; i < dim; ++i)
      if (!((J >> i) & 1u)) rest.push_back(i);
    tail += std::abs(hafnian_sub(An, rest)) * double_factorial_odd(pc / 2) * std::pow(c_max, pc / 2);
  }
  const double haf_ideal = std::abs(hafnian(An));
  rep.zero_branch = haf_ideal <= 1e-12 * std::max(1.0, An.cwiseAbs().maxCoeff());

  if (rep.zero_branch) {
    double fact = 1.0;
    for (int k : n)
      for (int c = 2; c <= k; ++c) fact *= c;
    // Scaled noisy probability |Haf(A')| against the subset-sum tail.
    rep.gap = std::abs(rep.p) * fact * std::sqrt(std::abs(SQn.determinant()));
    rep.evaluated_bound = tail;
  } else {
    rep.gap = std::abs(1.0 - rep.p / rep.q);
    const double h = tail / haf_ideal;
    rep.evaluated_bound = rep.det_bound + (1.0 + rep.det_bound) * h;
  }

  if (ctx) {
    double f0 = 1.0;
    for (int i = 2; i <= ctx->N0; ++i) f0 *= i;
    rep.closed_form_bound = 9.0 * f0 * f0 * ctx->N * ctx->N * ctx->W_norm2 / ctx->tanh_r0 * rep.sigma_inv_frob *
                            rep.sigma_inv_frob * rep.delta_sigma_frob;
    rep.closed_form_precondition = rep.det_bound <= 1.0 / 3.0 && ctx->N * ctx->N * c_max < 0.5;
    rep.bound = rep.closed_form_bound;
  } else {
    rep.bound = rep.evaluated_bound;
  }
  return rep;
}

}  // namespace mblo
