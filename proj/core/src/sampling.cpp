#include "mblo/sampling.hpp"

#include "mblo/errors.hpp"
#include "mblo/synthesis.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

namespace mblo {

GaussianState vacuum_state(int M) {
  if (M < 1) throw InvalidArgument("vacuum_state: M must be positive");
  return {RealVector::Zero(2 * M), 0.5 * RealMatrix::Identity(2 * M, 2 * M)};
}

GaussianState squeezed_input(int M, double r0, int K) {
  if (K < 0 || K > M) throw InvalidArgument("squeezed_input: K must lie in [0, M]");
  if (r0 < 0.0) throw InvalidArgument("squeezed_input: r0 must be non-negative");
  GaussianState s = vacuum_state(M);
  for (int i = 0; i < K; ++i) {
    s.cov(i, i) = 0.5 * std::exp(-2.0 * r0);
    s.cov(M + i, M + i) = 0.5 * std::exp(2.0 * r0);
  }
  return s;
}

GaussianState thermal_state(int M, double nbar) {
  if (nbar < 0.0) throw InvalidArgument("thermal_state: nbar must be non-negative");
  GaussianState s = vacuum_state(M);
  s.cov *= 1.0 + 2.0 * nbar;
  return s;
}

bool is_physical(const GaussianState& s, double tol) {
  const auto n = s.cov.rows();
  if (n != s.cov.cols() || n != s.mean.size() || n % 2 != 0) return false;
  if ((s.cov - s.cov.transpose()).cwiseAbs().maxCoeff() > tol) return false;
  const ComplexMatrix H = s.cov.cast<cplx>() + cplx(0.0, 0.5) * symplectic_form(static_cast<int>(n / 2)).cast<cplx>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (H + H.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

GaussianState output_state(const IORelation& rel, const GaussianState& in, double r) {
  if (rel.G.cols() != in.mean.size()) throw InvalidArgument("output_state: input state has the wrong mode count");
  GaussianState out;
  out.mean = rel.G * in.mean;
  out.cov = rel.G * in.cov * rel.G.transpose() + 0.5 * std::exp(-2.0 * r) * rel.N * rel.N.transpose();
  out.cov = 0.5 * (out.cov + out.cov.transpose());
  return out;
}

GaussianState output_state(const ComplexMatrix& U, const GaussianState& in, double r) {
  return output_state(assemble_mblo(U), in, r);
}

bool simulable(const GaussianState& s) {
  const auto n = s.cov.rows();
  return min_eigenvalue_sym(s.cov - 0.5 * RealMatrix::Identity(n, n)) > 1e-12;
}

std::vector<PhotonSample> sample(const GaussianState& s, long shots, Seed seed, int jobs) {
  if (shots < 0) throw InvalidArgument("sample: shots must be non-negative");
  if (!simulable(s))
    throw NonSimulable("non-simulable regime: cov - I/2 is not positive definite, the P-function is not a density");
  const int M = s.modes();
  const auto n = s.cov.rows();

  // Symmetric square root of cov - I/2, tiny negative eigenvalues clipped.
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(s.cov - 0.5 * RealMatrix::Identity(n, n));
  RealVector ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-12) throw NonSimulable("non-simulable regime: negative P-covariance eigenvalue");
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  const RealMatrix L = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();

  std::vector<PhotonSample> out(static_cast<std::size_t>(shots));
  parallel_for(static_cast<int>(shots), jobs, [&](int shot) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(shot)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    RealVector z(n);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = gauss(rng);
    const RealVector x = s.mean + L * z;
    PhotonSample counts(M, 0);
    for (int i = 0; i < M; ++i) {
      const double lambda = 0.5 * (x(i) * x(i) + x(M + i) * x(M + i));
      if (lambda > 0.0) counts[i] = std::poisson_distribution<int>(lambda)(rng);
    }
    out[shot] = std::move(counts);
  });
  return out;
}

PatternCounts tally(const std::vector<PhotonSample>& samples) {
  PatternCounts c;
  for (const auto& s : samples) ++c[s];
  return c;
}

std::vector<std::vector<int>> patterns_up_to(int M, int max_total) {
  if (M < 1 || max_total < 0) throw InvalidArgument("patterns_up_to: need M >= 1 and max_total >= 0");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(M, 0);
  auto rec = [&](auto&& self, int mode, int left) -> void {
    if (mode == M) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[mode] = k;
      self(self, mode + 1, left - k);
    }
    cur[mode] = 0;
  };
  rec(rec, 0, max_total);
  return out;
}

TvdReport distribution_tvd(const PatternCounts& empirical,
                           const std::function<double(const std::vector<int>&)>& exact,
                           const std::vector<std::vector<int>>& pattern_set) {
  long total = 0;
  for (const auto& [_, c] : empirical) total += c;
  TvdReport rep;
  double emp_in = 0.0, exact_in = 0.0;
  for (const auto& pat : pattern_set) {
    const auto it = empirical.find(pat);
    const double e = (it == empirical.end() || total == 0) ? 0.0 : static_cast<double>(it->second) / total;
    const double p = exact(pat);
    rep.in_set += 0.5 * std::abs(e - p);
    emp_in += e;
    exact_in += p;
  }
  const double emp_out = std::max(0.0, (total == 0 ? 0.0 : 1.0) - emp_in);
  const double exact_out = std::max(0.0, 1.0 - exact_in);
  rep.tvd = rep.in_set + 0.5 * std::abs(emp_out - exact_out);
  rep.residual_upper = 0.5 * (emp_out + exact_out);
  return rep;
}

}  // namespace mblo
