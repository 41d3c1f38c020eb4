#pragma once

#include "mblo/io_relation.hpp"
#include "mblo/numerics.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace mblo {

struct GaussianState {
  RealVector mean;  // xxpp
  RealMatrix cov;

  int modes() const { return static_cast<int>(mean.size() / 2); }
};

GaussianState vacuum_state(int M);

/// q-squeezed vacuum (q variance e^{-2 r0}/2) on the first K modes, vacuum elsewhere.
GaussianState squeezed_input(int M, double r0, int K);

/// Thermal state with mean photon number nbar in every mode.
GaussianState thermal_state(int M, double nbar);

/// cov + (i/2) Omega >= 0 within tol.
bool is_physical(const GaussianState& s, double tol = 1e-8);

GaussianState output_state(const IORelation& rel, const GaussianState& in, double r);
GaussianState output_state(const ComplexMatrix& U, const GaussianState& in, double r);

/// lambda_min(cov - I/2) > 1e-12.
bool simulable(const GaussianState& s);

using PhotonSample = std::vector<int>;

/// Positive-P sampler: x ~ N(mean, cov - I/2), lambda_i = (q_i^2 + p_i^2)/2,
/// n_i ~ Poisson(lambda_i). Shot s uses the stream derive_seed(seed, s).
std::vector<PhotonSample> sample(const GaussianState& s, long shots, Seed seed, int jobs = 1);

using PatternCounts = std::map<std::vector<int>, long>;
PatternCounts tally(const std::vector<PhotonSample>& samples);

/// All patterns over M modes with at most `max_total` photons.
std::vector<std::vector<int>> patterns_up_to(int M, int max_total);

struct TvdReport {
  double tvd = 0.0;             // half-L1 over the set plus the lumped complement bin
  double in_set = 0.0;          // half-L1 restricted to the set
  double residual_upper = 0.0;  // (outside mass of both) / 2
};

TvdReport distribution_tvd(const PatternCounts& empirical,
                           const std::function<double(const std::vector<int>&)>& exact,
                           const std::vector<std::vector<int>>& pattern_set);

std::string samples_to_csv(const std::vector<PhotonSample>& samples);
std::string samples_to_jsonl(const std::vector<PhotonSample>& samples);

}  // namespace mblo
