#pragma once

#include "mblo/numerics.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mblo {

/// N_U N_U^T of the assembled MBLO relation.
RealMatrix noise_gram(const ComplexMatrix& U);

/// 1/2 ln((3 - 2 sqrt 2) M + 2).
double analytic_floor(int M);

/// Squeezing in dB: 10 log10(e^{2r}).
double squeezing_db(double r);

struct ThresholdReport {
  int M = 0;
  double lambda_min = 0.0;
  double r_easiness = 0.0;
  double r_floor = 0.0;
  double frobenius_NNt = 0.0;
  std::vector<std::pair<double, double>> r_hardness;  // (tvd target, r)
};

ThresholdReport threshold_from_gram(const RealMatrix& gram, const RealMatrix& V_in,
                                    const std::vector<double>& tvd_targets = {});

/// V_in defaults to vacuum (I/2) when empty.
ThresholdReport easiness_threshold(const ComplexMatrix& U, const std::vector<double>& tvd_targets = {},
                                   const RealMatrix& V_in = RealMatrix());

double tvd_bound_from_gram(double r, const RealMatrix& gram, const RealMatrix& V_in);
double tvd_bound(double r, const ComplexMatrix& U, const RealMatrix& V_in);

double hardness_from_gram(const RealMatrix& gram, const RealMatrix& V_in, double beta);
double hardness_threshold(const ComplexMatrix& U, const RealMatrix& V_in, double beta);

/// 1 / sqrt(det(V + V_id)); exact when V_id is pure and both means vanish.
double gaussian_fidelity(const RealMatrix& V, const RealMatrix& V_id);

struct SweepRecord {
  int M = 0;
  int trial = 0;
  double r_easiness = 0.0;
  double lambda_min = 0.0;
  double frob = 0.0;
};

struct SweepSummary {
  int M = 0;
  int trials = 0;
  double r_min = 0.0;
  double r_max = 0.0;
  double r_mean = 0.0;
  double r_floor = 0.0;
};

struct SweepResult {
  Seed seed = 0;
  std::vector<SweepRecord> records;  // ordered by (M, trial)
  std::vector<SweepSummary> summaries;
};

/// Haar sweep of r_easiness; trial t at size M uses seed derive_seed(seed, M, t).
SweepResult haar_sweep(const std::vector<int>& M_list, int trials, Seed seed, int jobs = 1);

std::string sweep_to_csv(const SweepResult& s);
std::string sweep_summary_json(const SweepResult& s);
std::string threshold_to_json(const ThresholdReport& t);

/// Worst-case embedding data entering the closed-form bound.
struct GapContext {
  int N0 = 0;
  int N = 0;
  double W_norm2 = 1.0;
  double tanh_r0 = 1.0;
};

struct GapReport {
  double p = 0.0;  // noisy
  double q = 0.0;  // ideal
  bool zero_branch = false;
  double gap = 0.0;         // |1 - p/q|, or the scaled |p| on the zero branch
  double det_gap = 0.0;     // |1 - sqrt(|Sigma_Q| / |Sigma_Q'|)|
  double det_bound = 0.0;   // ||dSigma||_F ||Sigma_Q^{-1}||_F
  bool det_precondition = false;  // |Tr(dSigma Sigma_Q^{-1})| <= 1/3
  double delta_sigma_frob = 0.0;
  double sigma_inv_frob = 0.0;
  double evaluated_bound = 0.0;    // subset-sum perturbation bound for this instance
  double closed_form_bound = 0.0;  // 9 (N0!)^2 N^2 ||W|| / tanh r0 ||Sigma^-1||^2 ||dSigma||; 0 without context
  bool closed_form_precondition = false;  // ||dSigma|| ||Sigma^-1|| <= 1/3 and N^2 C_max < 1/2
  double bound = 0.0;  // closed form when a context is given, evaluated otherwise
};

GapReport multiplicative_gap_check(double r, const ComplexMatrix& U, const RealMatrix& V_in, const std::vector<int>& n,
                                   const GapContext* ctx = nullptr);

}  // namespace mblo
