#include "mblo/errors.hpp"
#include "mblo/noise.hpp"
#include "mblo/oracle.hpp"
#include "mblo/sampling.hpp"
#include "mblo/synthesis.hpp"

#include <gtest/gtest.h>

using namespace mblo;

TEST(Sampling, StatesArePhysical) {
  EXPECT_TRUE(is_physical(vacuum_state(3)));
  EXPECT_TRUE(is_physical(squeezed_input(3, 1.2, 2)));
  EXPECT_TRUE(is_physical(thermal_state(2, 0.7)));
  GaussianState bad = vacuum_state(1);
  bad.cov *= 0.5;
  EXPECT_FALSE(is_physical(bad));
}

TEST(Sampling, Simulability) {
  EXPECT_TRUE(simulable(thermal_state(2, 0.5)));
  EXPECT_FALSE(simulable(squeezed_input(2, 0.3, 1)));
  EXPECT_FALSE(simulable(vacuum_state(2)));
}

TEST(Sampling, OutputStateAssembly) {
  const IORelation rel = assemble_mblo(ComplexMatrix::Identity(2, 2));
  const GaussianState out = output_state(rel, vacuum_state(2), 1.5);
  const RealMatrix expect = 0.5 * RealMatrix::Identity(4, 4) + 0.5 * std::exp(-3.0) * noise_gram(ComplexMatrix::Identity(2, 2));
  EXPECT_LT((out.cov - expect).norm(), 1e-12);

  const ComplexMatrix U = haar_unitary(2, 61);
  const GaussianState in = squeezed_input(2, 0.5, 1);
  const GaussianState far = output_state(U, in, 40.0);
  const RealMatrix S = symplectic_of_unitary(U);
  EXPECT_LT((far.cov - S * in.cov * S.transpose()).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_TRUE(is_physical(output_state(U, in, 0.7)));
}

TEST(Sampling, MeanFollowsGate) {
  const ComplexMatrix U = haar_unitary(2, 63);
  const IORelation rel = assemble_mblo(U);
  GaussianState in = vacuum_state(2);
  in.mean << 0.3, -0.2, 1.0, 0.4;
  const GaussianState out = output_state(rel, in, 1.0);
  EXPECT_LT((out.mean - rel.G * in.mean).norm(), 1e-15);
}

TEST(Sampling, SimulableBelowThresholdAndMonotone) {
  const ComplexMatrix U = haar_unitary(2, 67);
  const ThresholdReport rep = easiness_threshold(U);
  const IORelation rel = assemble_mblo(U);
  EXPECT_TRUE(simulable(output_state(rel, vacuum_state(2), 0.9 * rep.r_easiness)));
  bool seen_false = false;
  for (double r = 0.0; r < 6.0; r += 0.25) {
    const bool s = simulable(output_state(rel, squeezed_input(2, 0.3, 1), r));
    if (seen_false) EXPECT_FALSE(s);
    seen_false = seen_false || !s;
  }
  EXPECT_TRUE(seen_false);
}

TEST(Sampling, RejectsNonSimulable) {
  EXPECT_THROW(sample(squeezed_input(2, 0.3, 1), 10, 1), NonSimulable);
}

TEST(Sampling, ThermalMeanCount) {
  const double nbar = 0.8;
  const long shots = 100000;
  const auto s = sample(thermal_state(2, nbar), shots, 7);
  double mean = 0.0;
  for (const auto& x : s) mean += x[0];
  mean /= shots;
  // Bose-Einstein variance nbar (nbar + 1).
  EXPECT_NEAR(mean, nbar, 3.0 * std::sqrt(nbar * (nbar + 1) / shots));
}

TEST(Sampling, IntensityMoments) {
  // E[n_i] = E[lambda_i] = (V_qq + V_pp - 1)/2 + |mu|^2/2 for the P-mixture.
  GaussianState st = thermal_state(2, 0.3);
  st.cov(0, 2) = st.cov(2, 0) = 0.1;
  st.mean << 0.5, 0.0, -0.4, 0.2;
  const long shots = 100000;
  const auto s = sample(st, shots, 9);
  for (int i = 0; i < 2; ++i) {
    double mean = 0.0;
    for (const auto& x : s) mean += x[i];
    mean /= shots;
    const double expect =
        0.5 * (st.cov(i, i) + st.cov(2 + i, 2 + i) - 1.0) + 0.5 * (st.mean(i) * st.mean(i) + st.mean(2 + i) * st.mean(2 + i));
    EXPECT_NEAR(mean, expect, 0.02);
  }
}

TEST(Sampling, NearVacuumGivesZeros) {
  const auto s = sample(thermal_state(3, 1e-6), 1000, 3);
  long total = 0;
  for (const auto& x : s)
    for (int c : x) total += c;
  EXPECT_LE(total, 2);
}

TEST(Sampling, DeterministicAcrossJobs) {
  const GaussianState st = thermal_state(3, 0.4);
  EXPECT_EQ(sample(st, 2000, 11, 1), sample(st, 2000, 11, 4));
  EXPECT_NE(sample(st, 2000, 11, 1), sample(st, 2000, 12, 1));
}

TEST(Sampling, MatchesOracleBelowThreshold) {
  const ComplexMatrix U = haar_unitary(2, 71);
  const double r = 0.8 * easiness_threshold(U).r_easiness;
  const GaussianState out = output_state(U, squeezed_input(2, 0.4, 1), r);
  ASSERT_TRUE(simulable(out));
  const auto counts = tally(sample(out, 200000, 13));
  const auto rep = distribution_tvd(counts, [&](const std::vector<int>& n) { return gbs_probability(out.cov, n); },
                                    patterns_up_to(2, 2));
  EXPECT_LT(rep.tvd, 0.01);
}

TEST(Sampling, PatternEnumeration) {
  const auto p = patterns_up_to(2, 2);
  EXPECT_EQ(p.size(), 6u);
  EXPECT_EQ(patterns_up_to(3, 1).size(), 4u);
}

TEST(Sampling, DistributionTvdEdgeCases) {
  const std::vector<std::vector<int>> set = {{0}, {1}};
  PatternCounts c;
  c[{0}] = 10;
  const auto same = distribution_tvd(c, [](const std::vector<int>& n) { return n[0] == 0 ? 1.0 : 0.0; }, set);
  EXPECT_NEAR(same.tvd, 0.0, 1e-15);
  const auto disjoint = distribution_tvd(c, [](const std::vector<int>& n) { return n[0] == 1 ? 1.0 : 0.0; }, set);
  EXPECT_NEAR(disjoint.tvd, 1.0, 1e-15);
  // Hand-computed: empirical (0.5, 0.25, rest 0.25) against (0.6, 0.3, rest 0.1).
  PatternCounts d;
  d[{0}] = 2;
  d[{1}] = 1;
  d[{2}] = 1;
  const auto mixed = distribution_tvd(d, [](const std::vector<int>& n) { return n[0] == 0 ? 0.6 : 0.3; }, set);
  EXPECT_NEAR(mixed.in_set, 0.075, 1e-15);
  EXPECT_NEAR(mixed.tvd, 0.15, 1e-15);
  EXPECT_NEAR(mixed.residual_upper, 0.175, 1e-15);
}
