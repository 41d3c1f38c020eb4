#include "mblo/noise.hpp"
#include "mblo/sampling.hpp"
#include "mblo/synthesis.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>

using namespace mblo;

TEST(Serialize, FloatsRoundTrip) {
  SynthesisPlan plan;
  plan.M = 2;
  plan.final_phases = {0.1, 1.0 / 3.0};
  const std::string js = plan_to_json(plan);
  const auto pos = js.find("0.33333");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_EQ(std::strtod(js.c_str() + pos, nullptr), 1.0 / 3.0);
  EXPECT_NE(js.find("0.10000000000000001"), std::string::npos);
}

TEST(Serialize, SweepCsvHeaderAndRows) {
  const SweepResult s = haar_sweep({2}, 2, 5, 1);
  const std::string csv = sweep_to_csv(s);
  EXPECT_EQ(csv.rfind("M,trial,r_easiness,lambda_min,frob\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_NE(sweep_summary_json(s).find("\"r_floor\""), std::string::npos);
}

TEST(Serialize, SamplesFormats) {
  const std::vector<PhotonSample> s = {{0, 1}, {2, 0}};
  EXPECT_EQ(samples_to_csv(s), "shot,n1,n2\n0,0,1\n1,2,0\n");
  EXPECT_EQ(samples_to_jsonl(s), "{\"shot\":0,\"counts\":[0,1]}\n{\"shot\":1,\"counts\":[2,0]}\n");
}

TEST(Serialize, GraphDot) {
  const std::string dot = graph_to_dot(*chain_h(3));
  EXPECT_NE(dot.find("0 -- 1;"), std::string::npos);
  EXPECT_NE(graph_to_json(*chain_h(3)).find("\"edges\":[[0,1],[1,2]]"), std::string::npos);
}
