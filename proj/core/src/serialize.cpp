#include "mblo/graph.hpp"
#include "mblo/io_relation.hpp"
#include "mblo/noise.hpp"
#include "mblo/sampling.hpp"
#include "mblo/synthesis.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

namespace mblo {

namespace {

// 17 significant digits round-trip every double; non-finite values become null.
std::string num(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class Seq, class F>
std::string array(const Seq& seq, F&& item) {
  std::string s = "[";
  bool first = true;
  for (const auto& v : seq) {
    if (!first) s += ",";
    first = false;
    s += item(v);
  }
  return s + "]";
}

std::string int_array(const std::vector<int>& v) {
  return array(v, [](int x) { return std::to_string(x); });
}

std::string double_array(const std::vector<double>& v) { return array(v, num); }

std::string matrix(const RealMatrix& A) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    if (i) s += ",";
    s += "[";
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (j) s += ",";
      s += num(A(i, j));
    }
    s += "]";
  }
  return s + "]";
}

const char* basis_name(Basis b) { return b == Basis::P ? "P" : "Q"; }

std::string bases_array(const std::vector<Basis>& b) {
  return array(b, [](Basis x) { return std::string("\"") + basis_name(x) + "\""; });
}

}  // namespace

std::string graph_to_json(const GraphTerm& g) {
  std::string s = "{\"num_vertices\":" + std::to_string(g.num_vertices);
  s += ",\"edges\":" + array(g.edges, [](const std::pair<int, int>& e) {
         return "[" + std::to_string(e.first) + "," + std::to_string(e.second) + "]";
       });
  s += ",\"begin\":" + int_array(g.begin);
  s += ",\"end\":" + int_array(g.end);
  s += ",\"measured\":" + int_array(g.measured);
  s += ",\"bases\":" + bases_array(g.bases);
  return s + "}";
}

std::string graph_to_dot(const GraphTerm& g) {
  std::ostringstream os;
  os << "graph G {\n";
  for (int v : g.begin) os << "  " << v << " [shape=box];\n";
  for (int v : g.end) os << "  " << v << " [shape=doublecircle];\n";
  for (const auto& [u, v] : g.edges) os << "  " << u << " -- " << v << ";\n";
  os << "}\n";
  return os.str();
}

std::string io_relation_to_json(const IORelation& r) {
  return "{\"m\":" + std::to_string(r.m()) + ",\"c\":" + std::to_string(r.c()) + ",\"G\":" + matrix(r.G) +
         ",\"N\":" + matrix(r.N) + ",\"D\":" + matrix(r.D) + "}";
}

std::string plan_to_json(const SynthesisPlan& plan) {
  std::string s = "{\"M\":" + std::to_string(plan.M) + ",\"bricks\":";
  s += array(plan.bricks, [&](const Brick& b) {
    const int m = brick_first_mode(plan.M, b.row);
    return "{\"layer\":" + std::to_string(b.layer) + ",\"row\":" + std::to_string(b.row) + ",\"modes\":[" +
           std::to_string(m) + "," + std::to_string(m + 1) + "],\"beta\":" + num(b.params.beta) +
           ",\"theta\":" + num(b.params.theta) + "}";
  });
  s += ",\"final_phases\":" + double_array(plan.final_phases);
  return s + "}";
}

std::string schedule_to_json(const PhaseSchedule& sched) {
  return "{\"angles\":" + double_array(sched.angles) + ",\"bases\":" + bases_array(sched.bases) + "}";
}

std::string sweep_to_csv(const SweepResult& s) {
  std::string out = "M,trial,r_easiness,lambda_min,frob\n";
  for (const auto& r : s.records)
    out += std::to_string(r.M) + "," + std::to_string(r.trial) + "," + num(r.r_easiness) + "," + num(r.lambda_min) +
           "," + num(r.frob) + "\n";
  return out;
}

std::string sweep_summary_json(const SweepResult& s) {
  std::string out = "{\"seed\":" + std::to_string(s.seed) + ",\"summaries\":";
  out += array(s.summaries, [](const SweepSummary& x) {
    return "{\"M\":" + std::to_string(x.M) + ",\"trials\":" + std::to_string(x.trials) + ",\"r_min\":" + num(x.r_min) +
           ",\"r_max\":" + num(x.r_max) + ",\"r_mean\":" + num(x.r_mean) + ",\"r_floor\":" + num(x.r_floor) + "}";
  });
  return out + "}";
}

std::string threshold_to_json(const ThresholdReport& t) {
  std::string s = "{\"M\":" + std::to_string(t.M) + ",\"lambda_min\":" + num(t.lambda_min) +
                  ",\"r_easiness\":" + num(t.r_easiness) + ",\"r_floor\":" + num(t.r_floor) +
                  ",\"squeezing_db\":" + num(squeezing_db(t.r_easiness)) + ",\"frobenius_NNt\":" + num(t.frobenius_NNt);
  s += ",\"r_hardness\":" + array(t.r_hardness, [](const std::pair<double, double>& h) {
         return "{\"tvd\":" + num(h.first) + ",\"r\":" + num(h.second) + "}";
       });
  return s + "}";
}

std::string samples_to_csv(const std::vector<PhotonSample>& samples) {
  std::string out = "shot";
  const std::size_t M = samples.empty() ? 0 : samples.front().size();
  for (std::size_t i = 1; i <= M; ++i) out += ",n" + std::to_string(i);
  out += "\n";
  for (std::size_t s = 0; s < samples.size(); ++s) {
    out += std::to_string(s);
    for (int c : samples[s]) out += "," + std::to_string(c);
    out += "\n";
  }
  return out;
}

std::string samples_to_jsonl(const std::vector<PhotonSample>& samples) {
  std::string out;
  for (std::size_t s = 0; s < samples.size(); ++s)
    out += "{\"shot\":" + std::to_string(s) + ",\"counts\":" + int_array(samples[s]) + "}\n";
  return out;
}

}  // namespace mblo
