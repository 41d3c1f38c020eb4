#include "mblo/errors.hpp"
#include "mblo/noise.hpp"
#include "mblo/oracle.hpp"
#include "mblo/sampling.hpp"
#include "mblo/synthesis.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace mblo;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailure = 2;
constexpr int kRefused = 3;
constexpr int kUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Source {
  int haar = 0;
  std::string input;
  Seed seed = 0;
};

Seed default_seed() {
  const char* env = std::getenv("MBLO_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw UsageError("MBLO_SEED must be a non-negative integer");
  return v;
}

void add_source(CLI::App* cmd, Source& src) {
  auto* haar = cmd->add_option("--haar", src.haar, "Haar-random unitary with this many modes");
  auto* input = cmd->add_option("--input", src.input, "JSON file holding a complex matrix")->check(CLI::ExistingFile);
  haar->excludes(input);
  cmd->add_option("--seed", src.seed, "RNG seed (default: $MBLO_SEED or 0)");
}

double entry_real(const json& v, bool& imag_seen, double& imag) {
  if (v.is_number()) {
    imag = 0.0;
    return v.get<double>();
  }
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    imag_seen = true;
    imag = v[1].get<double>();
    return v[0].get<double>();
  }
  throw UsageError("matrix entries must be numbers or [re, im] pairs");
}

// Accepts {"re": [[..]], "im": [[..]]} or a nested array of numbers / [re, im] pairs.
ComplexMatrix read_matrix(const std::string& path) {
  std::ifstream in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  auto rows_of = [](const json& a) {
    if (!a.is_array() || a.empty() || !a[0].is_array()) throw UsageError("matrix must be a non-empty array of rows");
    return std::make_pair(a.size(), a[0].size());
  };
  if (j.is_object()) {
    if (!j.contains("re")) throw UsageError("matrix object needs a \"re\" field");
    const auto [r, c] = rows_of(j["re"]);
    ComplexMatrix U = ComplexMatrix::Zero(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t k = 0; k < c; ++k) {
        const double re = j["re"].at(i).at(k).get<double>();
        const double im = j.contains("im") ? j["im"].at(i).at(k).get<double>() : 0.0;
        U(i, k) = cplx(re, im);
      }
    return U;
  }
  const auto [r, c] = rows_of(j);
  ComplexMatrix U(r, c);
  bool seen = false;
  for (std::size_t i = 0; i < r; ++i) {
    if (j[i].size() != c) throw UsageError("matrix rows have different lengths");
    for (std::size_t k = 0; k < c; ++k) {
      double im = 0.0;
      const double re = entry_real(j[i][k], seen, im);
      U(i, k) = cplx(re, im);
    }
  }
  return U;
}

ComplexMatrix load_unitary(const Source& src) {
  if (src.haar == 0 && src.input.empty()) throw UsageError("one of --haar or --input is required");
  if (!src.input.empty()) return read_matrix(src.input);
  if (src.haar < 2 || src.haar % 2 != 0) throw UsageError("--haar needs an even mode count >= 2");
  return haar_unitary(src.haar, src.seed);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct InputSpec {
  std::string kind = "vacuum";
  double r0 = 0.0;
  int K = 1;
};

void add_input_spec(CLI::App* cmd, InputSpec& in) {
  cmd->add_option("--state", in.kind, "Input state")->check(CLI::IsMember({"vacuum", "squeezed"}));
  cmd->add_option("--r0", in.r0, "Input squeezing of the squeezed modes")->check(CLI::NonNegativeNumber);
  cmd->add_option("--K", in.K, "Number of squeezed input modes")->check(CLI::NonNegativeNumber);
}

GaussianState make_input(const InputSpec& in, int M) {
  if (in.kind == "vacuum") return vacuum_state(M);
  if (in.K > M) throw UsageError("--K exceeds the mode count");
  return squeezed_input(M, in.r0, in.K);
}

int cmd_synthesize(const Source& src, const std::string& out) {
  const ComplexMatrix U = load_unitary(src);
  const UniversalProgram prog = compile_universal(U);
  const IORelation rel = eval(*prog.graph.term, prog.schedule);
  const double err = (rel.G - symplectic_of_unitary(U)).norm();
  const double mesh_err = (reconstruct(prog.plan) - U).norm();
  std::string text = "{\"M\":" + std::to_string(prog.plan.M) + ",\"k\":" + std::to_string(prog.graph.k) +
                     ",\"vertices\":" + std::to_string(prog.graph.term->num_vertices) +
                     ",\"reconstruction_error\":" + num(err) + ",\"mesh_error\":" + num(mesh_err) +
                     ",\"plan\":" + plan_to_json(prog.plan) + ",\"schedule\":" + schedule_to_json(prog.schedule) + "}";
  write_text(out, text);
  std::fprintf(stderr, "reconstruction error %.3e\n", err);
  return err < 1e-7 ? kOk : kFailure;
}

int cmd_threshold(const Source& src, const std::vector<double>& targets, const InputSpec& spec, const std::string& out) {
  for (double b : targets)
    if (!(b > 0.0 && b < 1.0)) throw UsageError("--tvd targets must lie in (0, 1)");
  const ComplexMatrix U = load_unitary(src);
  const GaussianState in = make_input(spec, static_cast<int>(U.rows()));
  write_text(out, threshold_to_json(easiness_threshold(U, targets, in.cov)));
  return kOk;
}

int cmd_sweep(const std::vector<int>& Ms, int trials, Seed seed, int jobs, const std::string& out,
              const std::string& summary) {
  for (int M : Ms)
    if (M < 2 || M % 2 != 0) throw UsageError("--M entries must be even and >= 2");
  const SweepResult s = haar_sweep(Ms, trials, seed, jobs);
  write_text(out, sweep_to_csv(s));
  if (!summary.empty()) write_text(summary, sweep_summary_json(s));
  return kOk;
}

struct SampleArgs {
  double r = -1.0;
  long shots = 10000;
  std::string out;
  std::string format = "csv";
  std::string summary;
  bool oracle = false;
};

int cmd_sample(const Source& src, const SampleArgs& a, const InputSpec& spec, int jobs) {
  if (a.r < 0.0) throw UsageError("--r is required and must be non-negative");
  const ComplexMatrix U = load_unitary(src);
  const int M = static_cast<int>(U.rows());
  if (a.oracle && M > 3) throw UsageError("--oracle is limited to M <= 3 (exact hafnian enumeration)");

  const IORelation rel = assemble_mblo(U);
  const ThresholdReport th = threshold_from_gram(rel.N * rel.N.transpose(), RealMatrix(), {});
  const GaussianState state = output_state(rel, make_input(spec, M), a.r);
  if (a.r > th.r_easiness || !simulable(state)) {
    std::fprintf(stderr,
                 "non-simulable regime: r = %.6g exceeds r_easiness = %.6g; sampling needs the easiness condition "
                 "N N^T - e^{2r} I >= 0\n",
                 a.r, th.r_easiness);
    return kRefused;
  }

  const auto samples = sample(state, a.shots, src.seed, jobs);
  if (!a.out.empty()) write_text(a.out, a.format == "csv" ? samples_to_csv(samples) : samples_to_jsonl(samples));

  const PatternCounts counts = tally(samples);
  std::ostringstream js;
  js << "{\"M\":" << M << ",\"r\":" << num(a.r) << ",\"r_easiness\":" << num(th.r_easiness)
     << ",\"shots\":" << a.shots << ",\"seed\":" << src.seed << ",\"frequencies\":[";
  bool first = true;
  for (const auto& [pat, c] : counts) {
    js << (first ? "" : ",") << "{\"n\":[";
    for (std::size_t i = 0; i < pat.size(); ++i) js << (i ? "," : "") << pat[i];
    js << "],\"p\":" << num(static_cast<double>(c) / a.shots) << "}";
    first = false;
  }
  js << "]";
  if (a.oracle) {
    const TvdReport rep = distribution_tvd(
        counts, [&](const std::vector<int>& n) { return gbs_probability(state.cov, n); }, patterns_up_to(M, 4));
    js << ",\"oracle\":{\"max_photons\":4,\"tvd\":" << num(rep.tvd) << ",\"in_set\":" << num(rep.in_set)
       << ",\"residual_upper\":" << num(rep.residual_upper) << "}";
    std::fprintf(stderr, "oracle TVD %.5f\n", rep.tvd);
  }
  js << "}";
  write_text(a.summary, js.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-based linear optics: synthesis, noise thresholds and sampling"};
  app.require_subcommand(1);
  int jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads for sweep and sample")->check(CLI::PositiveNumber);

  Source src;
  std::string out;
  InputSpec spec;

  auto* syn = app.add_subcommand("synthesize", "Compile U into a brickwork measurement schedule");
  add_source(syn, src);
  syn->add_option("-o,--out", out, "Output JSON path (default stdout)");

  std::vector<double> targets;
  auto* thr = app.add_subcommand("threshold", "Easiness and hardness squeezing thresholds of U");
  add_source(thr, src);
  add_input_spec(thr, spec);
  thr->add_option("--tvd", targets, "TVD targets for the hardness threshold")->delimiter(',');
  thr->add_option("-o,--out", out, "Output JSON path (default stdout)");

  std::vector<int> Ms;
  int trials = 100;
  std::string summary;
  auto* swp = app.add_subcommand("sweep", "Haar sweep of the easiness threshold");
  swp->add_option("--M", Ms, "Comma-separated mode counts")->required()->delimiter(',');
  swp->add_option("--trials", trials, "Haar draws per M")->check(CLI::PositiveNumber);
  swp->add_option("--seed", src.seed, "RNG seed (default: $MBLO_SEED or 0)");
  swp->add_option("-o,--out", out, "CSV output path (default stdout)");
  swp->add_option("--summary", summary, "JSON summary path");

  SampleArgs sa;
  auto* smp = app.add_subcommand("sample", "Positive-P sampling below the easiness threshold");
  add_source(smp, src);
  add_input_spec(smp, spec);
  smp->add_option("--r", sa.r, "Cluster squeezing r")->required();
  smp->add_option("--shots", sa.shots, "Number of samples")->check(CLI::NonNegativeNumber);
  smp->add_option("-o,--out", sa.out, "Sample output path");
  smp->add_option("--format", sa.format, "Sample format")->check(CLI::IsMember({"csv", "json"}));
  smp->add_option("--summary", sa.summary, "Summary JSON path (default stdout)");
  smp->add_flag("--oracle", sa.oracle, "Report TVD against exact probabilities (M <= 3)");
  smp->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  swp->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    src.seed = default_seed();
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kUsage;
  }

  try {
    if (*syn) return cmd_synthesize(src, out);
    if (*thr) return cmd_threshold(src, targets, spec, out);
    if (*swp) return cmd_sweep(Ms, trials, src.seed, jobs, out, summary);
    if (*smp) return cmd_sample(src, sa, spec, jobs);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n%s", e.what(), app.help().c_str());
    return kUsage;
  } catch (const NonSimulable& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kRefused;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
  return kUsage;
}
