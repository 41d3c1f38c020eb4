#include "mblo/synthesis.hpp"

#include "mblo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mblo {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_2pi(double x) {
  double y = std::fmod(x, 2 * kPi);
  if (y < 0) y += 2 * kPi;
  if (y >= 2 * kPi) y = 0.0;
  return y;
}

double arg_2pi(cplx z) { return wrap_2pi(std::arg(z)); }

// A single nulling or commuted operation on modes (mode, mode + 1).
struct MeshOp {
  int mode;
  BrickParams p;
};

void apply_right_inverse(ComplexMatrix& W, const MeshOp& op) {
  const double c = std::cos(op.p.theta), s = std::sin(op.p.theta);
  const cplx ph = std::polar(1.0, -op.p.beta);
  const ComplexVector a = W.col(op.mode) * ph;
  const ComplexVector b = W.col(op.mode + 1);
  W.col(op.mode) = c * a - s * b;
  W.col(op.mode + 1) = s * a + c * b;
}

void apply_left(ComplexMatrix& W, const MeshOp& op) {
  const double c = std::cos(op.p.theta), s = std::sin(op.p.theta);
  const cplx ph = std::polar(1.0, op.p.beta);
  const Eigen::RowVectorXcd a = W.row(op.mode) * ph;
  const Eigen::RowVectorXcd b = W.row(op.mode + 1);
  W.row(op.mode) = c * a - s * b;
  W.row(op.mode + 1) = s * a + c * b;
}

}  // namespace

ComplexMatrix brick_unitary(const BrickParams& p) {
  const cplx e = std::polar(1.0, p.beta);
  const double c = std::cos(p.theta), s = std::sin(p.theta);
  ComplexMatrix T(2, 2);
  T << e * c, -s, e * s, c;
  return T;
}

int brick_first_mode(int M, int row) {
  if (row < 1 || row > M - 1) throw InvalidArgument("brick row out of range");
  return row <= M / 2 ? 2 * (row - 1) : 2 * (row - M / 2) - 1;
}

SynthesisPlan clements_decompose(const ComplexMatrix& U) {
  const int M = static_cast<int>(U.rows());
  if (U.rows() != U.cols() || M < 2 || M % 2 != 0)
    throw InvalidArgument("clements_decompose: need a square matrix with even size >= 2");
  if (!is_unitary(U, 1e-8)) throw InvalidArgument("clements_decompose: input is not unitary");

  ComplexMatrix W = U;
  std::vector<MeshOp> right_ops, left_ops;
  for (int i = 0; i < M - 1; ++i) {
    if (i % 2 == 0) {
      for (int j = 0; j <= i; ++j) {
        const int r = M - 1 - j, n = i - j;
        const cplx un = W(r, n), un1 = W(r, n + 1);
        MeshOp op{n, {}};
        if (std::abs(un) > 0.0) {
          op.p.theta = std::atan2(std::abs(un), std::abs(un1));
          op.p.beta = std::abs(un1) > 0.0 ? wrap_2pi(std::arg(un) - std::arg(un1)) : 0.0;
        }
        apply_right_inverse(W, op);
        right_ops.push_back(op);
      }
    } else {
      for (int j = 0; j <= i; ++j) {
        const int r = M - 1 - i + j, col = j, n = r - 1;
        const cplx vn = W(n, col), vn1 = W(n + 1, col);
        MeshOp op{n, {}};
        if (std::abs(vn1) > 0.0) {
          op.p.theta = std::atan2(std::abs(vn1), std::abs(vn));
          op.p.beta = std::abs(vn) > 0.0 ? wrap_2pi(std::arg(-vn1) - std::arg(vn)) : 0.0;
        }
        apply_left(W, op);
        left_ops.push_back(op);
      }
    }
  }

  ComplexVector d = W.diagonal();
  for (int m = 0; m < M; ++m) d(m) /= std::abs(d(m));

  // Move T^{-1} factors to the right of the diagonal: T^{-1} D = D' T'.
  std::vector<MeshOp> commuted;
  for (auto it = left_ops.rbegin(); it != left_ops.rend(); ++it) {
    const MeshOp& op = *it;
    const int n = op.mode;
    const cplx d1 = d(n), d2 = d(n + 1);
    MeshOp out{n, {0.0, op.p.theta}};
    if (std::abs(std::sin(op.p.theta)) < 1e-15) {
      d(n) = std::polar(1.0, -op.p.beta) * d1;
      out.p.theta = 0.0;
    } else {
      d(n) = -std::polar(1.0, -op.p.beta) * d2;
      out.p.beta = arg_2pi(-d1 / d2);
    }
    commuted.push_back(out);
  }

  // Application order: right ops as found, then the commuted left ops.
  std::vector<MeshOp> seq = right_ops;
  seq.insert(seq.end(), commuted.begin(), commuted.end());

  std::vector<int> next_col(M, 0);
  std::vector<std::vector<int>> slot(M, std::vector<int>(M, -1));  // [col][mode] -> seq index
  for (std::size_t idx = 0; idx < seq.size(); ++idx) {
    const int n = seq[idx].mode;
    int col = std::max(next_col[n], next_col[n + 1]);
    if (col % 2 != n % 2) ++col;
    if (col >= M) throw SynthesisError("clements_decompose: mesh placement overflowed " + std::to_string(M) + " columns");
    if (slot[col][n] >= 0) throw SynthesisError("clements_decompose: mesh slot collision");
    slot[col][n] = static_cast<int>(idx);
    next_col[n] = next_col[n + 1] = col + 1;
  }

  SynthesisPlan plan;
  plan.M = M;
  for (int col = 0; col < M; ++col)
    for (int n = col % 2; n + 1 < M; n += 2) {
      Brick b;
      b.layer = col / 2 + 1;
      b.row = (col % 2 == 0) ? n / 2 + 1 : M / 2 + (n + 1) / 2;
      if (slot[col][n] >= 0) b.params = seq[slot[col][n]].p;
      plan.bricks.push_back(b);
    }
  for (int m = 0; m < M; ++m) plan.final_phases.push_back(arg_2pi(d(m)));
  return plan;
}

ComplexMatrix reconstruct(const SynthesisPlan& plan) {
  const int M = plan.M;
  ComplexMatrix U = ComplexMatrix::Identity(M, M);
  auto bricks = plan.bricks;
  std::stable_sort(bricks.begin(), bricks.end(), [](const Brick& a, const Brick& b) {
    return a.layer != b.layer ? a.layer < b.layer : a.row < b.row;
  });
  for (const Brick& b : bricks) {
    const int n = brick_first_mode(M, b.row);
    const ComplexMatrix T = brick_unitary(b.params);
    U.middleRows(n, 2) = (T * U.middleRows(n, 2)).eval();
  }
  for (int m = 0; m < M; ++m) U.row(m) *= std::polar(1.0, plan.final_phases.at(m));
  return U;
}

// ------------------------------------------------------------ brick angles

namespace {

void check_theta(double theta) {
  if (!(theta >= -1e-12 && theta <= kPi / 2 + 1e-12))
    throw InvalidArgument("brick angle theta must lie in [0, pi/2], got " + std::to_string(theta));
}

double checked_div(double num, double den, const char* what) {
  if (std::abs(den) < 1e-12)
    throw SingularParameter(std::string("brick angles: vanishing denominator ") + what);
  return num / den;
}

std::array<double, 4> rail_a(double s) {
  const double h = 1.0 - 0.5 * s;
  return {-0.5, -checked_div(1.0 - s, h, "1 - s/2"), -1.0 + 0.5 * s, -checked_div(0.5, h, "1 - s/2")};
}

std::array<double, 9> to_angles(const std::array<double, 9>& t) {
  std::array<double, 9> phi{};
  for (int i = 0; i < 9; ++i) phi[i] = std::atan(t[i]);
  return phi;
}

}  // namespace

std::array<double, 9> brick_angles_a(double theta) {
  check_theta(theta);
  const double c = std::cos(theta), s = std::sin(theta);
  const auto r1 = rail_a(-c + s);
  const auto r2 = rail_a(c + s);
  std::array<double, 9> t{};
  std::copy(r1.begin(), r1.end(), t.begin());
  std::copy(r2.begin(), r2.end(), t.begin() + 4);
  t[8] = -s;
  return to_angles(t);
}

std::array<double, 9> brick_angles_b(double theta, double beta) {
  check_theta(theta);
  const double c = std::cos(theta), s = std::sin(theta);
  const double cb = std::cos(beta), sb = std::sin(beta);
  const double w = std::sqrt(2.0) * std::sin(theta - kPi / 4);
  const double x = sb + w * cb;
  const double y = -cb + w * sb;
  const double sign = y >= 0.0 ? 1.0 : -1.0;
  const double R = std::sqrt(1.0 + w * w);
  const char* xname = "sin(beta) + sqrt(2) sin(theta - pi/4) cos(beta)";

  std::array<double, 9> t{};
  t[0] = sign * checked_div(std::abs(y) - R, x, xname);
  t[1] = sign * (1.0 - x) / R;
  t[2] = sign * R;
  t[3] = -checked_div(cb, x, xname) - sign * checked_div(1.0 - x, x * R, xname);
  const double sp = c + s;
  const double h = 1.0 + 0.5 * sp;
  t[4] = 0.5;
  t[5] = (1.0 + sp) / h;
  t[6] = h;
  t[7] = 0.5 / h;
  t[8] = -s;
  return to_angles(t);
}

namespace {

const std::array<Basis, 9> kBracketBases = {Basis::P, Basis::P, Basis::P, Basis::P, Basis::P,
                                            Basis::P, Basis::P, Basis::P, Basis::Q};

void push_bracket(PhaseSchedule& s, const std::array<double, 9>& phi) {
  for (int i = 0; i < 9; ++i) {
    check_angle(phi[i]);
    s.angles.push_back(phi[i]);
    s.bases.push_back(kBracketBases[i]);
  }
}

}  // namespace

PhaseSchedule brick_schedule(const BrickParams& p) {
  PhaseSchedule s;
  const auto a = brick_angles_a(p.theta);
  push_bracket(s, brick_angles_b(p.theta, p.beta));
  push_bracket(s, a);
  push_bracket(s, a);
  return s;
}

PhaseSchedule phase_chain_schedule(double beta) {
  if (!std::isfinite(beta)) throw InvalidArgument("phase_chain_schedule: beta is not finite");
  // Chain units F P(t) with F = [[0,-1],[1,0]], P(t) = [[1,0],[t,1]]; F^4 = I pads to 12 units.
  double w = std::remainder(beta, 2 * kPi);
  std::array<double, 12> t{};
  if (std::abs(w) <= 2 * kPi / 3) {
    // F^3 P(a) F P(b) F^3 P(a) F = R(w), a = tan(w/2), b = sin(w).
    const double a = std::tan(w / 2), b = std::sin(w);
    t[1] = a;
    t[4] = b;
    t[5] = a;
  } else {
    // F P(d) F P(c) F P(b) F P(a) = R(w) with c = 1.
    const double cw = std::cos(w), sw = std::sin(w);
    const double a = (sw - 1.0) / cw;
    t[0] = a;
    t[1] = 1.0 - cw;
    t[2] = 1.0;
    t[3] = 1.0 - cw - a * sw;
  }
  PhaseSchedule s;
  for (double v : t) {
    s.angles.push_back(std::atan(v));
    s.bases.push_back(Basis::P);
  }
  return s;
}

// -------------------------------------------------------- universal schedule

PhaseSchedule schedule_from_plan(const SynthesisPlan& plan) {
  const int M = plan.M;
  if (M < 2 || M % 2 != 0) throw InvalidArgument("schedule_from_plan: M must be even");
  if (static_cast<int>(plan.final_phases.size()) != M)
    throw InvalidArgument("schedule_from_plan: need one final phase per mode");
  const int layers = M / 2;
  std::vector<std::vector<BrickParams>> grid(layers + 1, std::vector<BrickParams>(M - 1));
  std::vector<std::vector<char>> filled(layers, std::vector<char>(M - 1, 0));
  for (const Brick& b : plan.bricks) {
    if (b.layer < 1 || b.layer > layers || b.row < 1 || b.row > M - 1)
      throw InvalidArgument("schedule_from_plan: brick position out of range");
    grid[b.layer - 1][b.row - 1] = b.params;
    filled[b.layer - 1][b.row - 1] = 1;
  }
  // Final layer: theta = 0 bricks carry the phases of every mode except the
  // last, which rides on the closing 13-vertex rail.
  for (int row = 1; row <= M - 1; ++row)
    grid[layers][row - 1] = BrickParams{plan.final_phases[brick_first_mode(M, row)], 0.0};

  const PhaseSchedule idle = phase_chain_schedule(0.0);
  PhaseSchedule s;
  for (int j = 0; j <= layers; ++j) {
    for (int row = 1; row <= M / 2; ++row) s.append(brick_schedule(grid[j][row - 1]));
    s.append(idle);
    for (int row = M / 2 + 1; row <= M - 1; ++row) s.append(brick_schedule(grid[j][row - 1]));
    s.append(j == layers ? phase_chain_schedule(plan.final_phases[M - 1]) : idle);
  }
  return s;
}

UniversalProgram compile_universal(const ComplexMatrix& U) {
  UniversalProgram prog;
  try {
    prog.plan = clements_decompose(U);
  } catch (const InvalidArgument& e) {
    throw SynthesisError(e.what());
  }
  prog.graph = brickwork_graph(prog.plan.M, prog.plan.M / 2 + 1);
  prog.schedule = schedule_from_plan(prog.plan);
  if (prog.schedule.size() != prog.graph.term->num_measured())
    throw SynthesisError("compile_universal: schedule length does not match the brickwork graph");
  return prog;
}

PhaseSchedule universal_schedule(const ComplexMatrix& U) { return compile_universal(U).schedule; }

IORelation assemble_mblo(const ComplexMatrix& U) {
  const UniversalProgram prog = compile_universal(U);
  return compose_concat(bell_coupling(prog.plan.M), eval(*prog.graph.term, prog.schedule));
}

}  // namespace mblo
