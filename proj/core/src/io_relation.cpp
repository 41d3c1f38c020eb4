#include "mblo/io_relation.hpp"

#include "mblo/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace mblo {

void PhaseSchedule::append(const PhaseSchedule& other) {
  angles.insert(angles.end(), other.angles.begin(), other.angles.end());
  bases.insert(bases.end(), other.bases.begin(), other.bases.end());
}

void check_angle(double phi) {
  if (!std::isfinite(phi)) throw SingularParameter("phase angle is not finite");
  const double half_pi = std::numbers::pi / 2;
  const double k = std::round((phi - half_pi) / std::numbers::pi);
  if (std::abs(phi - (half_pi + k * std::numbers::pi)) < 1e-6)
    throw SingularParameter("phase angle " + std::to_string(phi) + " is within 1e-6 of +-pi/2 (tan diverges)");
}

IORelation base_horizontal(double phi) {
  check_angle(phi);
  const double t = std::tan(phi);
  IORelation r;
  r.G.resize(2, 2);
  r.G << -t, -1.0, 1.0, 0.0;
  r.N.resize(2, 1);
  r.N << 0.0, 1.0;
  r.D.resize(2, 1);
  r.D << 1.0 / std::cos(phi), 0.0;
  return r;
}

IORelation base_vertical(double phi) {
  check_angle(phi);
  const double t = std::tan(phi);
  const double s = 1.0 / std::cos(phi);
  IORelation r;
  r.G = RealMatrix::Identity(4, 4);
  r.G(2, 0) = r.G(2, 1) = r.G(3, 0) = r.G(3, 1) = t;
  r.N.resize(4, 1);
  r.N << 0.0, 0.0, t, t;
  r.D.resize(4, 1);
  r.D << 0.0, 0.0, s, s;
  return r;
}

IORelation compose_concat(const IORelation& r1, const IORelation& r2) {
  if (r1.G.rows() != r2.G.cols())
    throw InvalidArgument("compose_concat: output modes of the first relation (" + std::to_string(r1.m()) +
                          ") do not match input modes of the second (" + std::to_string(r2.G.cols() / 2) + ")");
  IORelation r;
  r.G = r2.G * r1.G;
  const auto rows = r2.G.rows();
  r.N.resize(rows, r1.N.cols() + r2.N.cols());
  r.N.leftCols(r1.N.cols()).noalias() = r2.G * r1.N;
  r.N.rightCols(r2.N.cols()) = r2.N;
  r.D.resize(rows, r1.D.cols() + r2.D.cols());
  r.D.leftCols(r1.D.cols()).noalias() = r2.G * r1.D;
  r.D.rightCols(r2.D.cols()) = r2.D;
  return r;
}

namespace {

RealMatrix permute_rows(const RealMatrix& A, const std::vector<int>& src) {
  RealMatrix B(A.rows(), A.cols());
  for (std::size_t i = 0; i < src.size(); ++i) B.row(static_cast<Eigen::Index>(i)) = A.row(src[i]);
  return B;
}

}  // namespace

IORelation compose_sum(const IORelation& r1, const IORelation& r2) {
  if (r1.G.rows() % 2 || r2.G.rows() % 2 || r1.G.rows() == 0 || r2.G.rows() == 0)
    throw InvalidArgument("compose_sum: relations must act on at least one mode");
  const auto src = xxpp_interleave_rows(r1.m(), r2.m());
  const RealMatrix B = block_diag(r1.G, r2.G);
  IORelation r;
  const auto n = static_cast<Eigen::Index>(src.size());
  r.G.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) r.G(i, j) = B(src[i], src[j]);
  r.N = permute_rows(block_diag(r1.N, r2.N), src);
  r.D = permute_rows(block_diag(r1.D, r2.D), src);
  return r;
}

namespace {

IORelation eval_rec(const GraphTerm& g, const std::vector<double>& angles, std::size_t& pos) {
  switch (g.kind) {
    case GraphTerm::Kind::ChainH: {
      IORelation r = base_horizontal(angles[pos++]);
      for (int i = 1; i + 1 < g.length; ++i) r = compose_concat(r, base_horizontal(angles[pos++]));
      return r;
    }
    case GraphTerm::Kind::ChainV:
      if (g.length != 3)
        throw InvalidArgument("eval: vertical chains are only evaluable with 3 vertices, got " +
                              std::to_string(g.length));
      return base_vertical(angles[pos++]);
    case GraphTerm::Kind::Concat: {
      IORelation a = eval_rec(*g.left, angles, pos);
      IORelation b = eval_rec(*g.right, angles, pos);
      return compose_concat(a, b);
    }
    case GraphTerm::Kind::Sum: {
      IORelation a = eval_rec(*g.left, angles, pos);
      IORelation b = eval_rec(*g.right, angles, pos);
      return compose_sum(a, b);
    }
    case GraphTerm::Kind::Flat:
      break;
  }
  throw InvalidArgument("eval: flat graphs carry no composition structure and cannot be evaluated");
}

}  // namespace

IORelation eval(const GraphTerm& g, const PhaseSchedule& sched) {
  if (g.begin.size() != g.end.size()) throw InvalidArgument("eval: |begin| != |end|");
  if (sched.angles.size() != g.num_measured())
    throw InvalidArgument("eval: schedule has " + std::to_string(sched.angles.size()) + " angles, graph measures " +
                          std::to_string(g.num_measured()) + " vertices");
  if (!sched.bases.empty() && sched.bases != g.bases)
    throw InvalidArgument("eval: schedule basis tags do not match the graph's measurement bases");
  std::size_t pos = 0;
  return eval_rec(g, sched.angles, pos);
}

IORelation bell_coupling(int M) {
  if (M < 1) throw InvalidArgument("bell_coupling: M must be >= 1");
  const RealMatrix I = RealMatrix::Identity(M, M);
  IORelation r;
  r.G = RealMatrix::Identity(2 * M, 2 * M);
  r.N = block_diag(-I, I);
  r.D.resize(2 * M, 2 * M);
  r.D << -I, -I, -I, I;
  return r;
}

}  // namespace mblo
