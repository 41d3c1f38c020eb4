#pragma once

#include "mblo/graph.hpp"
#include "mblo/numerics.hpp"

#include <string>
#include <vector>

namespace mblo {

/// Phase-shift angles, one per measured vertex in the term's measurement order.
struct PhaseSchedule {
  std::vector<double> angles;
  std::vector<Basis> bases;  // may be left empty; filled in by eval callers

  std::size_t size() const { return angles.size(); }
  void append(const PhaseSchedule& other);
};

/// Quadrature relation x_out = G x_in + N p_meas + D m (xxpp ordering).
struct IORelation {
  RealMatrix G;
  RealMatrix N;
  RealMatrix D;

  int m() const { return static_cast<int>(G.rows() / 2); }
  int c() const { return static_cast<int>(N.cols()); }
};

/// Rejects angles within 1e-6 of an odd multiple of pi/2.
void check_angle(double phi);

IORelation base_horizontal(double phi);
IORelation base_vertical(double phi);

IORelation compose_concat(const IORelation& r1, const IORelation& r2);
IORelation compose_sum(const IORelation& r1, const IORelation& r2);

/// Folds the expression tree. Vertical chains are only evaluable at length 3.
IORelation eval(const GraphTerm& g, const PhaseSchedule& sched);

IORelation bell_coupling(int M);

/// Full MBLO triple for U: Bell coupling followed by the universal brickwork graph.
IORelation assemble_mblo(const ComplexMatrix& U);

std::string io_relation_to_json(const IORelation& r);

}  // namespace mblo
