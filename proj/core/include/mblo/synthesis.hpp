#pragma once

#include "mblo/graph.hpp"
#include "mblo/io_relation.hpp"
#include "mblo/numerics.hpp"

#include <array>
#include <string>
#include <vector>

namespace mblo {

/// T(beta, theta) = [[e^{i beta} cos theta, -sin theta], [e^{i beta} sin theta, cos theta]].
struct BrickParams {
  double beta = 0.0;   // [0, 2 pi)
  double theta = 0.0;  // [0, pi/2]
};

ComplexMatrix brick_unitary(const BrickParams& p);

/// Brick at unit-depth layer `layer` (1-based) and mesh row `row` (1-based).
/// Rows 1..M/2 act on modes (2i-1, 2i); rows M/2+1..M-1 on the offset pairs.
struct Brick {
  int layer = 1;
  int row = 1;
  BrickParams params;
};

struct SynthesisPlan {
  int M = 0;
  std::vector<Brick> bricks;         // ordered by layer, then row
  std::vector<double> final_phases;  // beta_m, one per mode
};

/// 0-based index of the upper mode a mesh row acts on.
int brick_first_mode(int M, int row);

/// U = diag(e^{i beta}) U_{M/2} ... U_1.
SynthesisPlan clements_decompose(const ComplexMatrix& U);
ComplexMatrix reconstruct(const SynthesisPlan& plan);

/// (phi_{1,1..4}, phi_{2,1..4}, phi_int) for one bracket graph.
std::array<double, 9> brick_angles_a(double theta);
std::array<double, 9> brick_angles_b(double theta, double beta);

/// 27 angles phi_b . phi_a . phi_a for the brick graph.
PhaseSchedule brick_schedule(const BrickParams& p);

/// 12 angles for chain_h(13) implementing the rotation by beta.
PhaseSchedule phase_chain_schedule(double beta);

struct UniversalProgram {
  SynthesisPlan plan;
  BrickworkGraph graph;  // depth M/2 + 1; the last layer holds the phases
  PhaseSchedule schedule;
};

UniversalProgram compile_universal(const ComplexMatrix& U);
PhaseSchedule universal_schedule(const ComplexMatrix& U);

/// Schedule for brickwork_graph(plan.M, plan.M/2 + 1).
PhaseSchedule schedule_from_plan(const SynthesisPlan& plan);

std::string plan_to_json(const SynthesisPlan& plan);
std::string schedule_to_json(const PhaseSchedule& sched);

}  // namespace mblo
