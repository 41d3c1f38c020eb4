#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace mblo {

/// Homodyne basis of a measured vertex.
enum class Basis { P, Q };

/// Cluster graph as an expression tree. Every node also carries the flattened
/// graph so that queries never need to walk the tree.
struct GraphTerm {
  enum class Kind { ChainH, ChainV, Concat, Sum, Flat };

  Kind kind = Kind::Flat;
  int length = 0;  // chain leaves only
  std::shared_ptr<const GraphTerm> left, right;

  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted
  std::vector<int> begin, end;

  // Measured vertices in schedule order, with their bases.
  std::vector<int> measured;
  std::vector<Basis> bases;

  std::size_t num_measured() const { return measured.size(); }
  bool evaluable() const { return kind != Kind::Flat; }
};

using GraphPtr = std::shared_ptr<const GraphTerm>;

GraphPtr chain_h(int l);
GraphPtr chain_v(int l);
GraphPtr concat(const GraphPtr& a, const GraphPtr& b);
GraphPtr sum(const GraphPtr& a, const GraphPtr& b);

/// Left-folded sum / concat of a non-empty list.
GraphPtr sum_all(const std::vector<GraphPtr>& terms);
GraphPtr concat_all(const std::vector<GraphPtr>& terms);

/// (H5 + H5) o V3 and its threefold concatenation.
GraphPtr graph_bracket();
GraphPtr graph_brick();

/// One unit-depth layer: (T^{M/2}) o (H13 + T^{M/2-1} + H13).
GraphPtr brickwork_layer(int M);

struct BrickworkGraph {
  GraphPtr term;
  int M = 0;
  int k = 0;
  bool universal = false;
};

BrickworkGraph brickwork_graph(int M, int k);

/// Closed-form vertex count of brickwork_graph(M, k).
long brickwork_vertex_count(int M, int k);

enum class LatticeKind { Grid, Hexagonal };

/// Vertex (row, col) of a width x height lattice has id row * width + col.
/// The hexagonal lattice is the brick-wall form: all horizontal edges, and a
/// vertical edge below (row, col) iff row + col is even.
struct LatticePlan {
  LatticeKind kind = LatticeKind::Grid;
  int width = 0;
  int height = 0;
  std::vector<int> deletions;
  std::vector<int> shortenings;
  std::vector<int> begin, end;  // optional interface, lattice ids
};

std::vector<std::pair<int, int>> lattice_edges(LatticeKind kind, int width, int height);

/// Deletes vertices, then shortens wires in the given order. Vertices are
/// relabelled in increasing lattice id.
GraphPtr reduce_lattice(const LatticePlan& plan);

/// Deletion / shortening pattern whose reduction is isomorphic to brickwork_graph(M, k).
LatticePlan brickwork_lattice_plan(LatticeKind kind, int M, int k);

/// Exact isomorphism test (colour refinement + backtracking), up to 200 vertices.
bool isomorphic(const GraphTerm& a, const GraphTerm& b);

std::vector<int> degrees(const GraphTerm& g);

std::string graph_to_json(const GraphTerm& g);
std::string graph_to_dot(const GraphTerm& g);

}  // namespace mblo
