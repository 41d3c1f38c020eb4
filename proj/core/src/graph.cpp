#include "mblo/graph.hpp"

#include "mblo/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>

namespace mblo {

namespace {

void normalize_edges(std::vector<std::pair<int, int>>& edges) {
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

std::shared_ptr<GraphTerm> path_graph(int l) {
  auto g = std::make_shared<GraphTerm>();
  g->length = l;
  g->num_vertices = l;
  for (int i = 0; i + 1 < l; ++i) g->edges.emplace_back(i, i + 1);
  return g;
}

}  // namespace

GraphPtr chain_h(int l) {
  if (l < 2) throw InvalidArgument("chain_h: length must be >= 2");
  auto g = path_graph(l);
  g->kind = GraphTerm::Kind::ChainH;
  g->begin = {0};
  g->end = {l - 1};
  for (int i = 0; i + 1 < l; ++i) {
    g->measured.push_back(i);
    g->bases.push_back(Basis::P);
  }
  return g;
}

GraphPtr chain_v(int l) {
  if (l < 2) throw InvalidArgument("chain_v: length must be >= 2");
  auto g = path_graph(l);
  g->kind = GraphTerm::Kind::ChainV;
  g->begin = {0, l - 1};
  g->end = {0, l - 1};
  for (int i = 1; i + 1 < l; ++i) {
    g->measured.push_back(i);
    g->bases.push_back(Basis::Q);
  }
  return g;
}

GraphPtr concat(const GraphPtr& a, const GraphPtr& b) {
  if (!a || !b) throw InvalidArgument("concat: null operand");
  if (a->end.size() != b->begin.size())
    throw InvalidArgument("concat: |end(a)| = " + std::to_string(a->end.size()) +
                          " does not match |begin(b)| = " + std::to_string(b->begin.size()));
  auto g = std::make_shared<GraphTerm>();
  g->kind = GraphTerm::Kind::Concat;
  g->left = a;
  g->right = b;

  std::vector<int> map(b->num_vertices, -1);
  for (std::size_t i = 0; i < b->begin.size(); ++i) map[b->begin[i]] = a->end[i];
  int next = a->num_vertices;
  for (int v = 0; v < b->num_vertices; ++v)
    if (map[v] < 0) map[v] = next++;
  g->num_vertices = next;

  g->edges = a->edges;
  for (const auto& [u, v] : b->edges) g->edges.emplace_back(map[u], map[v]);
  normalize_edges(g->edges);

  g->begin = a->begin;
  for (int v : b->end) g->end.push_back(map[v]);
  g->measured = a->measured;
  g->bases = a->bases;
  for (std::size_t i = 0; i < b->measured.size(); ++i) {
    g->measured.push_back(map[b->measured[i]]);
    g->bases.push_back(b->bases[i]);
  }
  return g;
}

GraphPtr sum(const GraphPtr& a, const GraphPtr& b) {
  if (!a || !b) throw InvalidArgument("sum: null operand");
  auto g = std::make_shared<GraphTerm>();
  g->kind = GraphTerm::Kind::Sum;
  g->left = a;
  g->right = b;
  const int off = a->num_vertices;
  g->num_vertices = a->num_vertices + b->num_vertices;
  g->edges = a->edges;
  for (const auto& [u, v] : b->edges) g->edges.emplace_back(u + off, v + off);
  g->begin = a->begin;
  for (int v : b->begin) g->begin.push_back(v + off);
  g->end = a->end;
  for (int v : b->end) g->end.push_back(v + off);
  g->measured = a->measured;
  g->bases = a->bases;
  for (std::size_t i = 0; i < b->measured.size(); ++i) {
    g->measured.push_back(b->measured[i] + off);
    g->bases.push_back(b->bases[i]);
  }
  return g;
}

GraphPtr sum_all(const std::vector<GraphPtr>& terms) {
  if (terms.empty()) throw InvalidArgument("sum_all: empty list");
  GraphPtr acc = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) acc = sum(acc, terms[i]);
  return acc;
}

GraphPtr concat_all(const std::vector<GraphPtr>& terms) {
  if (terms.empty()) throw InvalidArgument("concat_all: empty list");
  GraphPtr acc = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) acc = concat(acc, terms[i]);
  return acc;
}

GraphPtr graph_bracket() { return concat(sum(chain_h(5), chain_h(5)), chain_v(3)); }

GraphPtr graph_brick() {
  const GraphPtr b = graph_bracket();
  return concat(concat(b, b), b);
}

GraphPtr brickwork_layer(int M) {
  if (M < 2 || M % 2 != 0) throw InvalidArgument("brickwork_layer: M must be even and >= 2");
  const GraphPtr T = graph_brick();
  std::vector<GraphPtr> first(M / 2, T);
  std::vector<GraphPtr> second;
  second.push_back(chain_h(13));
  for (int i = 0; i < M / 2 - 1; ++i) second.push_back(T);
  second.push_back(chain_h(13));
  return concat(sum_all(first), sum_all(second));
}

BrickworkGraph brickwork_graph(int M, int k) {
  if (M < 2 || M % 2 != 0) throw InvalidArgument("brickwork_graph: M must be even and >= 2");
  if (k < 1) throw InvalidArgument("brickwork_graph: depth must be >= 1");
  const GraphPtr layer = brickwork_layer(M);
  BrickworkGraph out;
  out.term = concat_all(std::vector<GraphPtr>(k, layer));
  out.M = M;
  out.k = k;
  out.universal = k >= M / 2 + 1;
  return out;
}

long brickwork_vertex_count(int M, int k) {
  return static_cast<long>(k) * (28L * M - 3) - static_cast<long>(k - 1) * M;
}

// ---------------------------------------------------------------- lattices

std::vector<std::pair<int, int>> lattice_edges(LatticeKind kind, int width, int height) {
  std::vector<std::pair<int, int>> edges;
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) {
      const int v = r * width + c;
      if (c + 1 < width) edges.emplace_back(v, v + 1);
      if (r + 1 < height && (kind == LatticeKind::Grid || (r + c) % 2 == 0))
        edges.emplace_back(v, v + width);
    }
  return edges;
}

GraphPtr reduce_lattice(const LatticePlan& plan) {
  if (plan.width < 1 || plan.height < 1) throw InvalidArgument("reduce_lattice: empty lattice");
  const int n = plan.width * plan.height;
  std::vector<std::set<int>> adj(n);
  for (const auto& [u, v] : lattice_edges(plan.kind, plan.width, plan.height)) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<char> alive(n, 1);
  auto check = [&](int v, const char* what) {
    if (v < 0 || v >= n) throw InvalidArgument(std::string("reduce_lattice: ") + what + " vertex out of range");
    if (!alive[v]) throw InvalidArgument(std::string("reduce_lattice: ") + what + " vertex already removed");
  };
  auto remove = [&](int v) {
    for (int u : adj[v]) adj[u].erase(v);
    adj[v].clear();
    alive[v] = 0;
  };
  for (int v : plan.deletions) {
    check(v, "deleted");
    remove(v);
  }
  for (int v : plan.shortenings) {
    check(v, "shortened");
    if (adj[v].size() != 2)
      throw InvalidArgument("reduce_lattice: wire shortening needs degree 2, vertex " + std::to_string(v) +
                            " has degree " + std::to_string(adj[v].size()));
    const int a = *adj[v].begin();
    const int b = *adj[v].rbegin();
    remove(v);
    adj[a].insert(b);
    adj[b].insert(a);
  }

  std::vector<int> id(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v)
    if (alive[v]) id[v] = next++;

  auto g = std::make_shared<GraphTerm>();
  g->kind = GraphTerm::Kind::Flat;
  g->num_vertices = next;
  for (int v = 0; v < n; ++v)
    for (int u : adj[v])
      if (v < u) g->edges.emplace_back(id[v], id[u]);
  normalize_edges(g->edges);
  auto relabel = [&](const std::vector<int>& in, std::vector<int>& out) {
    for (int v : in) {
      check(v, "interface");
      out.push_back(id[v]);
    }
  };
  relabel(plan.begin, g->begin);
  relabel(plan.end, g->end);
  std::vector<char> is_end(next, 0);
  for (int v : g->end) is_end[v] = 1;
  for (int v = 0; v < next; ++v)
    if (!is_end[v]) {
      g->measured.push_back(v);
      g->bases.push_back(Basis::P);
    }
  return g;
}

LatticePlan brickwork_lattice_plan(LatticeKind kind, int M, int k) {
  if (M < 2 || M % 2 != 0) throw InvalidArgument("brickwork_lattice_plan: M must be even and >= 2");
  if (k < 1) throw InvalidArgument("brickwork_lattice_plan: depth must be >= 1");

  // Rail positions run 0..24k; rung (m, p) joins rail m and m+1 at position p.
  const int L = 24 * k;
  std::set<std::pair<int, int>> rungs;
  for (int l = 0; l < k; ++l) {
    for (int i = 0; 2 * i + 1 < M; ++i)
      for (int d : {4, 8, 12}) rungs.emplace(2 * i, 24 * l + d);
    for (int i = 0; 2 * i + 2 < M; ++i)
      for (int d : {16, 20, 24}) rungs.emplace(2 * i + 1, 24 * l + d);
  }

  LatticePlan plan;
  plan.kind = kind;
  plan.height = 2 * M - 1;

  if (kind == LatticeKind::Grid) {
    plan.width = L + 1;
    const int W = plan.width;
    for (int m = 0; m + 1 < M; ++m)
      for (int p = 0; p <= L; ++p)
        if (!rungs.count({m, p})) plan.deletions.push_back((2 * m + 1) * W + p);
    for (int m = 0; m < M; ++m) {
      plan.begin.push_back(2 * m * W);
      plan.end.push_back(2 * m * W + L);
    }
    return plan;
  }

  // Brick-wall lattice: columns doubled; a rung descends at an even column and
  // lands one column to the right, so the lower rail's vertex sits at 2p + 1.
  plan.width = 2 * L + 2;
  const int W = plan.width;
  auto main_col = [&](int m, int p) { return (m > 0 && rungs.count({m - 1, p})) ? 2 * p + 1 : 2 * p; };
  std::vector<int> shorten_rails, shorten_rungs;
  for (int m = 0; m < M; ++m) {
    std::vector<char> is_main(W, 0);
    for (int p = 0; p <= L; ++p) is_main[main_col(m, p)] = 1;
    const int lo = main_col(m, 0);
    const int hi = main_col(m, L);
    for (int c = 0; c < W; ++c) {
      const int v = 2 * m * W + c;
      if (c < lo || c > hi)
        plan.deletions.push_back(v);
      else if (!is_main[c])
        shorten_rails.push_back(v);
    }
    plan.begin.push_back(2 * m * W + lo);
    plan.end.push_back(2 * m * W + hi);
  }
  for (int m = 0; m + 1 < M; ++m)
    for (int c = 0; c < W; ++c) {
      const int p = c / 2;
      const int v = (2 * m + 1) * W + c;
      if (!rungs.count({m, p}))
        plan.deletions.push_back(v);
      else if (c % 2 == 1)
        shorten_rungs.push_back(v);
    }
  plan.shortenings = shorten_rails;
  plan.shortenings.insert(plan.shortenings.end(), shorten_rungs.begin(), shorten_rungs.end());
  return plan;
}

// ------------------------------------------------------------- isomorphism

std::vector<int> degrees(const GraphTerm& g) {
  std::vector<int> d(g.num_vertices, 0);
  for (const auto& [u, v] : g.edges) {
    ++d[u];
    ++d[v];
  }
  return d;
}

namespace {

using Adj = std::vector<std::vector<int>>;

Adj adjacency(const GraphTerm& g) {
  Adj adj(g.num_vertices);
  for (const auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

// Joint colour refinement so that colours are comparable across both graphs.
void refine(const Adj& a, const Adj& b, std::vector<int>& ca, std::vector<int>& cb) {
  ca.assign(a.size(), 0);
  cb.assign(b.size(), 0);
  std::size_t classes = 1;
  while (true) {
    std::map<std::pair<int, std::vector<int>>, int> palette;
    auto signature = [](const Adj& adj, const std::vector<int>& col, int v) {
      std::vector<int> s;
      s.reserve(adj[v].size());
      for (int u : adj[v]) s.push_back(col[u]);
      std::sort(s.begin(), s.end());
      return std::make_pair(col[v], s);
    };
    std::vector<std::pair<int, std::vector<int>>> sa, sb;
    for (std::size_t v = 0; v < a.size(); ++v) sa.push_back(signature(a, ca, static_cast<int>(v)));
    for (std::size_t v = 0; v < b.size(); ++v) sb.push_back(signature(b, cb, static_cast<int>(v)));
    for (const auto& s : sa) palette.emplace(s, 0);
    for (const auto& s : sb) palette.emplace(s, 0);
    int next = 0;
    for (auto& [k, v] : palette) v = next++;
    for (std::size_t v = 0; v < a.size(); ++v) ca[v] = palette[sa[v]];
    for (std::size_t v = 0; v < b.size(); ++v) cb[v] = palette[sb[v]];
    if (palette.size() == classes) break;
    classes = palette.size();
  }
}

}  // namespace

bool isomorphic(const GraphTerm& ga, const GraphTerm& gb) {
  if (ga.num_vertices > 200 || gb.num_vertices > 200)
    throw InvalidArgument("isomorphic: limited to 200 vertices");
  if (ga.num_vertices != gb.num_vertices || ga.edges.size() != gb.edges.size()) return false;
  const int n = ga.num_vertices;
  if (n == 0) return true;
  const Adj a = adjacency(ga), b = adjacency(gb);
  std::vector<int> ca, cb;
  refine(a, b, ca, cb);
  {
    auto ha = ca, hb = cb;
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return false;
  }

  std::vector<std::vector<char>> adj_b(n, std::vector<char>(n, 0));
  for (const auto& [u, v] : gb.edges) adj_b[u][v] = adj_b[v][u] = 1;

  // BFS order over each component; parent links restrict candidates.
  std::vector<int> order, parent(n, -1);
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      order.push_back(v);
      for (int u : a[v])
        if (!seen[u]) {
          seen[u] = 1;
          parent[u] = v;
          q.push(u);
        }
    }
  }

  std::vector<int> f(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> extend = [&](int idx) -> bool {
    if (idx == n) return true;
    const int v = order[idx];
    std::vector<int> cand;
    if (parent[v] >= 0) {
      for (int w : b[f[parent[v]]])
        if (!used[w] && cb[w] == ca[v]) cand.push_back(w);
    } else {
      for (int w = 0; w < n; ++w)
        if (!used[w] && cb[w] == ca[v]) cand.push_back(w);
    }
    for (int w : cand) {
      bool ok = true;
      for (int j = 0; j < idx && ok; ++j) {
        const int u = order[j];
        const bool ea = std::find(a[v].begin(), a[v].end(), u) != a[v].end();
        ok = ea == static_cast<bool>(adj_b[w][f[u]]);
      }
      if (!ok) continue;
      f[v] = w;
      used[w] = 1;
      if (extend(idx + 1)) return true;
      used[w] = 0;
      f[v] = -1;
    }
    return false;
  };
  return extend(0);
}

}  // namespace mblo
