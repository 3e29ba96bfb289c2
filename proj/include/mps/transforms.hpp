#pragma once
// Mutable graph view of a structure for local rewrites, plus the two
// size-changing transforms: shrink (drop the last input/output) and grow
// (add one input/output through a complement pair).

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mps/structure.hpp"

namespace mps {

struct digraph {
  struct vertex {
    int input_index = 0;
    int output_index = 0;
    bool alive = true;
  };
  struct edge {
    int from = -1;
    int to = -1;
    bool alive = true;
  };

  int n = 0;
  std::vector<vertex> verts;
  std::vector<edge> edges;

  int add_vertex(int input_index = 0, int output_index = 0) {
    verts.push_back({input_index, output_index, true});
    return static_cast<int>(verts.size()) - 1;
  }

  int add_edge(int from, int to) {
    check(from);
    check(to);
    edges.push_back({from, to, true});
    return static_cast<int>(edges.size()) - 1;
  }

  std::vector<int> in_edges(int v) const {
    check(v);
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
      if (edges[e].alive && edges[e].to == v) out.push_back(e);
    return out;
  }

  std::vector<int> out_edges(int v) const {
    check(v);
    std::vector<int> out;
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
      if (edges[e].alive && edges[e].from == v) out.push_back(e);
    return out;
  }

  void kill_vertex(int v) {
    check(v);
    verts[v].alive = false;
    for (auto& e : edges)
      if (e.alive && (e.from == v || e.to == v)) e.alive = false;
  }

  void check(int v) const {
    if (v < 0 || v >= static_cast<int>(verts.size()))
      throw std::invalid_argument("digraph: vertex id out of range");
  }
};

// Vertex ids equal node ids.
inline digraph to_digraph(const structure& s) {
  check_well_formed(s);
  digraph g;
  g.n = s.n;
  for (const node& nd : s.nodes)
    g.add_vertex(nd.kind == node_kind::input ? nd.index : 0, nd.output_index);
  for (node_id i = 0; i < static_cast<node_id>(s.nodes.size()); ++i) {
    const node& nd = s.nodes[i];
    if (nd.kind != node_kind::comp) continue;
    g.add_edge(nd.lhs, i);
    g.add_edge(nd.rhs, i);
  }
  return g;
}

// Alive vertices with no in-edges must carry input labels; with two
// in-edges they become comps. Anything else is malformed.
inline structure to_structure(const digraph& g) {
  const int v = static_cast<int>(g.verts.size());
  std::vector<int> pending(v, 0);
  std::vector<std::vector<int>> consumers(v);
  std::vector<std::vector<int>> sources(v);
  for (const auto& e : g.edges) {
    if (!e.alive) continue;
    if (!g.verts[e.from].alive || !g.verts[e.to].alive)
      throw structural_error("digraph: edge touches a dead vertex");
    ++pending[e.to];
    sources[e.to].push_back(e.from);
    consumers[e.from].push_back(e.to);
  }

  structure out;
  out.n = g.n;
  std::vector<node_id> remap(v, -1);
  std::vector<int> order;
  std::vector<int> degree = pending;
  for (int i = 0; i < v; ++i)
    if (g.verts[i].alive && degree[i] == 0) order.push_back(i);
  for (std::size_t head = 0; head < order.size(); ++head)
    for (int c : consumers[order[head]])
      if (--degree[c] == 0) order.push_back(c);
  int alive_count = 0;
  for (int i = 0; i < v; ++i) alive_count += g.verts[i].alive;
  if (static_cast<int>(order.size()) != alive_count)
    throw structural_error("digraph: cycle among alive vertices");

  for (int u : order) {
    const auto& vd = g.verts[u];
    node nd;
    if (pending[u] == 0) {
      if (vd.input_index < 1) throw structural_error("digraph: sourceless vertex without input label");
      nd.kind = node_kind::input;
      nd.index = vd.input_index;
    } else if (pending[u] == 2) {
      nd.kind = node_kind::comp;
      node_id a = remap[sources[u][0]];
      node_id b = remap[sources[u][1]];
      if (a < 0 || b < 0) throw structural_error("digraph: operand not yet materialized");
      nd.lhs = std::min(a, b);
      nd.rhs = std::max(a, b);
    } else {
      throw structural_error("digraph: vertex in-degree must be 0 or 2");
    }
    nd.output_index = vd.output_index;
    remap[u] = static_cast<node_id>(out.nodes.size());
    out.nodes.push_back(nd);
  }
  return out;
}

// Splits v into v1 (the in-edges and input label, keeping id v) and a fresh
// v2 (the out-edges and output label), joined by the edge v1 -> v2.
inline std::pair<int, int> split_node(digraph& g, int v) {
  g.check(v);
  if (!g.verts[v].alive) throw std::invalid_argument("split_node: dead vertex");
  int v2 = g.add_vertex(0, g.verts[v].output_index);
  g.verts[v].output_index = 0;
  for (auto& e : g.edges)
    if (e.alive && e.from == v) e.from = v2;
  g.add_edge(v, v2);
  return {v, v2};
}

// Contracts the edge from -> to; `to` must have in-degree exactly one. Its
// out-edges and output label move to `from`.
inline void merge_edge(digraph& g, int from, int to) {
  g.check(from);
  g.check(to);
  auto in = g.in_edges(to);
  if (in.size() != 1 || g.edges[in[0]].from != from)
    throw structural_error("merge_edge: target must have exactly the one in-edge being merged");
  if (g.verts[to].output_index != 0) {
    if (g.verts[from].output_index != 0)
      throw structural_error("merge_edge: output label collision");
    g.verts[from].output_index = g.verts[to].output_index;
  }
  for (auto& e : g.edges)
    if (e.alive && e.from == to) e.from = from;
  g.edges[in[0]].alive = false;
  g.verts[to].alive = false;
}

// Removes input x_n and output y_n, contracting comps left with one operand.
// The result computes the same outputs y_1..y_{n-1} over the first n-1 inputs.
inline structure shrink(const structure& s) {
  if (s.n < 4) throw std::invalid_argument("shrink: need at least four inputs");
  auto rep = validate(s);
  if (!rep.is_for_y) throw std::invalid_argument("shrink: structure does not satisfy the output contract");

  digraph g = to_digraph(s);

  // Drop the y_n sink, then any sinks its removal orphans.
  std::vector<int> work;
  for (int v = 0; v < static_cast<int>(g.verts.size()); ++v)
    if (g.verts[v].alive && g.verts[v].output_index == s.n) work.push_back(v);
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    if (!g.verts[v].alive || !g.out_edges(v).empty()) continue;
    if (g.verts[v].output_index != 0 && g.verts[v].output_index != s.n) continue;
    std::vector<int> feeders;
    for (int e : g.in_edges(v)) feeders.push_back(g.edges[e].from);
    g.kill_vertex(v);
    for (int u : feeders) work.push_back(u);
  }

  // Drop input x_n.
  for (int v = 0; v < static_cast<int>(g.verts.size()); ++v)
    if (g.verts[v].alive && g.verts[v].input_index == s.n) g.kill_vertex(v);

  // Contract comps left with a single operand until none remain.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < static_cast<int>(g.verts.size()); ++v) {
      if (!g.verts[v].alive || g.verts[v].input_index != 0) continue;
      auto in = g.in_edges(v);
      if (in.size() != 1) continue;
      merge_edge(g, g.edges[in[0]].from, v);
      changed = true;
    }
  }

  g.n = s.n - 1;
  return canonicalize(to_structure(g));
}

// Adds input x_{n+1} and output y_{n+1} across a complement pair of a
// complexity-optimal structure; the result has exactly three more comps.
inline structure grow(const structure& s, node_id a, node_id b) {
  auto rep = validate(s);
  if (!rep.is_for_y) throw std::invalid_argument("grow: structure does not satisfy the output contract");
  if (complexity(s) != 3 * s.n - 6)
    throw std::invalid_argument("grow: structure is not complexity optimal");
  if (s.n + 1 > max_inputs) throw std::invalid_argument("grow: input capacity exceeded");
  auto pairs = complement_pairs(s);
  bool found = false;
  for (const complement_pair& p : pairs)
    found |= (p.a == a && p.b == b) || (p.a == b && p.b == a);
  if (!found) throw std::invalid_argument("grow: nodes do not form a complement pair");

  digraph g = to_digraph(s);
  int n1 = s.n + 1;
  auto [a1, a2] = split_node(g, a);
  auto [b1, b2] = split_node(g, b);
  int xn = g.add_vertex(n1, 0);
  g.add_edge(xn, a2);
  g.add_edge(xn, b2);
  int yn = g.add_vertex(0, n1);
  g.add_edge(a1, yn);
  g.add_edge(b1, yn);
  g.n = n1;
  return canonicalize(to_structure(g));
}

}  // namespace mps
