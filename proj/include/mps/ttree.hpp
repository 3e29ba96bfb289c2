#pragma once
// Unrooted trees with labelled leaves and degree-3 internal vertices, their
// diameter bound, enumeration by leaf insertion, and the two-way mapping to
// complexity-optimal structures.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mps/intlog.hpp"
#include "mps/structure.hpp"

namespace mps {

// Vertices 0..n-1 are leaves x_1..x_n; vertices n.. are internal.
struct ttree {
  int n = 0;
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
};

inline std::vector<std::vector<int>> ttree_adjacency(const ttree& t) {
  if (t.n < 2 || t.n > max_inputs) throw structural_error("ttree: leaf count out of range");
  if (t.vertex_count < t.n) throw structural_error("ttree: fewer vertices than leaves");
  std::vector<std::vector<int>> adj(t.vertex_count);
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : t.edges) {
    if (a < 0 || b < 0 || a >= t.vertex_count || b >= t.vertex_count)
      throw structural_error("ttree: edge endpoint out of range");
    if (a == b) throw structural_error("ttree: self loop");
    if (!seen.insert(std::minmax(a, b)).second) throw structural_error("ttree: duplicate edge");
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());
  return adj;
}

// Leaves must have degree 1, internal vertices degree 3, one component.
inline bool is_valid_ttree(const ttree& t) {
  auto adj = ttree_adjacency(t);
  if (t.n == 2)
    return t.vertex_count == 2 && t.edges.size() == 1;
  if (t.vertex_count != 2 * t.n - 2) return false;
  if (static_cast<int>(t.edges.size()) != 2 * t.n - 3) return false;
  for (int v = 0; v < t.vertex_count; ++v) {
    int want = v < t.n ? 1 : 3;
    if (static_cast<int>(adj[v].size()) != want) return false;
  }
  std::vector<char> mark(t.vertex_count, 0);
  std::vector<int> stack{0};
  mark[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : adj[u])
      if (!mark[w]) {
        mark[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == t.vertex_count;
}

inline int diameter(const ttree& t) {
  if (!is_valid_ttree(t)) throw std::invalid_argument("diameter: not a valid ttree");
  auto adj = ttree_adjacency(t);
  auto farthest = [&](int src) {
    std::vector<int> dist(t.vertex_count, -1);
    std::vector<int> queue{src};
    dist[src] = 0;
    int best = src;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      if (dist[u] > dist[best]) best = u;
      for (int w : adj[u])
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
    }
    return std::pair<int, int>{best, dist[best]};
  };
  int u = farthest(0).first;
  return farthest(u).second;
}

// Smallest achievable diameter over all such trees with n leaves.
inline int min_ttree_diameter(int n) {
  if (n < 2 || n > max_inputs)
    throw std::invalid_argument("min_ttree_diameter: leaf count out of range");
  if (n == 2) return 1;
  int delta = floor_log2(static_cast<std::uint64_t>(n)) - 1;
  return delta + ceil_log2(static_cast<std::uint64_t>(n - (1 << delta))) + 1;
}

// Maximal-diameter spine tree: x_1, x_2 on the first spine vertex, one leaf
// per middle vertex, x_{n-1}, x_n on the last.
inline ttree caterpillar_ttree(int n) {
  if (n < 3 || n > max_inputs) throw std::invalid_argument("caterpillar_ttree: need n in [3, 128]");
  ttree t;
  t.n = n;
  t.vertex_count = 2 * n - 2;
  auto spine = [&](int j) { return n + j - 1; };  // j in 1..n-2
  t.edges.emplace_back(0, spine(1));
  t.edges.emplace_back(1, spine(1));
  for (int j = 2; j <= n - 3; ++j) t.edges.emplace_back(j, spine(j));
  if (n >= 4) t.edges.emplace_back(n - 2, spine(n - 2));
  t.edges.emplace_back(n - 1, spine(n - 2));
  for (int j = 1; j <= n - 3; ++j) t.edges.emplace_back(spine(j), spine(j + 1));
  return t;
}

// Diameter-minimal tree: a balanced block on the first 2^delta leaves joined
// to a balanced block on the rest.
inline ttree complexity_optimal_ttree(int n) {
  if (n < 3 || n > max_inputs)
    throw std::invalid_argument("complexity_optimal_ttree: need n in [3, 128]");
  ttree t;
  t.n = n;
  t.vertex_count = 2 * n - 2;
  int next_internal = n;
  // Balanced block over leaves lo..hi: height ceil(log m), left child holding
  // min(2^(h-1), m - 2^(h-2)) leaves.
  std::function<int(int, int)> build = [&](int lo, int hi) -> int {
    int m = hi - lo + 1;
    if (m == 1) return lo;
    int left = 1;
    if (m > 2) {
      int h = ceil_log2(static_cast<std::uint64_t>(m));
      left = std::min(1 << (h - 1), m - (1 << (h - 2)));
    }
    int a = build(lo, lo + left - 1);
    int b = build(lo + left, hi);
    int w = next_internal++;
    t.edges.emplace_back(w, a);
    t.edges.emplace_back(w, b);
    return w;
  };
  int delta = floor_log2(static_cast<std::uint64_t>(n)) - 1;
  int a = build(0, (1 << delta) - 1);
  int b = build(1 << delta, n - 1);
  t.edges.emplace_back(a, b);
  return t;
}

// The rooted binary tree hanging off `to` when the edge (from, to) is cut,
// as a structure over all n inputs. When `from` is the leaf x_j the root is
// labelled y_j, since it folds every other input.
inline structure oriented_subtree(const ttree& t, int from, int to) {
  if (!is_valid_ttree(t)) throw std::invalid_argument("oriented_subtree: not a valid ttree");
  auto adj = ttree_adjacency(t);
  bool edge_found = false;
  for (int w : adj[from]) edge_found |= w == to;
  if (!edge_found) throw std::invalid_argument("oriented_subtree: no such edge");
  structure_builder b(t.n);
  std::function<node_id(int, int)> build = [&](int v, int parent) -> node_id {
    if (v < t.n) return b.input_id(v + 1);
    std::vector<int> kids;
    for (int w : adj[v])
      if (w != parent) kids.push_back(w);
    return b.add_comp(build(kids[0], v), build(kids[1], v));
  };
  node_id root = build(to, from);
  if (from < t.n) b.set_output(root, from + 1);
  return canonicalize(b.take());
}

// Every output's tree read off the same ttree: y_j is the subtree seen from
// leaf x_j. Shared forms collapse to one node each.
inline structure ttree_to_structure(const ttree& t) {
  if (!is_valid_ttree(t)) throw std::invalid_argument("ttree_to_structure: not a valid ttree");
  if (t.n == 2) return trivial_structure();
  auto adj = ttree_adjacency(t);
  structure_builder b(t.n);
  std::function<node_id(int, int)> build = [&](int v, int parent) -> node_id {
    if (v < t.n) return b.input_id(v + 1);
    std::vector<int> kids;
    for (int w : adj[v])
      if (w != parent) kids.push_back(w);
    return b.shared_comp(build(kids[0], v), build(kids[1], v));
  };
  for (int leaf = 0; leaf < t.n; ++leaf) b.set_output(build(adj[leaf][0], leaf), leaf + 1);
  return canonicalize(b.take());
}

// Inverse reading: the y_1 tree supplies the internal vertices and x_1
// attaches to its root. Requires a valid assignment with 3n-6 comps.
inline ttree structure_to_ttree(const structure& s) {
  if (s.n < 3) throw std::invalid_argument("structure_to_ttree: need at least three inputs");
  auto rep = validate(s);
  if (!rep.is_for_y)
    throw std::invalid_argument("structure_to_ttree: structure does not satisfy the output contract");
  if (complexity(s) != 3 * s.n - 6)
    throw std::invalid_argument("structure_to_ttree: structure is not complexity optimal");
  structure c = canonicalize(s);
  node_id y1 = find_output_node(c, 1);

  const int v = static_cast<int>(c.nodes.size());
  std::vector<char> keep(v, 0);
  std::vector<node_id> stack{y1};
  keep[y1] = 1;
  while (!stack.empty()) {
    node_id u = stack.back();
    stack.pop_back();
    const node& nd = c.nodes[u];
    if (nd.kind != node_kind::comp) continue;
    for (node_id w : {nd.lhs, nd.rhs})
      if (!keep[w]) {
        keep[w] = 1;
        stack.push_back(w);
      }
  }

  ttree t;
  t.n = c.n;
  t.vertex_count = 2 * c.n - 2;
  std::vector<int> ttid(v, -1);
  int next_internal = c.n;
  for (node_id i = 0; i < v; ++i) {
    if (!keep[i]) continue;
    const node& nd = c.nodes[i];
    ttid[i] = nd.kind == node_kind::input ? nd.index - 1 : next_internal++;
  }
  if (next_internal != 2 * c.n - 2)
    throw std::invalid_argument("structure_to_ttree: y_1 tree has the wrong size");
  for (node_id i = 0; i < v; ++i) {
    if (!keep[i] || c.nodes[i].kind != node_kind::comp) continue;
    t.edges.emplace_back(ttid[i], ttid[c.nodes[i].lhs]);
    t.edges.emplace_back(ttid[i], ttid[c.nodes[i].rhs]);
  }
  t.edges.emplace_back(0, ttid[y1]);
  return t;
}

inline structure construct_complexity_optimal(int n) {
  return ttree_to_structure(complexity_optimal_ttree(n));
}

inline int enumeration_cap() {
  if (const char* env = std::getenv("MPS_ENUM_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 2 && v <= 12) return static_cast<int>(v);
  }
  return 9;
}

// All trees with n labelled leaves, built by inserting each next leaf on
// every edge. Internal ids never shift, so yields share the vertex naming.
template <typename F>
void enumerate_ttrees(int n, F&& yield) {
  if (n < 2) throw std::invalid_argument("enumerate_ttrees: need at least two leaves");
  if (n > enumeration_cap())
    throw std::invalid_argument("enumerate_ttrees: n exceeds the enumeration cap");
  ttree t;
  t.n = n;
  t.vertex_count = n == 2 ? 2 : 2 * n - 2;
  t.edges.emplace_back(0, 1);
  if (n == 2) {
    yield(std::as_const(t));
    return;
  }
  std::function<void(int)> step = [&](int k) {
    if (k > n) {
      yield(std::as_const(t));
      return;
    }
    int leaf = k - 1;
    int w = n + k - 3;
    std::size_t limit = t.edges.size();
    for (std::size_t e = 0; e < limit; ++e) {
      auto [u, v] = t.edges[e];
      t.edges[e] = {u, w};
      t.edges.emplace_back(w, v);
      t.edges.emplace_back(w, leaf);
      step(k + 1);
      t.edges.pop_back();
      t.edges.pop_back();
      t.edges[e] = {u, v};
    }
  };
  step(3);
}

inline std::uint64_t ttree_count(int n) {
  if (n < 2) throw std::invalid_argument("ttree_count: need at least two leaves");
  return odd_double_factorial(2 * static_cast<std::int64_t>(n) - 5);
}

// Stable identity: encode the tree rooted at x_1's neighbor with sorted
// child encodings.
inline std::string ttree_canonical_key(const ttree& t) {
  if (!is_valid_ttree(t)) throw std::invalid_argument("ttree_canonical_key: not a valid ttree");
  auto adj = ttree_adjacency(t);
  std::function<std::string(int, int)> encode = [&](int v, int parent) -> std::string {
    if (v < t.n) return "x" + std::to_string(v + 1);
    std::vector<std::string> kids;
    for (int w : adj[v])
      if (w != parent) kids.push_back(encode(w, v));
    std::sort(kids.begin(), kids.end());
    return "(" + kids[0] + " " + kids[1] + ")";
  };
  return encode(adj[0][0], 0);
}

}  // namespace mps
