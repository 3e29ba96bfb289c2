#pragma once
// Computation structures: DAGs of binary ops whose per-node dependency
// subgraphs are binary trees over labelled inputs. Model, validation,
// canonical forms, complement pairs, evaluation, forward-backward chains.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mps/intlog.hpp"

namespace mps {

// Malformed graph data: dangling ids, cycles, label conflicts.
class structural_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int max_inputs = 128;

// Set of 1-based input/output indices, capacity max_inputs.
class index_set {
 public:
  static constexpr int capacity = max_inputs;

  static index_set full(int n) {
    index_set s;
    for (int i = 1; i <= n; ++i) s.insert(i);
    return s;
  }

  void insert(int i) { words_[slot(i)] |= mask(i); }
  bool contains(int i) const { return (words_[slot(i)] & mask(i)) != 0; }
  int size() const { return std::popcount(words_[0]) + std::popcount(words_[1]); }
  bool empty() const { return (words_[0] | words_[1]) == 0; }
  bool intersects(const index_set& o) const {
    return ((words_[0] & o.words_[0]) | (words_[1] & o.words_[1])) != 0;
  }
  index_set& operator|=(const index_set& o) {
    words_[0] |= o.words_[0];
    words_[1] |= o.words_[1];
    return *this;
  }
  friend index_set operator|(index_set a, const index_set& b) { return a |= b; }
  index_set minus(const index_set& o) const {
    index_set r = *this;
    r.words_[0] &= ~o.words_[0];
    r.words_[1] &= ~o.words_[1];
    return r;
  }
  bool operator==(const index_set&) const = default;

  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 1; i <= capacity; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  // The unique index in 1..n absent from this set.
  int sole_missing(int n) const {
    int found = 0;
    for (int i = 1; i <= n; ++i) {
      if (contains(i)) continue;
      if (found) throw std::logic_error("sole_missing: more than one absent index");
      found = i;
    }
    if (!found) throw std::logic_error("sole_missing: no absent index");
    return found;
  }

 private:
  static int slot(int i) {
    if (i < 1 || i > capacity) throw std::out_of_range("index_set: index out of range");
    return (i - 1) >> 6;
  }
  static std::uint64_t mask(int i) { return std::uint64_t{1} << ((i - 1) & 63); }
  std::array<std::uint64_t, 2> words_{};
};

using node_id = int;

enum class node_kind { input, comp };

struct node {
  node_kind kind = node_kind::input;
  int index = 0;         // x-label, inputs only
  node_id lhs = -1;      // comps only, lhs <= rhs
  node_id rhs = -1;
  int output_index = 0;  // y-label if positive
};

struct structure {
  int n = 0;
  std::vector<node> nodes;
};

inline void check_well_formed(const structure& s) {
  if (s.n < 2 || s.n > max_inputs) throw structural_error("input count out of range");
  const int v = static_cast<int>(s.nodes.size());
  for (const node& nd : s.nodes) {
    if (nd.kind == node_kind::input) {
      if (nd.lhs != -1 || nd.rhs != -1) throw structural_error("input node with operands");
      if (nd.index < 1 || nd.index > max_inputs) throw structural_error("input label out of range");
    } else {
      if (nd.lhs < 0 || nd.lhs >= v || nd.rhs < 0 || nd.rhs >= v)
        throw structural_error("operand id out of range");
      if (nd.index != 0) throw structural_error("comp node with input label");
    }
    if (nd.output_index < 0 || nd.output_index > max_inputs)
      throw structural_error("output label out of range");
  }
}

namespace detail {

inline bool try_topological_order(const structure& s, std::vector<node_id>& order) {
  const int v = static_cast<int>(s.nodes.size());
  std::vector<int> pending(v, 0);
  std::vector<std::vector<node_id>> consumers(v);
  for (node_id i = 0; i < v; ++i) {
    const node& nd = s.nodes[i];
    if (nd.kind == node_kind::comp) {
      pending[i] = 2;
      consumers[nd.lhs].push_back(i);
      consumers[nd.rhs].push_back(i);
    }
  }
  order.clear();
  order.reserve(v);
  for (node_id i = 0; i < v; ++i)
    if (pending[i] == 0) order.push_back(i);
  for (std::size_t head = 0; head < order.size(); ++head)
    for (node_id c : consumers[order[head]])
      if (--pending[c] == 0) order.push_back(c);
  return static_cast<int>(order.size()) == v;
}

}  // namespace detail

inline std::vector<node_id> topological_order(const structure& s) {
  check_well_formed(s);
  std::vector<node_id> order;
  if (!detail::try_topological_order(s, order))
    throw structural_error("acyclic: dependency cycle among comp nodes");
  return order;
}

inline int complexity(const structure& s) {
  int c = 0;
  for (const node& nd : s.nodes) c += nd.kind == node_kind::comp;
  return c;
}

inline std::vector<int> node_heights(const structure& s) {
  auto order = topological_order(s);
  std::vector<int> h(s.nodes.size(), 0);
  for (node_id v : order) {
    const node& nd = s.nodes[v];
    if (nd.kind == node_kind::comp) h[v] = 1 + std::max(h[nd.lhs], h[nd.rhs]);
  }
  return h;
}

inline int latency(const structure& s) {
  auto h = node_heights(s);
  int best = 0;
  for (int x : h) best = std::max(best, x);
  return best;
}

inline std::vector<index_set> leaf_sets(const structure& s) {
  auto order = topological_order(s);
  std::vector<index_set> ls(s.nodes.size());
  for (node_id v : order) {
    const node& nd = s.nodes[v];
    if (nd.kind == node_kind::input)
      ls[v].insert(nd.index);
    else
      ls[v] = ls[nd.lhs] | ls[nd.rhs];
  }
  return ls;
}

inline std::vector<int> out_degrees(const structure& s) {
  check_well_formed(s);
  std::vector<int> deg(s.nodes.size(), 0);
  for (const node& nd : s.nodes)
    if (nd.kind == node_kind::comp) {
      ++deg[nd.lhs];
      ++deg[nd.rhs];
    }
  return deg;
}

// Node labelled y_j, or -1.
inline node_id find_output_node(const structure& s, int j) {
  for (node_id v = 0; v < static_cast<node_id>(s.nodes.size()); ++v)
    if (s.nodes[v].output_index == j) return v;
  return -1;
}

// Canonical form key per node: inputs "x<j>", comps "(<a> <b>)" with child
// keys in string order. Equal keys mean equal unordered computation trees.
inline std::vector<std::string> canonical_keys(const structure& s) {
  auto order = topological_order(s);
  std::vector<std::string> key(s.nodes.size());
  for (node_id v : order) {
    const node& nd = s.nodes[v];
    if (nd.kind == node_kind::input) {
      key[v] = "x" + std::to_string(nd.index);
    } else {
      const std::string& a = key[nd.lhs];
      const std::string& b = key[nd.rhs];
      key[v] = a <= b ? "(" + a + " " + b + ")" : "(" + b + " " + a + ")";
    }
  }
  return key;
}

inline std::vector<std::string> canonical_signature(const structure& s) {
  auto keys = canonical_keys(s);
  std::vector<std::string> comps;
  for (node_id v = 0; v < static_cast<node_id>(s.nodes.size()); ++v)
    if (s.nodes[v].kind == node_kind::comp) comps.push_back(keys[v]);
  std::sort(comps.begin(), comps.end());
  return comps;
}

// Signature plus per-output form keys, as one string. Equal keys mean the
// structures are the same up to node ids.
inline std::string structure_key(const structure& s) {
  auto keys = canonical_keys(s);
  auto sig = canonical_signature(s);
  std::string out = "n=" + std::to_string(s.n) + ";";
  for (const std::string& k : sig) out += k + ";";
  std::vector<std::string> outputs(s.n + 1);
  for (node_id v = 0; v < static_cast<node_id>(s.nodes.size()); ++v) {
    int j = s.nodes[v].output_index;
    if (j >= 1 && j <= s.n) outputs[j] = keys[v];
  }
  for (int j = 1; j <= s.n; ++j) out += "y" + std::to_string(j) + "=" + outputs[j] + ";";
  return out;
}

inline bool equal_structures(const structure& a, const structure& b) {
  if (a.n != b.n) return false;
  return structure_key(a) == structure_key(b);
}

// Quotient by canonical form: inputs at ids 0..n-1 in index order, distinct
// comp forms sorted by (height, key), operands ascending. Nodes with equal
// form are merged; their output labels must agree.
inline structure canonicalize(const structure& s) {
  auto keys = canonical_keys(s);
  auto heights = node_heights(s);
  const int v = static_cast<int>(s.nodes.size());

  std::vector<std::vector<node_id>> input_of(s.n + 1);
  int input_count = 0;
  for (node_id i = 0; i < v; ++i) {
    const node& nd = s.nodes[i];
    if (nd.kind != node_kind::input) continue;
    ++input_count;
    if (nd.index > s.n) throw structural_error("input label exceeds input count");
    input_of[nd.index].push_back(i);
  }
  if (input_count < s.n) throw structural_error("missing input labels");
  for (int j = 1; j <= s.n; ++j)
    if (input_of[j].empty()) throw structural_error("missing input labels");

  auto merged_label = [&](const std::vector<node_id>& ids) {
    int label = 0;
    for (node_id i : ids) {
      int li = s.nodes[i].output_index;
      if (li == 0) continue;
      if (label != 0 && label != li)
        throw structural_error("output label conflict on equal forms");
      label = li;
    }
    return label;
  };

  std::map<std::pair<int, std::string>, std::vector<node_id>> forms;
  for (node_id i = 0; i < v; ++i)
    if (s.nodes[i].kind == node_kind::comp) forms[{heights[i], keys[i]}].push_back(i);

  structure out;
  out.n = s.n;
  out.nodes.reserve(s.n + forms.size());
  std::map<std::string, node_id> id_of;
  for (int j = 1; j <= s.n; ++j) {
    node nd;
    nd.kind = node_kind::input;
    nd.index = j;
    nd.output_index = merged_label(input_of[j]);
    out.nodes.push_back(nd);
    id_of["x" + std::to_string(j)] = j - 1;
  }
  for (const auto& [hk, ids] : forms) {
    const node& rep = s.nodes[ids.front()];
    node nd;
    nd.kind = node_kind::comp;
    node_id a = id_of.at(keys[rep.lhs]);
    node_id b = id_of.at(keys[rep.rhs]);
    nd.lhs = std::min(a, b);
    nd.rhs = std::max(a, b);
    nd.output_index = merged_label(ids);
    node_id nid = static_cast<node_id>(out.nodes.size());
    out.nodes.push_back(nd);
    id_of[hk.second] = nid;
  }
  return out;
}

struct validation_report {
  bool is_structure = false;
  bool is_for_y = false;
  std::vector<std::string> violations;
};

inline bool has_violation(const validation_report& rep, const std::string& rule) {
  for (const std::string& msg : rep.violations)
    if (msg.rfind(rule, 0) == 0) return true;
  return false;
}

// Checks the structure invariants (acyclic, input labels, every dependency
// subgraph a tree, no repeated forms), then the output contract (labels on
// all sinks bijectively, each y_j computed from exactly the inputs except
// x_j). Throws structural_error only for malformed node data.
inline validation_report validate(const structure& s) {
  check_well_formed(s);
  validation_report rep;
  const int v = static_cast<int>(s.nodes.size());

  std::vector<node_id> order;
  if (!detail::try_topological_order(s, order)) {
    rep.violations.push_back("acyclic: dependency cycle among comp nodes");
    return rep;
  }

  {
    std::vector<int> seen(s.n + 1, 0);
    int count = 0;
    bool ok = true;
    for (const node& nd : s.nodes) {
      if (nd.kind != node_kind::input) continue;
      ++count;
      if (nd.index < 1 || nd.index > s.n || seen[nd.index]++) ok = false;
    }
    if (count != s.n) ok = false;
    if (!ok)
      rep.violations.push_back("input labels: inputs must carry x_1..x_n exactly once each");
  }

  {
    const int words = (v + 63) / 64;
    std::vector<std::vector<std::uint64_t>> anc(v);
    node_id offender = -1;
    for (node_id i : order) {
      const node& nd = s.nodes[i];
      auto& bits = anc[i];
      bits.assign(words, 0);
      if (nd.kind == node_kind::comp) {
        bool overlap = false;
        for (int w = 0; w < words; ++w) {
          if (anc[nd.lhs][w] & anc[nd.rhs][w]) overlap = true;
          bits[w] = anc[nd.lhs][w] | anc[nd.rhs][w];
        }
        if (overlap && offender < 0) offender = i;
      }
      bits[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    if (offender >= 0)
      rep.violations.push_back("ancestor not tree: node " + std::to_string(offender) +
                               " merges overlapping dependency sets");
  }

  {
    auto keys = canonical_keys(s);
    std::vector<std::pair<std::string, node_id>> sorted;
    sorted.reserve(v);
    for (node_id i = 0; i < v; ++i) sorted.emplace_back(keys[i], i);
    std::sort(sorted.begin(), sorted.end());
    for (int i = 1; i < v; ++i) {
      if (sorted[i].first == sorted[i - 1].first) {
        rep.violations.push_back("duplicate subtree: nodes " +
                                 std::to_string(sorted[i - 1].second) + " and " +
                                 std::to_string(sorted[i].second) + " share a form");
        break;
      }
    }
  }

  rep.is_structure = rep.violations.empty();
  if (!rep.is_structure) return rep;

  auto deg = out_degrees(s);
  {
    std::vector<int> seen(s.n + 1, 0);
    bool ok = true;
    for (node_id i = 0; i < v; ++i) {
      const node& nd = s.nodes[i];
      if (nd.output_index == 0) {
        if (deg[i] == 0) ok = false;  // unlabelled sink
        continue;
      }
      if (deg[i] != 0 || nd.output_index > s.n || seen[nd.output_index]++) ok = false;
    }
    for (int j = 1; j <= s.n; ++j)
      if (!seen[j]) ok = false;
    if (!ok)
      rep.violations.push_back("output labels: sinks must carry y_1..y_n exactly once each");
  }
  {
    auto ls = leaf_sets(s);
    auto full = index_set::full(s.n);
    for (node_id i = 0; i < v; ++i) {
      int j = s.nodes[i].output_index;
      if (j < 1 || j > s.n) continue;
      index_set one;
      one.insert(j);
      if (ls[i] != full.minus(one)) {
        rep.violations.push_back("output leaf set: y_" + std::to_string(j) +
                                 " must combine every input except x_" + std::to_string(j));
        break;
      }
    }
  }

  rep.is_for_y = rep.violations.empty();
  return rep;
}

// Inputs appearing in the dependency subgraph of id (id included).
inline index_set entering(const structure& s, node_id id) {
  check_well_formed(s);
  if (id < 0 || id >= static_cast<node_id>(s.nodes.size()))
    throw std::invalid_argument("entering: node id out of range");
  std::vector<char> mark(s.nodes.size(), 0);
  std::vector<node_id> stack{id};
  mark[id] = 1;
  index_set out;
  while (!stack.empty()) {
    node_id v = stack.back();
    stack.pop_back();
    const node& nd = s.nodes[v];
    if (nd.kind == node_kind::input) {
      out.insert(nd.index);
      continue;
    }
    for (node_id c : {nd.lhs, nd.rhs})
      if (!mark[c]) {
        mark[c] = 1;
        stack.push_back(c);
      }
  }
  return out;
}

// Output labels reachable from id through consumers (id included).
inline index_set leaving(const structure& s, node_id id) {
  check_well_formed(s);
  const int v = static_cast<int>(s.nodes.size());
  if (id < 0 || id >= v) throw std::invalid_argument("leaving: node id out of range");
  std::vector<std::vector<node_id>> consumers(v);
  for (node_id i = 0; i < v; ++i) {
    const node& nd = s.nodes[i];
    if (nd.kind == node_kind::comp) {
      consumers[nd.lhs].push_back(i);
      consumers[nd.rhs].push_back(i);
    }
  }
  std::vector<char> mark(v, 0);
  std::vector<node_id> stack{id};
  mark[id] = 1;
  index_set out;
  while (!stack.empty()) {
    node_id u = stack.back();
    stack.pop_back();
    int j = s.nodes[u].output_index;
    if (j >= 1) out.insert(j);
    for (node_id c : consumers[u])
      if (!mark[c]) {
        mark[c] = 1;
        stack.push_back(c);
      }
  }
  return out;
}

// Incremental construction; inputs exist up front, comps appended after
// their operands, so the node list stays topological.
class structure_builder {
 public:
  explicit structure_builder(int n) {
    if (n < 2 || n > max_inputs)
      throw std::invalid_argument("structure_builder: input count must be in [2, 128]");
    s_.n = n;
    for (int j = 1; j <= n; ++j) {
      node nd;
      nd.kind = node_kind::input;
      nd.index = j;
      s_.nodes.push_back(nd);
    }
    output_of_.assign(n + 1, -1);
  }

  int n() const { return s_.n; }

  node_id input_id(int index) const {
    if (index < 1 || index > s_.n) throw std::invalid_argument("input_id: index out of range");
    return index - 1;
  }

  node_id add_comp(node_id a, node_id b) {
    check_id(a);
    check_id(b);
    node nd;
    nd.kind = node_kind::comp;
    nd.lhs = std::min(a, b);
    nd.rhs = std::max(a, b);
    s_.nodes.push_back(nd);
    const node_id id = static_cast<node_id>(s_.nodes.size()) - 1;
    memo_.emplace(std::pair{nd.lhs, nd.rhs}, id);
    return id;
  }

  node_id shared_comp(node_id a, node_id b) {
    check_id(a);
    check_id(b);
    auto it = memo_.find(std::minmax(a, b));
    if (it != memo_.end()) return it->second;
    return add_comp(a, b);
  }

  void set_output(node_id id, int output_index) {
    check_id(id);
    if (output_index < 1 || output_index > s_.n)
      throw std::invalid_argument("set_output: output index out of range");
    if (output_of_[output_index] != -1)
      throw std::invalid_argument("set_output: output index already assigned");
    if (s_.nodes[id].output_index != 0)
      throw std::invalid_argument("set_output: node already labelled");
    s_.nodes[id].output_index = output_index;
    output_of_[output_index] = id;
  }

  const structure& peek() const { return s_; }
  structure take() { return std::move(s_); }

 private:
  void check_id(node_id id) const {
    if (id < 0 || id >= static_cast<node_id>(s_.nodes.size()))
      throw std::invalid_argument("structure_builder: node id out of range");
  }

  structure s_;
  std::map<std::pair<node_id, node_id>, node_id> memo_;
  std::vector<node_id> output_of_;
};

// Merge two structures over the same inputs; equal forms are shared.
inline structure unite(const structure& a, const structure& b) {
  if (a.n != b.n) throw std::invalid_argument("unite: input counts differ");
  structure merged;
  merged.n = a.n;
  merged.nodes = a.nodes;
  const node_id off = static_cast<node_id>(a.nodes.size());
  for (node nd : b.nodes) {
    if (nd.kind == node_kind::comp) {
      nd.lhs += off;
      nd.rhs += off;
    }
    merged.nodes.push_back(nd);
  }
  return canonicalize(merged);
}

// All n inputs plus the comps feeding id; output labels kept only on kept nodes.
inline structure extract_entering(const structure& s, node_id id) {
  auto order = topological_order(s);
  const int v = static_cast<int>(s.nodes.size());
  if (id < 0 || id >= v) throw std::invalid_argument("extract_entering: node id out of range");

  std::vector<char> keep(v, 0);
  std::vector<node_id> stack{id};
  keep[id] = 1;
  while (!stack.empty()) {
    node_id u = stack.back();
    stack.pop_back();
    const node& nd = s.nodes[u];
    if (nd.kind != node_kind::comp) continue;
    for (node_id c : {nd.lhs, nd.rhs})
      if (!keep[c]) {
        keep[c] = 1;
        stack.push_back(c);
      }
  }

  structure_builder b(s.n);
  std::vector<node_id> remap(v, -1);
  for (node_id i = 0; i < v; ++i)
    if (s.nodes[i].kind == node_kind::input) remap[i] = b.input_id(s.nodes[i].index);
  for (node_id i : order) {
    const node& nd = s.nodes[i];
    if (!keep[i] || nd.kind != node_kind::comp) continue;
    remap[i] = b.add_comp(remap[nd.lhs], remap[nd.rhs]);
  }
  for (node_id i = 0; i < v; ++i)
    if (keep[i] && s.nodes[i].output_index >= 1 && s.nodes[i].output_index <= s.n)
      b.set_output(remap[i], s.nodes[i].output_index);
  return canonicalize(b.take());
}

// Unordered node pair whose leaf sets partition the full input set; combining
// the two yields the fold of every input.
struct complement_pair {
  node_id a = -1;
  node_id b = -1;
  friend bool operator==(const complement_pair&, const complement_pair&) = default;
};

inline std::vector<complement_pair> complement_pairs(const structure& s) {
  auto ls = leaf_sets(s);
  auto full = index_set::full(s.n);
  const int v = static_cast<int>(s.nodes.size());
  std::vector<complement_pair> out;
  for (node_id a = 0; a < v; ++a)
    for (node_id b = a + 1; b < v; ++b)
      if (!ls[a].intersects(ls[b]) && (ls[a] | ls[b]) == full) out.push_back({a, b});
  return out;
}

struct join_info {
  int height = 0;                     // minimal height of a fold-of-everything node
  std::vector<complement_pair> pairs; // all pairs achieving it, id order
};

inline join_info min_join(const structure& s) {
  auto heights = node_heights(s);
  auto all = complement_pairs(s);
  if (all.empty()) throw std::invalid_argument("min_join: structure has no complement pairs");
  join_info best;
  best.height = std::numeric_limits<int>::max();
  for (const complement_pair& p : all) {
    int h = 1 + std::max(heights[p.a], heights[p.b]);
    if (h < best.height) {
      best.height = h;
      best.pairs.clear();
    }
    if (h == best.height) best.pairs.push_back(p);
  }
  return best;
}

inline int pi_value(const structure& s) { return min_join(s).height; }

// The two-input structure: no comps, y_1 = x_2 and y_2 = x_1.
inline structure trivial_structure() {
  structure_builder b(2);
  b.set_output(b.input_id(2), 1);
  b.set_output(b.input_id(1), 2);
  return b.take();
}

// Forward and backward running folds; 3(n-2) comps, latency n-2.
inline structure forward_backward(int n) {
  if (n < 3) throw std::invalid_argument("forward_backward: need at least three inputs");
  if (n > max_inputs) throw std::invalid_argument("forward_backward: too many inputs");
  structure_builder b(n);
  std::vector<node_id> fwd(n, -1), bwd(n + 2, -1);
  fwd[1] = b.input_id(1);
  for (int j = 2; j <= n - 1; ++j) fwd[j] = b.shared_comp(fwd[j - 1], b.input_id(j));
  bwd[n] = b.input_id(n);
  for (int j = n - 1; j >= 2; --j) bwd[j] = b.shared_comp(b.input_id(j), bwd[j + 1]);
  b.set_output(bwd[2], 1);
  for (int j = 2; j <= n - 1; ++j) b.set_output(b.shared_comp(fwd[j - 1], bwd[j + 1]), j);
  b.set_output(fwd[n - 1], n);
  return canonicalize(b.take());
}

// Applies op over the structure and returns (y_1, ..., y_n).
template <typename T, typename Op>
std::vector<T> evaluate(const structure& s, Op&& op, const std::vector<T>& inputs) {
  if (static_cast<int>(inputs.size()) != s.n)
    throw std::invalid_argument("evaluate: expected exactly n input values");
  auto order = topological_order(s);
  std::vector<T> val(s.nodes.size());
  std::vector<node_id> of_output(s.n + 1, -1);
  for (node_id v : order) {
    const node& nd = s.nodes[v];
    if (nd.kind == node_kind::input) {
      if (nd.index > s.n) throw structural_error("input label exceeds input count");
      val[v] = inputs[nd.index - 1];
    } else {
      val[v] = op(val[nd.lhs], val[nd.rhs]);
    }
    if (nd.output_index >= 1 && nd.output_index <= s.n) of_output[nd.output_index] = v;
  }
  std::vector<T> out;
  out.reserve(s.n);
  for (int j = 1; j <= s.n; ++j) {
    if (of_output[j] < 0)
      throw structural_error("output labels: y_" + std::to_string(j) + " missing");
    out.push_back(val[of_output[j]]);
  }
  return out;
}

// Reference results: y_j folds every input except the j-th, left to right.
template <typename T, typename Op>
std::vector<T> independent_folds(Op&& op, const std::vector<T>& inputs) {
  const int n = static_cast<int>(inputs.size());
  if (n < 2) throw std::invalid_argument("independent_folds: need at least two values");
  std::vector<T> out;
  out.reserve(n);
  for (int j = 0; j < n; ++j) {
    std::optional<T> acc;
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      acc = acc ? op(*acc, inputs[i]) : inputs[i];
    }
    out.push_back(*acc);
  }
  return out;
}

}  // namespace mps
