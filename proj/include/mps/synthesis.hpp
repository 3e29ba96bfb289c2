#pragma once
// Structure synthesis under a latency budget: the layered power-window
// construction, composition of parts through a base structure, the
// budget-driven dispatcher, and the all-outputs adaptation.

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mps/dp.hpp"
#include "mps/structure.hpp"
#include "mps/ttree.hpp"

namespace mps {

// Requested latency budget cannot be met.
class infeasible_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// For n = 2^k + 1: k layers of cyclic windows; layer i combines windows of
// size 2^(i-1) that are 2^(i-1) apart, so every layer-k node covers a
// distinct window of n - 1 inputs. Complexity nk, latency k.
inline structure construct_latency_optimal_pow2(int n) {
  if (n < 3 || n > max_inputs || !is_power_of_two(static_cast<std::uint64_t>(n - 1)))
    throw std::invalid_argument("construct_latency_optimal_pow2: need n = 2^k + 1, k >= 1");
  const int k = floor_log2(static_cast<std::uint64_t>(n - 1));
  structure_builder b(n);
  std::vector<node_id> prev(n), cur(n);
  for (int j = 0; j < n; ++j) prev[j] = b.input_id(j + 1);
  for (int i = 1; i <= k; ++i) {
    for (int j = 0; j < n; ++j) cur[j] = b.add_comp(prev[j], prev[(j + (1 << (i - 1))) % n]);
    prev = cur;
  }
  // The window starting at x_{j+1} misses exactly the input before it.
  for (int j = 0; j < n; ++j) b.set_output(prev[j], ((j + n - 1) % n) + 1);
  structure s = canonicalize(b.take());
  if (complexity(s) != n * k)
    throw std::logic_error("construct_latency_optimal_pow2: unexpected shared forms");
  return s;
}

// Feeds each part's total fold into one base input, then joins every part
// output with the matching base output. Base inputs beyond the parts pass
// raw inputs through. Global input order: part blocks first, then raws.
inline structure compose(const structure& s0_in, const std::vector<structure>& parts_in,
                         const std::vector<complement_pair>* pairs_in = nullptr) {
  structure s0 = canonicalize(s0_in);
  if (!validate(s0).is_for_y)
    throw std::invalid_argument("compose: base structure does not satisfy the output contract");
  const int m = static_cast<int>(parts_in.size());
  const int n0 = s0.n;
  if (m < 1) throw std::invalid_argument("compose: need at least one part");
  if (m > n0) throw std::invalid_argument("compose: more parts than base inputs");
  if (pairs_in && static_cast<int>(pairs_in->size()) != m)
    throw std::invalid_argument("compose: need one complement pair per part");

  std::vector<structure> parts;
  std::vector<complement_pair> pairs;
  int total_part_inputs = 0;
  for (int i = 0; i < m; ++i) {
    parts.push_back(canonicalize(parts_in[i]));
    if (!validate(parts[i]).is_for_y)
      throw std::invalid_argument("compose: part does not satisfy the output contract");
    auto best = min_join(parts[i]);
    if (pairs_in) {
      bool ok = false;
      for (const complement_pair& p : best.pairs) ok |= p == (*pairs_in)[i];
      if (!ok)
        throw std::invalid_argument("compose: pair is not a minimal-height complement pair");
      pairs.push_back((*pairs_in)[i]);
    } else {
      pairs.push_back(best.pairs.front());
    }
    total_part_inputs += parts[i].n;
  }

  const int n = total_part_inputs + n0 - m;
  if (n > max_inputs) throw std::invalid_argument("compose: input capacity exceeded");

  structure_builder b(n);
  std::vector<int> block_base(m + 1, 0);  // global input offset per part
  for (int i = 1; i <= m; ++i) block_base[i] = block_base[i - 1] + parts[i - 1].n;
  auto raw_global = [&](int i0) { return total_part_inputs + (i0 - m); };  // i0 in m+1..n0

  std::vector<std::vector<node_id>> part_map(m);
  std::vector<node_id> part_total(m, -1);
  for (int i = 0; i < m; ++i) {
    const structure& p = parts[i];
    part_map[i].assign(p.nodes.size(), -1);
    for (node_id v = 0; v < static_cast<node_id>(p.nodes.size()); ++v) {
      const node& nd = p.nodes[v];
      part_map[i][v] = nd.kind == node_kind::input
                           ? b.input_id(block_base[i] + nd.index)
                           : b.add_comp(part_map[i][nd.lhs], part_map[i][nd.rhs]);
    }
    part_total[i] = b.add_comp(part_map[i][pairs[i].a], part_map[i][pairs[i].b]);
  }

  std::vector<node_id> base_map(s0.nodes.size(), -1);
  for (node_id v = 0; v < static_cast<node_id>(s0.nodes.size()); ++v) {
    const node& nd = s0.nodes[v];
    if (nd.kind == node_kind::input)
      base_map[v] = nd.index <= m ? part_total[nd.index - 1] : b.input_id(raw_global(nd.index));
    else
      base_map[v] = b.add_comp(base_map[nd.lhs], base_map[nd.rhs]);
  }

  std::vector<node_id> output_nodes;
  for (int i = 0; i < m; ++i) {
    node_id b0 = base_map[find_output_node(s0, i + 1)];
    for (int j = 1; j <= parts[i].n; ++j)
      output_nodes.push_back(b.add_comp(part_map[i][find_output_node(parts[i], j)], b0));
  }
  for (int i0 = m + 1; i0 <= n0; ++i0)
    output_nodes.push_back(base_map[find_output_node(s0, i0)]);

  cost_t want = complexity(s0);
  for (int i = 0; i < m; ++i) want += complexity(parts[i]) + parts[i].n + 1;
  if (complexity(b.peek()) != want)
    throw std::logic_error("compose: comp count drifted from the part/base formula");

  auto ls = leaf_sets(b.peek());
  for (node_id v : output_nodes) b.set_output(v, ls[v].sole_missing(n));

  structure out = canonicalize(b.take());
  if (complexity(out) != want) throw std::logic_error("compose: unexpected shared forms");
  return out;
}

inline structure compose(const structure& s0, const std::vector<structure>& parts,
                         const std::vector<complement_pair>& pairs) {
  return compose(s0, parts, &pairs);
}

// One node of the synthesis plan; children hold the base plan first, then
// one plan per part.
struct synthesis_step {
  int n = 0;
  int tau = 0;
  phi_case dispatch = phi_case::trivial;
  int n0 = 0;
  int tau0 = 0;
  std::vector<int> part_sizes;
  int units = 0;
  std::vector<synthesis_step> children;
};

// Builds minimum-complexity structures for a latency budget, memoized per
// (n, tau). Thread safe; construction happens outside the lock.
class synthesizer {
 public:
  explicit synthesizer(const cost_tables& tables) : tables_(tables) {}

  structure build(int n, int tau) {
    if (n < 2) throw std::invalid_argument("synthesizer: need at least two inputs");
    if (n > tables_.n_max) throw std::out_of_range("synthesizer: n outside the cost tables");
    if (tau < 0) throw std::invalid_argument("synthesizer: negative latency budget");
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find({n, tau});
      if (it != memo_.end()) return it->second;
    }
    structure s;
    switch (case_at(n, tau)) {
      case phi_case::trivial:
        s = trivial_structure();
        break;
      case phi_case::infeasible:
        throw infeasible_error("infeasible: tau < ceil(log(n-1))");
      case phi_case::complexity_optimal:
        s = construct_complexity_optimal(n);
        break;
      case phi_case::power_window:
        s = construct_latency_optimal_pow2(n);
        break;
      case phi_case::decompose: {
        decomposition d = traceback(tables_, n, tau);
        std::vector<structure> parts;
        parts.reserve(d.part_sizes.size());
        for (int p : d.part_sizes) parts.push_back(build(p, tau - 1));
        structure base = build(d.n0, d.tau0);
        s = compose(base, parts);
        break;
      }
    }
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = memo_.emplace(std::pair{n, tau}, std::move(s));
    return it->second;
  }

  synthesis_step plan(int n, int tau) {
    if (n < 2) throw std::invalid_argument("synthesizer: need at least two inputs");
    if (n > tables_.n_max) throw std::out_of_range("synthesizer: n outside the cost tables");
    if (tau < 0) throw std::invalid_argument("synthesizer: negative latency budget");
    synthesis_step step;
    step.n = n;
    step.tau = tau;
    step.dispatch = case_at(n, tau);
    if (step.dispatch == phi_case::infeasible)
      throw infeasible_error("infeasible: tau < ceil(log(n-1))");
    if (step.dispatch == phi_case::decompose) {
      decomposition d = traceback(tables_, n, tau);
      step.n0 = d.n0;
      step.tau0 = d.tau0;
      step.part_sizes = d.part_sizes;
      step.units = d.units;
      step.children.push_back(plan(d.n0, d.tau0));
      for (int p : d.part_sizes) step.children.push_back(plan(p, tau - 1));
    }
    return step;
  }

 private:
  const cost_tables& tables_;
  std::mutex mu_;
  std::map<std::pair<int, int>, structure> memo_;
};

inline structure construct_general(const cost_tables& tables, int n, int tau) {
  synthesizer s(tables);
  return s.build(n, tau);
}

// Replaces y_1 with the fold of every input: drop the y_1 sink, then join a
// minimal-height complement pair not involving it. Comp count is unchanged;
// operands orphaned by the dropped sink stay in place.
inline structure adapt_variable_node(const structure& s_in) {
  if (!validate(s_in).is_for_y)
    throw std::invalid_argument("adapt_variable_node: structure does not satisfy the output contract");
  structure s = canonicalize(s_in);
  node_id y1 = find_output_node(s, 1);
  complement_pair chosen{-1, -1};
  for (const complement_pair& p : min_join(s).pairs)
    if (p.a != y1 && p.b != y1) {
      chosen = p;
      break;
    }
  if (chosen.a < 0)
    throw std::invalid_argument("adapt_variable_node: no usable complement pair");

  structure out;
  out.n = s.n;
  std::vector<node_id> remap(s.nodes.size(), -1);
  for (node_id v = 0; v < static_cast<node_id>(s.nodes.size()); ++v) {
    if (v == y1) continue;
    node nd = s.nodes[v];
    if (nd.kind == node_kind::comp) {
      node_id a = remap[nd.lhs], b = remap[nd.rhs];
      nd.lhs = std::min(a, b);
      nd.rhs = std::max(a, b);
    }
    remap[v] = static_cast<node_id>(out.nodes.size());
    out.nodes.push_back(nd);
  }
  node join;
  join.kind = node_kind::comp;
  node_id a = remap[chosen.a], b = remap[chosen.b];
  join.lhs = std::min(a, b);
  join.rhs = std::max(a, b);
  join.output_index = 1;
  out.nodes.push_back(join);
  return canonicalize(out);
}

}  // namespace mps
