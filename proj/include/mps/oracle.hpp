#pragma once
// First-principles cross-checks: exhaustive distinct-binary-tree search for
// small n, and reimplementations of the enumeration counts and cost table
// that share no code path with the constructions they verify.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mps/dp.hpp"
#include "mps/intlog.hpp"
#include "mps/structure.hpp"
#include "mps/ttree.hpp"

namespace mps {

struct check_item {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct check_report {
  std::vector<check_item> items;

  bool all_pass() const {
    for (const check_item& it : items)
      if (!it.pass) return false;
    return true;
  }
};

// Node of a rooted binary tree under enumeration. label > 0 marks a leaf
// carrying that input index; internal nodes have label 0 and two children.
struct dbt_node {
  int label = 0;
  int lhs = -1;
  int rhs = -1;
};

namespace detail {

inline int dbt_height(const std::vector<dbt_node>& t, int v) {
  return t[v].label ? 0 : 1 + std::max(dbt_height(t, t[v].lhs), dbt_height(t, t[v].rhs));
}

template <typename F>
void dbt_extend(std::vector<dbt_node>& t, const std::vector<int>& leaves, std::size_t next,
                int max_height, F&& yield) {
  if (next == leaves.size()) {
    if (max_height < 0 || dbt_height(t, 0) <= max_height) yield(std::as_const(t));
    return;
  }
  // Insert the next leaf above each existing node: the node moves to a fresh
  // slot and its old slot becomes the new internal parent. Fixing the
  // insertion order of leaves makes every tree appear exactly once.
  const std::size_t count = t.size();
  for (std::size_t v = 0; v < count; ++v) {
    const int moved = static_cast<int>(t.size());
    t.push_back(t[v]);
    t.push_back(dbt_node{leaves[next], -1, -1});
    t[v] = dbt_node{0, moved, moved + 1};
    dbt_extend(t, leaves, next + 1, max_height, yield);
    t[v] = t[moved];
    t.pop_back();
    t.pop_back();
  }
}

}  // namespace detail

// Enumerates every rooted binary tree over the given distinct leaf labels,
// (2m-3)!! trees for m leaves, rooted at node 0. Trees taller than
// max_height are skipped when the bound is non-negative.
template <typename F>
void enumerate_dbts(const std::vector<int>& leaves, F&& yield, int max_height = -1) {
  if (leaves.empty() || leaves.size() > 8)
    throw std::invalid_argument("enumerate_dbts: need between 1 and 8 leaves");
  std::vector<int> sorted = leaves;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 1 || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("enumerate_dbts: leaf labels must be distinct and positive");
  std::vector<dbt_node> t;
  t.push_back(dbt_node{leaves[0], -1, -1});
  detail::dbt_extend(t, leaves, 1, max_height, yield);
}

struct brute_force_result {
  cost_t cost = cost_infinity;
  std::optional<structure> witness;
};

// Minimum comp count over every way to pick one binary tree per output and
// share equal subtrees, optionally under a height budget. Exhaustive, so
// only small n; the witness is a structure achieving the minimum.
inline brute_force_result brute_force_min(int n, int tau = -1) {
  if (n < 2 || n > 5) throw std::invalid_argument("brute_force_min: supported for 2 <= n <= 5");
  if (n == 2) return {0, trivial_structure()};

  // Intern subtree forms: ids 0..n-1 are the leaves, comp forms get ids in
  // order of first appearance keyed by their unordered operand forms.
  std::map<std::pair<int, int>, int> comp_ids;
  std::vector<std::pair<int, int>> comp_def;
  std::function<int(const std::vector<dbt_node>&, int)> form_of =
      [&](const std::vector<dbt_node>& t, int v) -> int {
    if (t[v].label) return t[v].label - 1;
    const int a = form_of(t, t[v].lhs), b = form_of(t, t[v].rhs);
    const auto key = std::minmax(a, b);
    auto [it, fresh] = comp_ids.emplace(key, n + static_cast<int>(comp_def.size()));
    if (fresh) comp_def.push_back(key);
    return it->second;
  };

  struct shape {
    std::vector<int> comp_forms;
    int root = -1;
  };
  std::vector<std::vector<shape>> choices(n);
  for (int j = 1; j <= n; ++j) {
    std::vector<int> leaves;
    for (int i = 1; i <= n; ++i)
      if (i != j) leaves.push_back(i);
    enumerate_dbts(
        leaves,
        [&](const std::vector<dbt_node>& t) {
          shape sh;
          sh.root = form_of(t, 0);
          for (std::size_t v = 0; v < t.size(); ++v)
            if (!t[v].label) sh.comp_forms.push_back(form_of(t, static_cast<int>(v)));
          std::sort(sh.comp_forms.begin(), sh.comp_forms.end());
          choices[j - 1].push_back(std::move(sh));
        },
        tau);
    if (choices[j - 1].empty()) return {cost_infinity, std::nullopt};
  }

  cost_t best = cost_infinity;
  std::vector<int> pick(n, -1), best_pick;
  std::vector<int> used(n + comp_def.size(), 0);
  cost_t distinct = 0;
  std::function<void(int)> search = [&](int j) {
    if (distinct >= best) return;
    if (j == n) {
      best = distinct;
      best_pick = pick;
      return;
    }
    for (std::size_t idx = 0; idx < choices[j].size(); ++idx) {
      cost_t added = 0;
      for (int f : choices[j][idx].comp_forms)
        if (used[f]++ == 0) ++added;
      distinct += added;
      pick[j] = static_cast<int>(idx);
      search(j + 1);
      distinct -= added;
      for (int f : choices[j][idx].comp_forms) --used[f];
    }
  };
  search(0);
  if (best_pick.empty()) return {cost_infinity, std::nullopt};

  structure_builder b(n);
  std::function<node_id(int)> materialize = [&](int f) -> node_id {
    if (f < n) return b.input_id(f + 1);
    const auto& [x, y] = comp_def[f - n];
    return b.shared_comp(materialize(x), materialize(y));
  };
  for (int j = 1; j <= n; ++j) b.set_output(materialize(choices[j - 1][best_pick[j - 1]].root), j);
  structure s = canonicalize(b.take());
  if (complexity(s) != best) throw std::logic_error("brute_force_min: witness cost drifted");
  return {best, s};
}

// Checks the leaf-insertion enumeration against the closed-form count and,
// for n <= 6, the sharing-pattern properties every member must satisfy:
// two consumers per non-sink, complementary reach, and unique partners.
inline check_report verify_co_enumeration(int n) {
  if (n < 3 || n > 8) throw std::invalid_argument("verify_co_enumeration: need 3 <= n <= 8");
  check_report rep;
  const bool deep = n <= 6;

  std::int64_t count = 0;
  std::set<std::string> keys;
  bool all_valid = true, all_cost = true;
  bool degrees_ok = true, coverage_ok = true, partner_ok = true, pair_count_ok = true;
  std::string first_bad;

  enumerate_ttrees(n, [&](const ttree& t) {
    structure s = ttree_to_structure(t);
    ++count;
    keys.insert(structure_key(s));
    if (!validate(s).is_for_y && all_valid) {
      all_valid = false;
      first_bad = structure_key(s);
    }
    if (complexity(s) != 3 * n - 6) all_cost = false;
    if (!deep) return;

    auto deg = out_degrees(s);
    for (node_id v = 0; v < static_cast<node_id>(s.nodes.size()); ++v) {
      const bool labelled = s.nodes[v].output_index > 0;
      if (labelled ? deg[v] != 0 : deg[v] != 2) degrees_ok = false;
      index_set want = index_set::full(n);
      for (int j : leaving(s, v).members()) {
        index_set one;
        one.insert(j);
        want = want.minus(one);
      }
      if (entering(s, v) != want) coverage_ok = false;
    }

    auto pairs = complement_pairs(s);
    if (static_cast<int>(pairs.size()) != 2 * n - 3) pair_count_ok = false;
    std::vector<int> appearances(s.nodes.size(), 0);
    for (const complement_pair& p : pairs) {
      ++appearances[p.a];
      ++appearances[p.b];
    }
    for (int a : appearances)
      if (a != 1) partner_ok = false;
  });

  const std::int64_t expected = odd_double_factorial(2 * n - 5);
  rep.items.push_back({"count matches double factorial", count == expected,
                       std::to_string(count) + " of " + std::to_string(expected)});
  rep.items.push_back({"images pairwise distinct", static_cast<std::int64_t>(keys.size()) == count,
                       std::to_string(keys.size()) + " distinct keys"});
  rep.items.push_back({"images satisfy the output contract", all_valid, first_bad});
  rep.items.push_back({"images have complexity 3n-6", all_cost, ""});
  if (deep) {
    rep.items.push_back({"non-sinks feed exactly two nodes", degrees_ok, ""});
    rep.items.push_back({"reach complements dependencies", coverage_ok, ""});
    rep.items.push_back({"every node has a unique partner", partner_ok, ""});
    rep.items.push_back({"pair count is 2n-3", pair_count_ok, ""});
  }
  return rep;
}

// Recomputes the minimum-cost table by exhaustive decomposition search with
// memoized closed forms, then compares every cell against the incremental
// table. Also checks that no decomposition beats a closed-form cell.
inline check_report verify_dp_small(int n_max) {
  if (n_max < 2 || n_max > 9) throw std::invalid_argument("verify_dp_small: need 2 <= n_max <= 9");

  std::map<std::pair<int, int>, cost_t> memo;
  bool closed_beaten = false;
  std::string beaten_at;

  // Exhaustive minimum over base size, base budget, and ascending part-size
  // multisets, with parts built one level below the budget.
  std::function<cost_t(int, int)> phi_ref = [&](int n, int tau) -> cost_t {
    if (n == 2) return 0;
    if (tau < static_cast<int>(ceil_log2(static_cast<std::uint64_t>(n - 1)))) return cost_infinity;
    auto it = memo.find({n, tau});
    if (it != memo.end()) return it->second;

    cost_t by_decomp = cost_infinity;
    for (int n0 = 2; n0 <= n - 1; ++n0) {
      for (int tau0 = 0; tau0 <= tau - 1; ++tau0) {
        const cost_t base = phi_ref(n0, tau0);
        if (base >= cost_infinity) continue;
        const int theta =
            std::min(static_cast<int>(ceil_log2(static_cast<std::uint64_t>(n)) -
                                      ceil_log2(static_cast<std::uint64_t>(n0))),
                     tau - 1 - tau0);
        for (int m = 1; m <= n0; ++m) {
          const int rest = n - n0 + m;
          if (rest < 2 * m) continue;
          std::function<void(int, int, int, cost_t)> split = [&](int slots, int remaining,
                                                                 int min_part, cost_t acc) {
            if (acc >= by_decomp) return;
            if (slots == 0) {
              if (remaining == 0) by_decomp = acc;
              return;
            }
            for (int p = min_part; p <= remaining - 2 * (slots - 1); ++p) {
              if (static_cast<int>(ceil_log2(static_cast<std::uint64_t>(p))) > theta) break;
              const cost_t pc = phi_ref(p, tau - 1);
              if (pc >= cost_infinity) continue;
              split(slots - 1, remaining - p, p, cost_add(acc, pc + p + 1));
            }
          };
          split(m, rest, 2, base);
        }
      }
    }

    const int delta = static_cast<int>(floor_log2(static_cast<std::uint64_t>(n))) - 1;
    const int tau_bar =
        delta + static_cast<int>(ceil_log2(static_cast<std::uint64_t>(n - (1 << delta))));
    cost_t val;
    if (tau >= tau_bar)
      val = 3 * n - 6;
    else if (tau < 62 && (std::int64_t{1} << tau) == n - 1)
      val = static_cast<cost_t>(n) * tau;
    else
      val = by_decomp;
    if (by_decomp < val && !closed_beaten) {
      closed_beaten = true;
      beaten_at = "n=" + std::to_string(n) + " tau=" + std::to_string(tau);
    }
    memo[{n, tau}] = val;
    return val;
  };

  cost_tables t = compute_cost_tables(n_max);
  check_report rep;
  for (int n = 2; n <= n_max; ++n) {
    bool agree = true;
    std::string detail;
    for (int tau = 0; tau <= t.tau_max + 2; ++tau) {
      const cost_t a = min_complexity(t, n, tau);
      const cost_t b = n == 2 ? 0 : phi_ref(n, tau);
      const bool same = (a >= cost_infinity && b >= cost_infinity) || a == b;
      if (!same && agree) {
        agree = false;
        detail = "tau=" + std::to_string(tau) + " table " + std::to_string(a) + " reference " +
                 std::to_string(b);
      }
    }
    rep.items.push_back({"cost agreement at n=" + std::to_string(n), agree, detail});
  }
  rep.items.push_back({"no decomposition beats a closed form", !closed_beaten, beaten_at});
  return rep;
}

}  // namespace mps
