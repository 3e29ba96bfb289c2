#pragma once
// Shared test fixtures.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mps/structure.hpp"

namespace mps_test {

// The unique three-input structure: each output folds the other two inputs.
inline mps::structure triangle3() {
  mps::structure_builder b(3);
  b.set_output(b.add_comp(b.input_id(1), b.input_id(2)), 3);
  b.set_output(b.add_comp(b.input_id(1), b.input_id(3)), 2);
  b.set_output(b.add_comp(b.input_id(2), b.input_id(3)), 1);
  return mps::canonicalize(b.take());
}

// Same structure with nodes listed in a seed-dependent order.
inline mps::structure permuted_copy(const mps::structure& s, unsigned seed) {
  std::vector<int> perm(s.nodes.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  mps::structure out;
  out.n = s.n;
  out.nodes.resize(s.nodes.size());
  for (std::size_t old = 0; old < s.nodes.size(); ++old) {
    mps::node nd = s.nodes[old];
    if (nd.kind == mps::node_kind::comp) {
      int a = perm[nd.lhs], b = perm[nd.rhs];
      nd.lhs = std::min(a, b);
      nd.rhs = std::max(a, b);
    }
    out.nodes[perm[old]] = nd;
  }
  return out;
}

inline mps::node_id node_by_key(const mps::structure& s, const std::string& key) {
  auto keys = mps::canonical_keys(s);
  for (mps::node_id v = 0; v < static_cast<mps::node_id>(s.nodes.size()); ++v)
    if (keys[v] == key) return v;
  return -1;
}

// Unordered canonical-key pairs, for position-independent pair checks.
inline std::set<std::pair<std::string, std::string>> pair_key_set(
    const mps::structure& s, const std::vector<mps::complement_pair>& pairs) {
  auto keys = mps::canonical_keys(s);
  std::set<std::pair<std::string, std::string>> out;
  for (const mps::complement_pair& p : pairs) {
    std::string a = keys[p.a], b = keys[p.b];
    if (b < a) std::swap(a, b);
    out.insert({std::move(a), std::move(b)});
  }
  return out;
}

}  // namespace mps_test
