#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "mps/transforms.hpp"
#include "mps/ttree.hpp"

using namespace mps;
using mps_test::node_by_key;
using mps_test::permuted_copy;
using mps_test::triangle3;

namespace {

// A valid four-input structure one comp above the minimum.
structure four_input_suboptimal() {
  structure_builder b(4);
  node_id c23 = b.add_comp(b.input_id(2), b.input_id(3));
  b.set_output(b.add_comp(c23, b.input_id(4)), 1);
  node_id c34 = b.add_comp(b.input_id(3), b.input_id(4));
  b.set_output(b.add_comp(b.input_id(1), c34), 2);
  node_id c12 = b.add_comp(b.input_id(1), b.input_id(2));
  b.set_output(b.add_comp(c12, b.input_id(4)), 3);
  b.set_output(b.add_comp(c12, b.input_id(3)), 4);
  return canonicalize(b.take());
}

std::set<std::string> co_member_keys(int n) {
  std::set<std::string> keys;
  enumerate_ttrees(n, [&](const ttree& t) { keys.insert(structure_key(ttree_to_structure(t))); });
  return keys;
}

}  // namespace

TEST_CASE("split and merge are inverse on an interior node") {
  structure fb5 = forward_backward(5);
  digraph g = to_digraph(fb5);
  node_id b3 = node_by_key(fb5, "((x4 x5) x3)");
  REQUIRE(b3 >= 0);
  auto [v, v2] = split_node(g, b3);
  CHECK(g.in_edges(v).size() == 2);
  CHECK(g.out_edges(v).size() == 1);
  CHECK(g.in_edges(v2).size() == 1);
  CHECK(g.out_edges(v2).size() == 2);
  merge_edge(g, v, v2);
  CHECK(equal_structures(to_structure(g), fb5));
}

TEST_CASE("split keeps the input label on the source half") {
  structure fb5 = forward_backward(5);
  digraph g = to_digraph(fb5);
  node_id x3 = node_by_key(fb5, "x3");
  auto [v, v2] = split_node(g, x3);
  CHECK(g.verts[v].input_index == 3);
  CHECK(g.verts[v2].input_index == 0);
  CHECK(g.in_edges(v).empty());
  merge_edge(g, v, v2);
  CHECK(equal_structures(to_structure(g), fb5));
}

TEST_CASE("merge_edge requires a sole in-edge") {
  structure fb5 = forward_backward(5);
  digraph g = to_digraph(fb5);
  node_id y3 = find_output_node(fb5, 3);
  node_id f2 = node_by_key(fb5, "(x1 x2)");
  CHECK_THROWS_AS(merge_edge(g, f2, y3), structural_error);
}

TEST_CASE("digraphs with wrong in-degrees do not convert") {
  digraph g;
  int a = g.add_vertex(1, 0);
  int b = g.add_vertex(2, 0);
  int c = g.add_vertex(0, 0);
  g.add_edge(a, c);
  g.add_edge(b, c);
  g.n = 2;
  int lone = g.add_vertex(0, 0);
  g.add_edge(c, lone);
  CHECK_THROWS_AS(to_structure(g), structural_error);
}

TEST_CASE("shrink drops the last input from optimal chains") {
  for (int n = 4; n <= 10; ++n)
    CHECK(equal_structures(shrink(forward_backward(n)), forward_backward(n - 1)));
}

TEST_CASE("shrink keeps optimal structures optimal") {
  structure bal6 = ttree_to_structure(complexity_optimal_ttree(6));
  structure small = shrink(bal6);
  CHECK(small.n == 5);
  CHECK(validate(small).is_for_y);
  CHECK(complexity(small) == 9);

  auto member_keys = co_member_keys(5);
  int checked = 0;
  enumerate_ttrees(6, [&](const ttree& t) {
    if (++checked % 20 != 1) return;
    structure s = shrink(ttree_to_structure(t));
    CHECK(validate(s).is_for_y);
    CHECK(complexity(s) == 9);
    CHECK(member_keys.count(structure_key(s)) == 1);
  });
}

TEST_CASE("shrink saves at least three comps") {
  structure s = four_input_suboptimal();
  REQUIRE(complexity(s) == 7);
  structure t = shrink(s);
  CHECK(t.n == 3);
  CHECK(validate(t).is_for_y);
  CHECK(complexity(t) <= 4);
}

TEST_CASE("shrink is order independent") {
  structure bal6 = ttree_to_structure(complexity_optimal_ttree(6));
  for (unsigned seed : {5u, 42u})
    CHECK(equal_structures(shrink(permuted_copy(bal6, seed)), shrink(bal6)));
}

TEST_CASE("shrink preconditions") {
  CHECK_THROWS_AS(shrink(triangle3()), std::invalid_argument);
  structure_builder b(4);
  b.add_comp(b.input_id(1), b.input_id(2));
  CHECK_THROWS_AS(shrink(b.take()), std::invalid_argument);
}

TEST_CASE("grow from the two-input structure yields the triangle") {
  structure s = grow(trivial_structure(), 0, 1);
  CHECK(equal_structures(s, triangle3()));
}

TEST_CASE("grow reaches every member one size up") {
  structure tri = triangle3();
  auto pairs = complement_pairs(tri);
  REQUIRE(pairs.size() == 3);
  std::set<std::string> grown;
  for (const complement_pair& p : pairs) {
    structure s = grow(tri, p.a, p.b);
    CHECK(validate(s).is_for_y);
    CHECK(complexity(s) == 6);
    grown.insert(structure_key(s));
  }
  CHECK(grown == co_member_keys(4));

  for (int n : {5, 6}) {
    std::set<std::string> images;
    enumerate_ttrees(n - 1, [&](const ttree& t) {
      structure s = ttree_to_structure(t);
      for (const complement_pair& p : complement_pairs(s))
        images.insert(structure_key(grow(s, p.a, p.b)));
    });
    CHECK(images == co_member_keys(n));
  }
}

TEST_CASE("shrink undoes grow") {
  for (int n : {3, 4, 5}) {
    enumerate_ttrees(n, [&](const ttree& t) {
      structure s = ttree_to_structure(t);
      for (const complement_pair& p : complement_pairs(s))
        CHECK(equal_structures(shrink(grow(s, p.a, p.b)), s));
    });
  }
}

TEST_CASE("grow preconditions") {
  structure tri = triangle3();
  CHECK_THROWS_AS(grow(tri, 0, 1), std::invalid_argument);  // x1, x2 do not partition
  structure sub = four_input_suboptimal();
  auto pairs = complement_pairs(sub);
  REQUIRE_FALSE(pairs.empty());
  CHECK_THROWS_AS(grow(sub, pairs[0].a, pairs[0].b), std::invalid_argument);
  structure_builder b(4);
  b.add_comp(b.input_id(1), b.input_id(2));
  CHECK_THROWS_AS(grow(b.take(), 0, 1), std::invalid_argument);
}
