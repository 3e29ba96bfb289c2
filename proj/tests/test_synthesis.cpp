#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "mps/synthesis.hpp"
#include "mps/ttree.hpp"

using namespace mps;
using mps_test::triangle3;

namespace {

const cost_tables& tables64() {
  static cost_tables t = compute_cost_tables(64);
  return t;
}

std::int64_t sum_op(std::int64_t a, std::int64_t b) { return a + b; }

}  // namespace

TEST_CASE("layered windows for n = 2^k + 1") {
  structure s = construct_latency_optimal_pow2(5);
  CHECK(s.n == 5);
  CHECK(complexity(s) == 10);
  CHECK(latency(s) == 2);
  CHECK(validate(s).is_for_y);
  auto keys = canonical_keys(s);
  CHECK(keys[find_output_node(s, 5)] == "((x1 x2) (x3 x4))");
  CHECK(keys[find_output_node(s, 1)] == "((x2 x3) (x4 x5))");

  CHECK(equal_structures(construct_latency_optimal_pow2(3), triangle3()));

  structure s9 = construct_latency_optimal_pow2(9);
  CHECK(complexity(s9) == 27);
  CHECK(latency(s9) == 3);
  CHECK(validate(s9).is_for_y);

  std::vector<std::int64_t> vals;
  for (int j = 0; j < 9; ++j) vals.push_back((j * 131) % 17);
  CHECK(evaluate<std::int64_t>(s9, sum_op, vals) == independent_folds<std::int64_t>(sum_op, vals));

  CHECK_THROWS_AS(construct_latency_optimal_pow2(2), std::invalid_argument);
  CHECK_THROWS_AS(construct_latency_optimal_pow2(6), std::invalid_argument);
  CHECK_THROWS_AS(construct_latency_optimal_pow2(8), std::invalid_argument);

  CHECK_THROWS_AS(structure_to_ttree(s), std::invalid_argument);  // above minimum complexity
}

TEST_CASE("compose stitches parts through a base structure") {
  std::vector<structure> parts{triangle3(), triangle3(), trivial_structure()};
  structure s = compose(triangle3(), parts);
  CHECK(s.n == 8);
  CHECK(complexity(s) == 20);
  CHECK(validate(s).is_for_y);
  CHECK(latency(s) <= 4);
  CHECK(pi_value(s) >= 3);

  std::vector<std::int64_t> vals{5, -2, 9, 1, 0, 3, 7, -4};
  CHECK(evaluate<std::int64_t>(s, sum_op, vals) == independent_folds<std::int64_t>(sum_op, vals));
}

TEST_CASE("compose leaves uncovered base inputs as raw inputs") {
  std::vector<structure> parts{triangle3()};
  structure s = compose(triangle3(), parts);
  // One part of three inputs through a three-input base: 3 + 3 - 1 inputs.
  CHECK(s.n == 5);
  CHECK(complexity(s) == 3 + 3 + 3 + 1);
  CHECK(validate(s).is_for_y);
  std::vector<std::int64_t> vals{4, 4, 1, -9, 2};
  CHECK(evaluate<std::int64_t>(s, sum_op, vals) == independent_folds<std::int64_t>(sum_op, vals));
}

TEST_CASE("compose accepts only minimal-height pairs when given explicitly") {
  structure part = forward_backward(5);
  auto best = min_join(canonicalize(part));
  REQUIRE(best.pairs.size() == 3);
  structure with_pair = compose(triangle3(), {part}, {best.pairs[1]});
  CHECK(validate(with_pair).is_for_y);
  CHECK(complexity(with_pair) == 3 + 9 + 5 + 1);

  // (x1, y_1's node) is a complement pair but not of minimal join height.
  structure cpart = canonicalize(part);
  complement_pair tall{0, find_output_node(cpart, 1)};
  CHECK_THROWS_AS(compose(triangle3(), {part}, {tall}), std::invalid_argument);
}

TEST_CASE("compose rejections") {
  CHECK_THROWS_AS(compose(triangle3(), {}), std::invalid_argument);
  std::vector<structure> four(4, trivial_structure());
  CHECK_THROWS_AS(compose(triangle3(), four), std::invalid_argument);

  structure_builder incomplete(3);
  incomplete.add_comp(incomplete.input_id(1), incomplete.input_id(2));
  CHECK_THROWS_AS(compose(incomplete.peek(), {trivial_structure()}), std::invalid_argument);
  CHECK_THROWS_AS(compose(triangle3(), {incomplete.peek()}), std::invalid_argument);

  std::vector<structure> pair_mismatch{trivial_structure()};
  CHECK_THROWS_AS(compose(triangle3(), pair_mismatch, std::vector<complement_pair>{}),
                  std::invalid_argument);

  std::vector<structure> huge{forward_backward(64), forward_backward(64)};
  CHECK_THROWS_AS(compose(triangle3(), huge), std::invalid_argument);
}

TEST_CASE("general construction dispatches by budget") {
  const cost_tables& t = tables64();
  synthesizer sz(t);

  structure s73 = sz.build(7, 3);
  CHECK(s73.n == 7);
  CHECK(complexity(s73) == 18);
  CHECK(latency(s73) <= 3);
  CHECK(validate(s73).is_for_y);

  synthesis_step plan = sz.plan(7, 3);
  CHECK(plan.dispatch == phi_case::decompose);
  CHECK(plan.n0 == 2);
  CHECK(plan.tau0 == 0);
  CHECK(plan.part_sizes == std::vector<int>{4, 3});
  REQUIRE(plan.children.size() == 3);
  CHECK(plan.children[0].n == 2);
  CHECK(plan.children[1].n == 4);
  CHECK(plan.children[2].n == 3);

  CHECK(equal_structures(sz.build(8, 4), construct_complexity_optimal(8)));
  CHECK(equal_structures(sz.build(5, 3), construct_complexity_optimal(5)));
  CHECK(equal_structures(sz.build(5, 2), construct_latency_optimal_pow2(5)));
  CHECK(equal_structures(sz.build(2, 0), trivial_structure()));
  CHECK(equal_structures(sz.build(2, 7), trivial_structure()));

  structure s33 = sz.build(33, 5);
  CHECK(complexity(s33) == 165);
  CHECK(latency(s33) == 5);

  CHECK_THROWS_WITH(sz.build(9, 2), "infeasible: tau < ceil(log(n-1))");
  CHECK_THROWS_AS(sz.build(9, 2), infeasible_error);
  CHECK_THROWS_AS(sz.plan(9, 2), infeasible_error);
  CHECK_THROWS_AS(sz.build(65, 3), std::out_of_range);
  CHECK_THROWS_AS(sz.build(7, -1), std::invalid_argument);
}

TEST_CASE("synthesized structures meet the table exactly") {
  const cost_tables& t = tables64();
  for (int n : {6, 7, 9, 10, 13}) {
    for (int tau = 0; tau <= tau_upper(n) + 1; ++tau) {
      if (tau < tau_lower(n)) {
        CHECK_THROWS_AS(construct_general(t, n, tau), infeasible_error);
        continue;
      }
      structure s = construct_general(t, n, tau);
      CHECK(validate(s).is_for_y);
      CHECK(complexity(s) == min_complexity(t, n, tau));
      CHECK(latency(s) <= tau);
      CHECK(pi_value(s) == static_cast<int>(ceil_log2(static_cast<std::uint64_t>(n))));

      std::vector<std::int64_t> vals;
      for (int j = 0; j < n; ++j) vals.push_back(((j + 3) * 2654435761u) % 1000 - 500);
      CHECK(evaluate<std::int64_t>(s, sum_op, vals) ==
            independent_folds<std::int64_t>(sum_op, vals));
    }
  }
}

TEST_CASE("adapting the first output to cover every input") {
  structure s = construct_latency_optimal_pow2(5);
  structure a = adapt_variable_node(s);
  CHECK(a.n == 5);
  CHECK(complexity(a) == 10);
  CHECK(latency(a) == 3);
  auto rep = validate(a);
  CHECK(rep.is_structure);
  CHECK_FALSE(rep.is_for_y);
  node_id y1 = find_output_node(a, 1);
  REQUIRE(y1 >= 0);
  CHECK(entering(a, y1) == index_set::full(5));
  CHECK(canonical_keys(a)[y1] == "(((x1 x5) (x3 x4)) x2)");

  std::vector<std::int64_t> vals{3, 1, 4, 1, 5};
  auto out = evaluate<std::int64_t>(a, sum_op, vals);
  CHECK(out[0] == 14);  // every input, not a leave-one-out fold
  auto folds = independent_folds<std::int64_t>(sum_op, vals);
  for (int j = 1; j < 5; ++j) CHECK(out[j] == folds[j]);
}

TEST_CASE("adaptation keeps optimal latency when pairs allow") {
  structure s = construct_complexity_optimal(6);
  structure a = adapt_variable_node(s);
  CHECK(complexity(a) == 12);
  CHECK(latency(a) == 3);
  CHECK(entering(a, find_output_node(a, 1)) == index_set::full(6));

  CHECK_THROWS_AS(adapt_variable_node(trivial_structure()), std::invalid_argument);
  structure_builder b(3);
  b.add_comp(b.input_id(1), b.input_id(2));
  CHECK_THROWS_AS(adapt_variable_node(b.take()), std::invalid_argument);
}
