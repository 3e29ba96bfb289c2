#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mps/dp.hpp"

using namespace mps;

namespace {

const cost_tables& tables64() {
  static cost_tables t = compute_cost_tables(64);
  return t;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("budget thresholds") {
  CHECK(tau_lower(2) == 0);
  CHECK(tau_lower(3) == 1);
  CHECK(tau_lower(5) == 2);
  CHECK(tau_lower(9) == 3);
  CHECK(tau_lower(10) == 4);
  CHECK(tau_lower(17) == 4);
  CHECK(tau_lower(18) == 5);
  CHECK(tau_lower(33) == 5);
  CHECK(tau_lower(34) == 6);
  CHECK(tau_lower(64) == 6);

  CHECK(tau_upper(2) == 0);
  CHECK(tau_upper(3) == 1);
  CHECK(tau_upper(4) == 2);
  CHECK(tau_upper(5) == 3);
  CHECK(tau_upper(8) == 4);
  CHECK(tau_upper(9) == 5);
  CHECK(tau_upper(16) == 6);
  CHECK(tau_upper(17) == 7);
  CHECK(tau_upper(32) == 8);
  CHECK(tau_upper(33) == 9);
  CHECK(tau_upper(64) == 10);
}

TEST_CASE("case dispatch") {
  CHECK(case_at(2, 0) == phi_case::trivial);
  CHECK(case_at(2, 9) == phi_case::trivial);
  CHECK(case_at(9, 2) == phi_case::infeasible);
  CHECK(case_at(9, 3) == phi_case::power_window);
  CHECK(case_at(9, 4) == phi_case::decompose);
  CHECK(case_at(9, 5) == phi_case::complexity_optimal);
  CHECK(case_at(33, 5) == phi_case::power_window);
  CHECK(case_at(33, 9) == phi_case::complexity_optimal);
  CHECK(case_at(7, 3) == phi_case::decompose);
  CHECK(case_at(5, 2) == phi_case::power_window);
  CHECK(case_at(6, 3) == phi_case::complexity_optimal);
  CHECK_THROWS_AS(case_at(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(case_at(4, -1), std::invalid_argument);
}

TEST_CASE("cost table pins") {
  const cost_tables& t = tables64();
  CHECK(min_complexity(t, 2, 0) == 0);
  CHECK(min_complexity(t, 5, 2) == 10);
  CHECK(min_complexity(t, 5, 3) == 9);
  CHECK(min_complexity(t, 7, 3) == 18);
  CHECK(min_complexity(t, 7, 4) == 15);
  CHECK(min_complexity(t, 8, 4) == 18);
  CHECK(min_complexity(t, 9, 3) == 27);
  CHECK(min_complexity(t, 9, 4) == 22);
  CHECK(min_complexity(t, 9, 5) == 21);
  CHECK(min_complexity(t, 10, 4) == 25);
  CHECK(min_complexity(t, 33, 5) == 165);
  CHECK(min_complexity(t, 33, 9) == 93);
  CHECK(min_complexity(t, 64, 6) == 382);
  CHECK(min_complexity(t, 64, 10) == 186);
  CHECK(min_complexity(t, 9, 2) >= cost_infinity);
}

TEST_CASE("accessor conventions") {
  const cost_tables& t = tables64();
  CHECK(min_complexity(t, 1, 0) == -2);
  CHECK(min_complexity(t, 1, 7) == -2);
  CHECK(min_complexity(t, 5, 40) == 9);
  CHECK_THROWS_AS(min_complexity(t, 65, 3), std::out_of_range);
  CHECK_THROWS_AS(min_complexity(t, 0, 3), std::out_of_range);
  CHECK_THROWS_AS(min_complexity(t, 5, -1), std::invalid_argument);
  CHECK(cost_add(cost_infinity, 5) == cost_infinity);
  CHECK(cost_add(3, 4) == 7);
}

TEST_CASE("feasibility boundary is exact") {
  const cost_tables& t = tables64();
  for (int n = 2; n <= 64; ++n) {
    for (int tau = 0; tau < tau_lower(n); ++tau) CHECK(min_complexity(t, n, tau) >= cost_infinity);
    CHECK(min_complexity(t, n, tau_lower(n)) < cost_infinity);
  }
}

TEST_CASE("costs never rise with budget") {
  const cost_tables& t = tables64();
  for (int n = 2; n <= 64; ++n)
    for (int tau = 0; tau < t.tau_max; ++tau)
      CHECK(min_complexity(t, n, tau + 1) <= min_complexity(t, n, tau));
}

TEST_CASE("general upper bound holds at the tightest budget") {
  const cost_tables& t = tables64();
  for (int n = 2; n <= 64; ++n) {
    cost_t ub = static_cast<cost_t>(n) * ceil_log2(static_cast<std::uint64_t>(n)) - 2;
    CHECK(min_complexity(t, n, tau_lower(n)) <= ub);
  }
  CHECK(min_complexity(t, 32, 5) == 158);
  CHECK(min_complexity(t, 64, 6) == 382);
}

TEST_CASE("both bounds met simultaneously only at 3, 4, 6") {
  const cost_tables& t = tables64();
  for (int n = 3; n <= 64; ++n) {
    bool both = min_complexity(t, n, tau_lower(n)) == 3 * static_cast<cost_t>(n) - 6;
    CHECK(both == (n == 3 || n == 4 || n == 6));
  }
}

TEST_CASE("traceback recovers the recorded decomposition") {
  const cost_tables& t = tables64();
  decomposition d = traceback(t, 7, 3);
  CHECK(d.n0 == 2);
  CHECK(d.tau0 == 0);
  CHECK(d.part_sizes == std::vector<int>{4, 3});
  CHECK(d.units == 0);
  cost_t total = min_complexity(t, d.n0, d.tau0);
  for (int p : d.part_sizes) total += min_complexity(t, p, 2) + p + 1;
  CHECK(total == 18);

  CHECK_THROWS_AS(traceback(t, 7, 4), std::invalid_argument);   // saturation cell
  CHECK_THROWS_AS(traceback(t, 9, 3), std::invalid_argument);   // window cell
  CHECK_THROWS_AS(traceback(t, 65, 3), std::out_of_range);
  CHECK_THROWS_AS(traceback(t, 7, 30), std::out_of_range);
}

TEST_CASE("tracebacks satisfy the composition conditions") {
  const cost_tables& t = tables64();
  for (auto [n, tau] : std::vector<std::pair<int, int>>{
           {7, 3}, {9, 4}, {13, 4}, {25, 5}, {33, 6}, {49, 6}, {64, 6}}) {
    REQUIRE(case_at(n, tau) == phi_case::decompose);
    decomposition d = traceback(t, n, tau);
    std::vector<int> part_taus(d.part_sizes.size(), tau - 1);
    CHECK(satisfies_composition_conditions(n, tau, d.n0, d.tau0, d.part_sizes, part_taus));

    cost_t total = min_complexity(t, d.n0, d.tau0);
    for (int p : d.part_sizes) total += min_complexity(t, p, tau - 1) + p + 1;
    CHECK(total == min_complexity(t, n, tau));

    int covered = d.units;
    for (int p : d.part_sizes) covered += p;
    CHECK(covered == n);
    CHECK(static_cast<int>(d.part_sizes.size()) + d.units == d.n0);
  }

  CHECK_FALSE(satisfies_composition_conditions(7, 3, 2, 0, {4, 4}, {2, 2}));
  CHECK_FALSE(satisfies_composition_conditions(7, 3, 2, 3, {4, 3}, {2, 2}));
  CHECK_FALSE(satisfies_composition_conditions(7, 3, 2, 0, {7}, {2}));
}

TEST_CASE("csv export matches the golden table") {
  const cost_tables& t = tables64();
  std::string golden = read_file(std::string(MPS_DATA_DIR) + "/table1_golden.csv");
  auto diffs = compare_table_to_golden(t, golden);
  for (const std::string& d : diffs) UNSCOPED_INFO(d);
  CHECK(diffs.empty());

  std::string corrupted = golden;
  auto pos = corrupted.find("7,3,4,18");
  REQUIRE(pos != std::string::npos);
  corrupted[pos + 6] = '9';
  CHECK_FALSE(compare_table_to_golden(t, corrupted).empty());

  std::string csv = table_csv(t);
  CHECK(csv.rfind("n,tau_min,tau_max,", 0) == 0);
  CHECK(csv.find("\n7,3,4,18,15,15,15,15,19\n") != std::string::npos);
}

TEST_CASE("table construction bounds") {
  CHECK_THROWS_AS(compute_cost_tables(1), std::invalid_argument);
  cost_tables small = compute_cost_tables(4);
  CHECK(min_complexity(small, 4, 2) == 6);
  CHECK(min_complexity(small, 3, 1) == 3);
}
