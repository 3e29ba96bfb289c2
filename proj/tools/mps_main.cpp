// Command line front end: construct, validate, evaluate, tabulate, enumerate,
// export, and cross-check leave-one-out structures stored as JSON.
//
// Exit codes: 0 success, 1 failed check or bad arguments, 2 infeasible
// latency budget, 3 file or schema trouble.

#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mps/mps.hpp"

namespace {

#ifndef MPS_DATA_DIR
#define MPS_DATA_DIR "data"
#endif

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    mps::write_text_file(out_path, text);
}

int run_construct(int n, int tau, const std::string& out_path, const std::string& manifest_path,
                  const std::string& dot_path) {
  mps::cost_tables tables = mps::compute_cost_tables(std::max(n, 2));
  mps::synthesizer sz(tables);
  mps::structure s = sz.build(n, tau);
  emit(mps::dump_json(mps::structure_to_json(s)), out_path);
  if (!manifest_path.empty())
    mps::write_text_file(manifest_path, mps::dump_json(mps::manifest_json(sz.plan(n, tau))));
  if (!dot_path.empty()) mps::write_text_file(dot_path, mps::structure_to_dot(s));
  std::cerr << "constructed n=" << n << " tau=" << tau << " comps=" << mps::complexity(s)
            << " latency=" << mps::latency(s) << "\n";
  return 0;
}

int run_validate(const std::string& in_path) {
  mps::structure s = mps::load_structure(in_path);
  mps::validation_report rep = mps::validate(s);
  if (rep.is_for_y) {
    std::cout << "valid: " << s.n << " inputs, " << mps::complexity(s) << " comps, latency "
              << mps::latency(s) << "\n";
    return 0;
  }
  for (const std::string& v : rep.violations) std::cout << "violation: " << v << "\n";
  return 1;
}

int run_eval(const std::string& in_path, const std::string& op_name,
             std::vector<std::int64_t> values, int random_count, std::uint64_t seed) {
  mps::structure s = mps::load_structure(in_path);
  const std::map<std::string, std::int64_t (*)(std::int64_t, std::int64_t)> ops{
      {"min", [](std::int64_t a, std::int64_t b) { return a < b ? a : b; }},
      {"max", [](std::int64_t a, std::int64_t b) { return a > b ? a : b; }},
      {"sum", [](std::int64_t a, std::int64_t b) { return a + b; }},
      {"xor", [](std::int64_t a, std::int64_t b) { return a ^ b; }},
  };
  auto it = ops.find(op_name);
  if (it == ops.end()) throw std::invalid_argument("eval: unknown operator " + op_name);
  const auto op = it->second;

  if (values.empty()) {
    if (random_count <= 0) random_count = 1;
    std::cout << "seed " << seed << "\n";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(-1000000, 1000000);
    for (int trial = 0; trial < random_count; ++trial) {
      std::vector<std::int64_t> vals(s.n);
      for (auto& v : vals) v = dist(rng);
      if (mps::evaluate<std::int64_t>(s, op, vals) !=
          mps::independent_folds<std::int64_t>(op, vals)) {
        std::cout << "mismatch on trial " << trial << "\n";
        return 1;
      }
    }
    std::cout << "ok: " << random_count << " random vectors match independent folds\n";
    return 0;
  }

  auto outputs = mps::evaluate<std::int64_t>(s, op, values);
  for (std::size_t j = 0; j < outputs.size(); ++j)
    std::cout << "y" << j + 1 << " = " << outputs[j] << "\n";
  if (outputs != mps::independent_folds<std::int64_t>(op, values)) {
    std::cout << "mismatch against independent folds\n";
    return 1;
  }
  return 0;
}

int run_table(int n_max, const std::string& out_path, bool compare_golden,
              const std::string& golden_path) {
  mps::cost_tables tables = mps::compute_cost_tables(n_max);
  if (!compare_golden) {
    emit(mps::table_csv(tables), out_path);
    return 0;
  }
  std::string golden = mps::read_text_file(golden_path);
  std::vector<std::string> diffs = mps::compare_table_to_golden(tables, golden);
  if (diffs.empty()) {
    std::cout << "table matches " << golden_path << "\n";
    return 0;
  }
  for (const std::string& d : diffs) std::cout << "diff: " << d << "\n";
  return 1;
}

int run_enumerate(int n, bool keys) {
  std::uint64_t count = 0;
  mps::enumerate_ttrees(n, [&](const mps::ttree& t) {
    ++count;
    if (keys) std::cout << mps::ttree_canonical_key(t) << "\n";
  });
  std::cout << "n=" << n << " trees=" << count << " expected=" << mps::ttree_count(n) << "\n";
  return count == mps::ttree_count(n) ? 0 : 1;
}

int run_export(const std::string& in_path, bool as_ttree, const std::string& out_path) {
  if (as_ttree)
    emit(mps::ttree_to_dot(mps::load_ttree(in_path)), out_path);
  else
    emit(mps::structure_to_dot(mps::load_structure(in_path)), out_path);
  return 0;
}

int print_report(const mps::check_report& rep) {
  for (const auto& item : rep.items)
    std::cout << (item.pass ? "PASS " : "FAIL ") << item.name
              << (item.detail.empty() ? "" : ": " + item.detail) << "\n";
  return rep.all_pass() ? 0 : 1;
}

int run_oracle(const std::string& check, int n, int n_max) {
  if (check == "enumeration") return print_report(mps::verify_co_enumeration(n));
  if (check == "costs") return print_report(mps::verify_dp_small(n_max));
  if (check == "brute") {
    mps::cost_tables tables = mps::compute_cost_tables(std::max(n, 2));
    bool all = true;
    for (int tau = 0; tau <= mps::tau_upper(n) + 1; ++tau) {
      mps::cost_t got = mps::brute_force_min(n, tau).cost;
      mps::cost_t want = mps::min_complexity(tables, n, tau);
      bool pass = got == want;
      all = all && pass;
      std::cout << (pass ? "PASS" : "FAIL") << " n=" << n << " tau=" << tau << " exhaustive="
                << got << " table=" << want << "\n";
    }
    return all ? 0 : 1;
  }
  throw std::invalid_argument("oracle: unknown check " + check);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synthesize and verify leave-one-out computation structures"};
  app.require_subcommand(1);

  auto* construct = app.add_subcommand("construct", "build a structure for n inputs under a latency budget");
  int c_n = 0, c_tau = 0;
  std::string c_out, c_manifest, c_dot;
  construct->add_option("--n", c_n, "input count")->required();
  construct->add_option("--tau", c_tau, "latency budget")->required();
  construct->add_option("--out", c_out, "write the structure JSON here instead of stdout");
  construct->add_option("--manifest", c_manifest, "write the dispatch manifest JSON here");
  construct->add_option("--dot", c_dot, "write a DOT rendering here");

  auto* validate = app.add_subcommand("validate", "check a structure file against the output contract");
  std::string v_in;
  validate->add_option("file", v_in, "structure JSON file")->required();

  auto* eval = app.add_subcommand("eval", "evaluate a structure and compare with independent folds");
  std::string e_in, e_op = "sum";
  std::vector<std::int64_t> e_values;
  int e_random = 0;
  std::uint64_t e_seed = 42;
  eval->add_option("--in", e_in, "structure JSON file")->required();
  eval->add_option("--op", e_op, "operator: min, max, sum, xor");
  eval->add_option("--values", e_values, "comma separated input values")->delimiter(',');
  eval->add_option("--random", e_random, "number of random vectors to test");
  eval->add_option("--seed", e_seed, "seed for random vectors");

  auto* table = app.add_subcommand("table", "print or check the minimum comp count table");
  int t_n_max = 64;
  std::string t_out, t_golden = std::string(MPS_DATA_DIR) + "/table1_golden.csv";
  bool t_compare = false;
  table->add_option("--n-max", t_n_max, "largest input count");
  table->add_option("--out", t_out, "write the CSV here instead of stdout");
  table->add_flag("--compare-golden", t_compare, "compare against the frozen CSV");
  table->add_option("--golden", t_golden, "frozen CSV path");

  auto* enumerate = app.add_subcommand("enumerate", "count unrooted trees behind minimum-comp structures");
  int en_n = 0;
  bool en_keys = false;
  enumerate->add_option("--n", en_n, "input count")->required();
  enumerate->add_flag("--keys", en_keys, "print one canonical key per tree");

  auto* exp = app.add_subcommand("export", "render a structure or tree file as DOT");
  std::string x_in, x_out;
  bool x_ttree = false;
  exp->add_option("--in", x_in, "JSON file")->required();
  exp->add_flag("--ttree", x_ttree, "input file holds a tree, not a structure");
  exp->add_option("--out", x_out, "write DOT here instead of stdout");

  auto* oracle = app.add_subcommand("oracle", "run independent cross-checks");
  std::string o_check = "enumeration";
  int o_n = 5, o_n_max = 7;
  oracle->add_option("--check", o_check, "enumeration, costs, or brute");
  oracle->add_option("--n", o_n, "input count for enumeration or brute checks");
  oracle->add_option("--n-max", o_n_max, "table size for the costs check");

  CLI11_PARSE(app, argc, argv);

  try {
    if (construct->parsed()) return run_construct(c_n, c_tau, c_out, c_manifest, c_dot);
    if (validate->parsed()) return run_validate(v_in);
    if (eval->parsed()) return run_eval(e_in, e_op, e_values, e_random, e_seed);
    if (table->parsed()) return run_table(t_n_max, t_out, t_compare, t_golden);
    if (enumerate->parsed()) return run_enumerate(en_n, en_keys);
    if (exp->parsed()) return run_export(x_in, x_ttree, x_out);
    if (oracle->parsed()) return run_oracle(o_check, o_n, o_n_max);
  } catch (const mps::infeasible_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const mps::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
