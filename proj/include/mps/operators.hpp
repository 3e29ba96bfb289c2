#pragma once
// Binary operators with commutativity/associativity checks, the builtin
// integer operators, and table-driven operators over small domains.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace mps {

// An operator failing its algebraic laws, or a malformed operator table.
class operator_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename T>
struct binary_operator {
  std::string name;
  std::function<T(const T&, const T&)> fn;
  T operator()(const T& a, const T& b) const { return fn(a, b); }
};

// Exact for integral types; relative tolerance 1e-12 for floating point,
// where fold order legitimately perturbs low bits.
template <typename T>
bool value_close(const T& a, const T& b) {
  if constexpr (std::is_floating_point_v<T>) {
    if (a == b) return true;
    double da = static_cast<double>(a), db = static_cast<double>(b);
    return std::abs(da - db) <= 1e-12 * std::max(std::abs(da), std::abs(db));
  } else {
    return a == b;
  }
}

// Checks commutativity on all pairs and associativity on all triples of the
// samples. Keep sample counts small; cost is cubic.
template <typename T>
void check_operator_laws(const binary_operator<T>& op, const std::vector<T>& samples) {
  if (samples.size() < 2) throw std::invalid_argument("check_operator_laws: need samples");
  for (const T& a : samples)
    for (const T& b : samples)
      if (!value_close(op(a, b), op(b, a)))
        throw operator_error("operator " + op.name + " is not commutative");
  for (const T& a : samples)
    for (const T& b : samples)
      for (const T& c : samples)
        if (!value_close(op(op(a, b), c), op(a, op(b, c))))
          throw operator_error("operator " + op.name + " is not associative");
}

template <typename T>
binary_operator<T> min_operator() {
  return {"min", [](const T& a, const T& b) { return a < b ? a : b; }};
}

template <typename T>
binary_operator<T> max_operator() {
  return {"max", [](const T& a, const T& b) { return a < b ? b : a; }};
}

template <typename T>
binary_operator<T> sum_operator() {
  return {"sum", [](const T& a, const T& b) { return a + b; }};
}

inline binary_operator<std::int64_t> xor_operator() {
  return {"xor", [](const std::int64_t& a, const std::int64_t& b) { return a ^ b; }};
}

inline std::vector<binary_operator<std::int64_t>> builtin_integer_operators() {
  return {min_operator<std::int64_t>(), max_operator<std::int64_t>(),
          sum_operator<std::int64_t>(), xor_operator()};
}

// Operator given by a full m-by-m table over the domain {0, ..., m-1}.
struct lut_table {
  std::string name;
  int m = 0;
  std::vector<std::vector<std::int64_t>> table;
};

// Validates shape, domain closure, and both laws over the whole domain.
inline binary_operator<std::int64_t> make_lut_operator(const lut_table& lut) {
  if (lut.m < 1 || lut.m > 64) throw operator_error("lut: domain size must be in [1, 64]");
  if (static_cast<int>(lut.table.size()) != lut.m)
    throw operator_error("lut: table must have m rows");
  for (const auto& row : lut.table) {
    if (static_cast<int>(row.size()) != lut.m) throw operator_error("lut: table row size");
    for (std::int64_t x : row)
      if (x < 0 || x >= lut.m) throw operator_error("lut: entry outside domain");
  }
  for (int a = 0; a < lut.m; ++a)
    for (int b = 0; b < lut.m; ++b)
      if (lut.table[a][b] != lut.table[b][a])
        throw operator_error("lut operator " + lut.name + " is not commutative");
  for (int a = 0; a < lut.m; ++a)
    for (int b = 0; b < lut.m; ++b)
      for (int c = 0; c < lut.m; ++c)
        if (lut.table[lut.table[a][b]][c] != lut.table[a][lut.table[b][c]])
          throw operator_error("lut operator " + lut.name + " is not associative");
  auto table = lut.table;
  std::string name = lut.name.empty() ? "lut" : lut.name;
  return {name, [table, name](const std::int64_t& a, const std::int64_t& b) {
            if (a < 0 || a >= static_cast<std::int64_t>(table.size()) || b < 0 ||
                b >= static_cast<std::int64_t>(table.size()))
              throw operator_error("lut operator " + name + ": value outside domain");
            return table[a][b];
          }};
}

}  // namespace mps
