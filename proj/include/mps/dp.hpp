#pragma once
// Minimal comp counts under a latency budget: the phi table over (n, tau),
// the eta helper table over part multisets, traceback of the chosen
// decomposition, and the reference CSV rendering.

#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mps/intlog.hpp"
#include "mps/ttree.hpp"

namespace mps {

using cost_t = std::int64_t;
inline constexpr cost_t cost_infinity = std::numeric_limits<std::int64_t>::max() / 4;

inline cost_t cost_add(cost_t a, cost_t b) {
  return (a >= cost_infinity || b >= cost_infinity) ? cost_infinity : a + b;
}

// Budgets below this are infeasible.
inline int tau_lower(int n) {
  if (n < 2) throw std::invalid_argument("tau_lower: need at least two inputs");
  return n == 2 ? 0 : ceil_log2(static_cast<std::uint64_t>(n - 1));
}

// Budgets at or above this admit a complexity-optimal structure.
inline int tau_upper(int n) {
  if (n < 2) throw std::invalid_argument("tau_upper: need at least two inputs");
  return n == 2 ? 0 : min_ttree_diameter(n) - 1;
}

enum class phi_case {
  trivial,             // n == 2
  infeasible,          // tau below the feasibility threshold
  complexity_optimal,  // tau at or above the saturation threshold
  power_window,        // 2^tau == n - 1, layered windows
  decompose,           // split into a base structure plus parts
};

inline phi_case case_at(int n, int tau) {
  if (n < 2) throw std::invalid_argument("case_at: need at least two inputs");
  if (tau < 0) throw std::invalid_argument("case_at: negative latency budget");
  if (n == 2) return phi_case::trivial;
  if (tau < tau_lower(n)) return phi_case::infeasible;
  if (tau >= tau_upper(n)) return phi_case::complexity_optimal;
  if (tau < 62 && (std::int64_t{1} << tau) == n - 1) return phi_case::power_window;
  return phi_case::decompose;
}

// phi[n][tau] and the part-assembly helper eta[i1][i2][i3][tau]:
// i1 inputs spread over i2 base slots, each part's log bounded by i3, parts
// built within latency tau. Slots not taken by a part pass one raw input.
struct cost_tables {
  int n_max = 0;
  int tau_max = 0;
  int part_log_max = 0;
  std::vector<std::vector<cost_t>> phi;
  std::vector<std::vector<std::pair<int, int>>> phi_back;  // (n0, tau0) for decompose cells
  std::vector<cost_t> eta;
  std::vector<int> eta_back;  // size of the last part placed, 0 when all slots raw

  std::size_t eta_index(int i1, int i2, int i3, int tau) const {
    return ((static_cast<std::size_t>(i1) * (n_max + 1) + i2) * (part_log_max + 1) + i3) *
               (tau_max + 1) +
           tau;
  }
  cost_t eta_at(int i1, int i2, int i3, int tau) const { return eta[eta_index(i1, i2, i3, tau)]; }
};

inline cost_tables compute_cost_tables(int n_max) {
  if (n_max < 2 || n_max > max_inputs)
    throw std::invalid_argument("compute_cost_tables: n_max must be in [2, 128]");
  cost_tables t;
  t.n_max = n_max;
  t.tau_max = n_max == 2 ? 0 : tau_upper(n_max);
  t.part_log_max = ceil_log2(static_cast<std::uint64_t>(n_max));

  t.phi.assign(n_max + 1, std::vector<cost_t>(t.tau_max + 1, cost_infinity));
  t.phi_back.assign(n_max + 1,
                    std::vector<std::pair<int, int>>(t.tau_max + 1, {-1, -1}));
  std::size_t cells = static_cast<std::size_t>(n_max + 1) * (n_max + 1) *
                      (t.part_log_max + 1) * (t.tau_max + 1);
  t.eta.assign(cells, cost_infinity);
  t.eta_back.assign(cells, 0);
  for (int i1 = 0; i1 <= n_max; ++i1)
    for (int i3 = 0; i3 <= t.part_log_max; ++i3)
      for (int tau = 0; tau <= t.tau_max; ++tau)
        t.eta[t.eta_index(i1, i1, i3, tau)] = 0;

  for (int n = 2; n <= n_max; ++n) {
    for (int tau = 0; tau <= t.tau_max; ++tau) {
      cost_t v = cost_infinity;
      std::pair<int, int> back{-1, -1};
      switch (case_at(n, tau)) {
        case phi_case::trivial:
          v = 0;
          break;
        case phi_case::infeasible:
          break;
        case phi_case::complexity_optimal:
          v = 3 * static_cast<cost_t>(n) - 6;
          break;
        case phi_case::power_window:
          v = static_cast<cost_t>(n) * tau;
          break;
        case phi_case::decompose: {
          for (int n0 = 2; n0 <= n - 1; ++n0) {
            for (int tau0 = 0; tau0 <= tau - 1; ++tau0) {
              int theta = std::min(ceil_log2(static_cast<std::uint64_t>(n)) -
                                       ceil_log2(static_cast<std::uint64_t>(n0)),
                                   tau - 1 - tau0);
              cost_t w = cost_add(t.phi[n0][tau0], t.eta_at(n, n0, theta, tau - 1));
              if (w < v) {
                v = w;
                back = {n0, tau0};
              }
            }
          }
          break;
        }
      }
      t.phi[n][tau] = v;
      t.phi_back[n][tau] = back;

      if (v < cost_infinity) {
        for (int i3 = ceil_log2(static_cast<std::uint64_t>(n)); i3 <= t.part_log_max; ++i3)
          for (int i1 = n; i1 <= n_max; ++i1)
            for (int i2 = 1; i2 <= n_max; ++i2) {
              cost_t base = t.eta_at(i1 - n, i2 - 1, i3, tau);
              if (base >= cost_infinity) continue;
              cost_t lam = base + v + n + 1;
              std::size_t at = t.eta_index(i1, i2, i3, tau);
              if (lam < t.eta[at]) {
                t.eta[at] = lam;
                t.eta_back[at] = n;
              }
            }
      }
    }
  }
  return t;
}

// Lookup with the conventions callers rely on: a single input costs -2 (it
// cancels one slot and one join), and budgets beyond the table saturate.
inline cost_t min_complexity(const cost_tables& t, int n, int tau) {
  if (tau < 0) throw std::invalid_argument("min_complexity: negative latency budget");
  if (n == 1) return -2;
  if (n < 1 || n > t.n_max) throw std::out_of_range("min_complexity: n outside the table");
  if (tau > t.tau_max) tau = t.tau_max;
  return t.phi[n][tau];
}

struct decomposition {
  int n0 = 0;
  int tau0 = 0;
  std::vector<int> part_sizes;  // sizes >= 2, in traceback order
  int units = 0;                // base slots that pass one raw input through
};

// The composition conditions a decomposition must satisfy: every slot of the
// base covered, part logs within both the global-log and budget headroom,
// parts no larger than n - 1.
inline bool satisfies_composition_conditions(int n, int tau, int n0, int tau0,
                                             const std::vector<int>& part_sizes,
                                             const std::vector<int>& part_taus) {
  int m = static_cast<int>(part_sizes.size());
  if (part_taus.size() != part_sizes.size()) return false;
  if (m < 1 || m > n - 1) return false;
  if (n0 < m || n0 < 2 || n0 > n - 1) return false;
  if (tau0 < 0 || tau0 > tau - 1) return false;
  int total = n0;
  for (int i = 0; i < m; ++i) {
    int ni = part_sizes[i];
    if (ni < 2 || ni > n - 1) return false;
    int li = ceil_log2(static_cast<std::uint64_t>(ni));
    if (li > ceil_log2(static_cast<std::uint64_t>(n)) - ceil_log2(static_cast<std::uint64_t>(n0)))
      return false;
    if (li > tau - 1 - tau0) return false;
    if (part_taus[i] > tau - 1 || part_taus[i] < 0) return false;
    total += ni;
  }
  return total == n + m;
}

inline decomposition traceback(const cost_tables& t, int n, int tau) {
  if (n < 2 || n > t.n_max || tau < 0 || tau > t.tau_max)
    throw std::out_of_range("traceback: cell outside the table");
  if (case_at(n, tau) != phi_case::decompose)
    throw std::invalid_argument("traceback: cell is not a decomposition cell");
  decomposition d;
  auto [n0, tau0] = t.phi_back[n][tau];
  if (n0 < 0) throw std::logic_error("traceback: no decomposition recorded");
  d.n0 = n0;
  d.tau0 = tau0;
  int theta = std::min(ceil_log2(static_cast<std::uint64_t>(n)) -
                           ceil_log2(static_cast<std::uint64_t>(n0)),
                       tau - 1 - tau0);
  int i1 = n, i2 = n0;
  while (i1 > i2) {
    int p = t.eta_back[t.eta_index(i1, i2, theta, tau - 1)];
    if (p < 2) throw std::logic_error("traceback: broken part chain");
    d.part_sizes.push_back(p);
    i1 -= p;
    i2 -= 1;
  }
  d.units = i1;
  return d;
}

// CSV: per n the feasibility threshold, saturation threshold, the counts at
// the first five feasible budgets, and the general upper bound.
inline std::string table_csv(const cost_tables& t) {
  std::ostringstream out;
  out << "n,tau_min,tau_max,i0,i1,i2,i3,i4,ub\n";
  for (int n = 2; n <= t.n_max; ++n) {
    out << n << ',' << tau_lower(n) << ',' << tau_upper(n);
    for (int i = 0; i <= 4; ++i) out << ',' << min_complexity(t, n, tau_lower(n) + i);
    out << ',' << (static_cast<cost_t>(n) * ceil_log2(static_cast<std::uint64_t>(n)) - 2)
        << '\n';
  }
  return out.str();
}

// Compares against a golden CSV; blank golden cells are skipped. Returns one
// line per mismatch.
inline std::vector<std::string> compare_table_to_golden(const cost_tables& t,
                                                        const std::string& golden_csv) {
  std::vector<std::string> diffs;
  std::istringstream in(golden_csv);
  std::string line;
  bool header = true;
  const char* col_names[] = {"n", "tau_min", "tau_max", "i0", "i1", "i2", "i3", "i4", "ub"};
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    while (cells.size() < 9) cells.push_back("");
    int n = std::stoi(cells[0]);
    if (n < 2 || n > t.n_max) {
      diffs.push_back("n=" + cells[0] + ": outside the computed table");
      continue;
    }
    cost_t got[9] = {n,
                     tau_lower(n),
                     tau_upper(n),
                     min_complexity(t, n, tau_lower(n) + 0),
                     min_complexity(t, n, tau_lower(n) + 1),
                     min_complexity(t, n, tau_lower(n) + 2),
                     min_complexity(t, n, tau_lower(n) + 3),
                     min_complexity(t, n, tau_lower(n) + 4),
                     static_cast<cost_t>(n) * ceil_log2(static_cast<std::uint64_t>(n)) - 2};
    for (int c = 1; c < 9; ++c) {
      if (cells[c].empty()) continue;
      cost_t want = std::stoll(cells[c]);
      if (want != got[c])
        diffs.push_back("n=" + std::to_string(n) + " " + col_names[c] + ": golden " +
                        std::to_string(want) + " computed " + std::to_string(got[c]));
    }
  }
  return diffs;
}

}  // namespace mps
