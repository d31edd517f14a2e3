#pragma once

// Solvers for the two-piece convex knapsack (CK):
//   max sum_j p_j(x_j)  s.t.  sum_j x_j <= budget, 0 <= x_j <= u_j,
// with p_j(x) = max(0, gamma_j + beta_j x).
//
// Every optimum is attained at an extreme point: a full set S* (x_j = u_j),
// at most one fractional coordinate, zeros elsewhere. The exact solver builds
// one least-weight table zeta(P, k) = least weight of a subset of the first k
// sorted items with scaled profit >= P, shared across all fractional
// candidates f (column k is valid for every excluded f >= k+1), then sweeps
// candidates f against column f-1.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "rebp/ck.hpp"
#include "rebp/error.hpp"
#include "rebp/rational.hpp"

namespace rebp {

namespace ck_detail {

// Profit of item j measured above its value at x = 0; flat at zero by
// construction, which the greedy/LP bounding arguments require.
inline Rational shifted_profit(const CkInstance& inst, int j, const Rational& x) {
  const CkItem& it = inst.item(j);
  Rational g = it.gamma > 0 ? Rational(0) : it.gamma;
  Rational v = g + it.beta * x;
  return v > 0 ? v : Rational(0);
}

// Value every solution collects for free at x = 0.
inline Rational zero_point_value(const CkInstance& inst) {
  Rational f = 0;
  for (int j = 0; j < inst.size(); ++j)
    if (inst.item(j).gamma > 0) f += inst.item(j).gamma;
  return f;
}

// Greedy density-prefix bound over given per-item (value, mass) pairs:
// best feasible prefix of the nonincreasing value/mass ordering.
inline Rational density_prefix_value(std::vector<std::pair<Rational, Rational>> items,
                                     const Rational& budget) {
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) {
                     // a.value/a.mass > b.value/b.mass, cross-multiplied
                     return a.first * b.second > b.first * a.second;
                   });
  Rational best = 0, value = 0, mass = 0;
  for (const auto& [v, u] : items) {
    mass += u;
    if (mass > budget) break;
    value += v;
    if (value > best) best = value;
  }
  return best;
}

// Always-valid lower bound on the CK optimum: the zero-point floor plus the
// best of (single clamped item, greedy clamped prefix) measured in shifted
// profits. Coincides with the literal profit_lower_bound whenever every
// gamma_j <= 0 and every u_j <= budget.
inline Rational reachable_floor_shifted(const CkInstance& inst) {
  Rational best_single = 0;
  std::vector<std::pair<Rational, Rational>> clamped;
  for (int j = 0; j < inst.size(); ++j) {
    Rational u = inst.item(j).bound < inst.budget() ? inst.item(j).bound : inst.budget();
    if (!(u > 0)) continue;
    Rational q = shifted_profit(inst, j, u);
    if (q > best_single) best_single = q;
    if (q > 0) clamped.emplace_back(q, u);
  }
  Rational prefix = density_prefix_value(std::move(clamped), inst.budget());
  return best_single > prefix ? best_single : prefix;
}

}  // namespace ck_detail

// Literal lower bound: max of the best single item's top profit and the best
// feasible prefix of the density ordering. A true lower bound on the optimum
// whenever every item fits alone (u_j <= budget) and profits vanish at zero
// (gamma_j <= 0); see reachable_floor_shifted for the always-valid variant
// the solvers use internally.
inline Rational profit_lower_bound(const CkInstance& inst) {
  Rational best_single = 0;
  std::vector<std::pair<Rational, Rational>> full;
  for (int j = 0; j < inst.size(); ++j) {
    Rational p = inst.top_profit(j);
    if (p > best_single) best_single = p;
    full.emplace_back(p, inst.item(j).bound);
  }
  Rational prefix = ck_detail::density_prefix_value(std::move(full), inst.budget());
  return best_single > prefix ? best_single : prefix;
}

// min(2 * lower bound, sum of top profits).
inline Rational profit_upper_bound(const CkInstance& inst) {
  Rational twice = 2 * profit_lower_bound(inst);
  Rational total = 0;
  for (int j = 0; j < inst.size(); ++j) total += inst.top_profit(j);
  return twice < total ? twice : total;
}

// DP ordering: slopes nonincreasing; among equal slopes smaller bound first;
// stable beyond that. Returns sorted position -> original index.
inline std::vector<int> sort_for_dp(const CkInstance& inst) {
  std::vector<int> order(inst.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (inst.item(a).beta != inst.item(b).beta) return inst.item(a).beta > inst.item(b).beta;
    return inst.item(a).bound < inst.item(b).bound;
  });
  return order;
}

struct ProfitScaling {
  enum class Mode { Exact, Approximate };
  Mode mode = Mode::Exact;
  Rational factor;                    // sigma; p'_j = floor(sigma * shifted top profit)
  Rational epsilon;                   // Approximate only
  Rational offset;                    // zero-point floor added back to values
  std::vector<std::int64_t> scaled;   // p'_j, instance order
};

inline ProfitScaling make_exact_scaling(const CkInstance& inst) {
  ProfitScaling s;
  s.mode = ProfitScaling::Mode::Exact;
  s.factor = Rational(inst.profit_scale());
  s.offset = ck_detail::zero_point_value(inst);
  s.scaled.reserve(inst.size());
  for (int j = 0; j < inst.size(); ++j) {
    Rational scaled = s.factor * ck_detail::shifted_profit(inst, j, inst.item(j).bound);
    require(den(scaled) == 1, Errc::ScalingNotExact,
            "profit scale does not clear item " + std::to_string(j));
    s.scaled.push_back(to_int64(num(scaled), Errc::ProfitBoundOverflow, "scaled profit"));
  }
  return s;
}

// K = epsilon * (reachable lower bound) / n; profits are floored to K-units.
inline ProfitScaling make_fptas_scaling(const CkInstance& inst, const Rational& epsilon) {
  require(epsilon > 0 && epsilon < 1, Errc::EpsilonOutOfRange,
          "epsilon must lie strictly between 0 and 1");
  ProfitScaling s;
  s.mode = ProfitScaling::Mode::Approximate;
  s.epsilon = epsilon;
  s.offset = ck_detail::zero_point_value(inst);
  Rational floor_value = ck_detail::reachable_floor_shifted(inst);
  if (floor_value == 0 || inst.size() == 0) {
    s.factor = 0;  // optimum is the zero-point floor; solvers shortcut
    s.scaled.assign(inst.size(), 0);
    return s;
  }
  s.factor = Rational(inst.size()) / (epsilon * floor_value);  // 1/K
  for (int j = 0; j < inst.size(); ++j) {
    Rational scaled = s.factor * ck_detail::shifted_profit(inst, j, inst.item(j).bound);
    s.scaled.push_back(to_int64(rational_floor(scaled), Errc::ProfitBoundOverflow,
                                "scaled profit"));
  }
  return s;
}

struct DpTable {
  std::int64_t profit_bound = 0;          // P-bar, scaled units
  int item_count = 0;
  std::int64_t capacity_units = 0;        // budget in cleared weight units
  Integer weight_denominator = 1;         // clearing unit D
  std::vector<std::int64_t> item_weight;  // per sorted position, 1-based k
  std::vector<int> order;                 // sorted position -> original index
  std::vector<std::int64_t> weights;      // (P-bar+1) x (n+1), column-major
  std::vector<std::uint64_t> take_bits;

  // Entries above capacity are all equivalent; they are stored as the tag
  // capacity+1 and never used arithmetically.
  bool infeasible(std::int64_t w) const { return w > capacity_units; }

  std::int64_t at(std::int64_t P, int k) const {
    return weights[static_cast<std::size_t>(k) * (profit_bound + 1) + P];
  }
  bool took(std::int64_t P, int k) const {
    std::size_t idx = static_cast<std::size_t>(k) * (profit_bound + 1) + P;
    return (take_bits[idx >> 6] >> (idx & 63)) & 1u;
  }
};

inline constexpr std::size_t kDefaultDpCellCap = 120'000'000;

inline DpTable build_dp_table(const CkInstance& inst, const ProfitScaling& scaling,
                              std::size_t cell_cap = kDefaultDpCellCap) {
  const int n = inst.size();
  DpTable t;
  t.item_count = n;
  t.order = sort_for_dp(inst);

  std::vector<Rational> to_clear;
  to_clear.push_back(inst.budget());
  for (int j = 0; j < n; ++j) to_clear.push_back(inst.item(j).bound);
  t.weight_denominator = common_denominator(to_clear);
  Integer w_cap = num(inst.budget() * Rational(t.weight_denominator));
  t.capacity_units = to_int64(w_cap, Errc::ProfitBoundOverflow, "capacity units");
  require(t.capacity_units <= std::numeric_limits<std::int64_t>::max() / 4,
          Errc::ProfitBoundOverflow, "capacity units too large for the weight table");
  t.item_weight.assign(n + 1, 0);
  for (int k = 1; k <= n; ++k) {
    Integer w = num(inst.item(t.order[k - 1]).bound * Rational(t.weight_denominator));
    t.item_weight[k] = to_int64(w, Errc::ProfitBoundOverflow, "item weight units");
  }

  // Profit bound: min(sum of scaled profits, floor(2 * scaled reachable
  // floor)). Both cap the full-set profit of any optimum.
  Integer sum_scaled = 0;
  for (std::int64_t p : scaling.scaled) sum_scaled += p;
  Integer twice_floor = scaling.factor == 0
                            ? Integer(0)
                            : rational_floor(2 * scaling.factor *
                                             ck_detail::reachable_floor_shifted(inst));
  Integer bound = sum_scaled < twice_floor ? sum_scaled : twice_floor;
  t.profit_bound = to_int64(bound, Errc::ProfitBoundOverflow, "profit bound");

  Integer cells = (Integer(t.profit_bound) + 1) * (n + 1);
  require(cells <= Integer(cell_cap), Errc::ProfitBoundOverflow,
          "profit bound needs " + cells.str() + " table cells (cap " +
              std::to_string(cell_cap) + ")");

  const std::int64_t rows = t.profit_bound + 1;
  const std::int64_t sentinel = t.capacity_units + 1;
  t.weights.assign(static_cast<std::size_t>(rows) * (n + 1), sentinel);
  t.take_bits.assign((static_cast<std::size_t>(rows) * (n + 1) + 63) / 64, 0);
  t.weights[0] = 0;  // column 0: profit 0 costs nothing, anything else is unreachable

  for (int k = 1; k <= n; ++k) {
    const std::int64_t pk = scaling.scaled[t.order[k - 1]];
    const std::int64_t wk = t.item_weight[k];
    const std::int64_t* prev = &t.weights[static_cast<std::size_t>(k - 1) * rows];
    std::int64_t* cur = &t.weights[static_cast<std::size_t>(k) * rows];
    const std::size_t bit_base = static_cast<std::size_t>(k) * rows;
    for (std::int64_t P = 0; P < rows; ++P) {
      std::int64_t best = prev[P];  // exclude k; ties also prefer excluding
      if (wk <= t.capacity_units) {
        std::int64_t base = prev[P >= pk ? P - pk : 0];
        if (base <= t.capacity_units) {
          std::int64_t with = base + wk;
          if (with <= t.capacity_units && with < best) {
            best = with;
            std::size_t idx = bit_base + static_cast<std::size_t>(P);
            t.take_bits[idx >> 6] |= std::uint64_t(1) << (idx & 63);
          }
        }
      }
      cur[P] = best;
    }
  }
  return t;
}

namespace ck_detail {

struct SweepBest {
  bool found = false;
  int f = 0;               // 1-based sorted position; n+1 = no fractional item
  std::int64_t profit = 0; // table row of the winning full set
  Rational value;          // exact objective value
};

// Finds the maximizing (f, P): full-set profit P from column f-1 plus the
// fractional item's exact profit at x_f = min(u_f, budget - zeta). Candidate
// comparisons within one f are pure integer; one rational comparison per f.
inline SweepBest sweep(const CkInstance& inst, const ProfitScaling& scaling,
                       const DpTable& t) {
  SweepBest best;
  const int n = inst.size();
  const std::int64_t rows = t.profit_bound + 1;
  for (int f = n + 1; f >= 1; --f) {
    const std::int64_t* col = &t.weights[static_cast<std::size_t>(f - 1) * rows];
    bool local_found = false;
    __int128 local_num = 0;
    std::int64_t local_P = 0;
    std::int64_t denf64 = 1;
    Rational denf_r = 1;
    if (f <= n) {
      const CkItem& it = inst.item(t.order[f - 1]);
      Rational g = it.gamma > 0 ? Rational(0) : it.gamma;
      Rational A = scaling.factor * g;
      Rational B = scaling.factor * it.beta / Rational(t.weight_denominator);
      Integer denf = int_lcm(den(A), den(B));
      Integer a_int = num(A) * (denf / den(A));
      Integer b_int = num(B) * (denf / den(B));
      // Magnitude guard so the inner loop can run in 128-bit integers.
      Integer span = abs(a_int) + b_int * t.capacity_units + denf * t.profit_bound;
      require(span < (Integer(1) << 120), Errc::ProfitBoundOverflow,
              "sweep coefficients exceed the 128-bit fast path");
      const std::int64_t a = to_int64(a_int, Errc::ProfitBoundOverflow, "sweep intercept");
      const std::int64_t b = to_int64(b_int, Errc::ProfitBoundOverflow, "sweep slope");
      denf64 = to_int64(denf, Errc::ProfitBoundOverflow, "sweep denominator");
      denf_r = Rational(denf);
      const std::int64_t wf = t.item_weight[f];
      for (std::int64_t P = 0; P < rows; ++P) {
        if (col[P] > t.capacity_units) continue;
        std::int64_t room = t.capacity_units - col[P];
        std::int64_t xf = room < wf ? room : wf;
        __int128 frac = static_cast<__int128>(a) + static_cast<__int128>(b) * xf;
        if (frac < 0) frac = 0;
        __int128 cand = static_cast<__int128>(denf64) * P + frac;
        if (!local_found || cand > local_num) {
          local_found = true;
          local_num = cand;
          local_P = P;
        }
      }
    } else {
      for (std::int64_t P = rows - 1; P >= 0; --P) {
        if (col[P] <= t.capacity_units) {
          local_found = true;
          local_num = P;
          local_P = P;
          break;
        }
      }
    }
    if (!local_found) continue;
    Integer cand_int = Integer(static_cast<std::int64_t>(local_num >> 64)) * 0;  // init
    // Rebuild the 128-bit candidate as an Integer for the exact comparison.
    cand_int = Integer(static_cast<unsigned long long>(
                   static_cast<unsigned __int128>(local_num) & 0xffffffffffffffffULL)) +
               (Integer(static_cast<long long>(local_num >> 64)) << 64);
    Rational value = scaling.offset +
                     (scaling.factor == 0
                          ? Rational(0)
                          : Rational(cand_int) / (scaling.factor * denf_r));
    if (!best.found || value > best.value) {
      best.found = true;
      best.f = f;
      best.profit = local_P;
      best.value = value;
    }
  }
  return best;
}

inline CkSolution reconstruct(const CkInstance& inst, const ProfitScaling& scaling,
                              const DpTable& t, const SweepBest& win) {
  CkSolution sol;
  sol.x.assign(inst.size(), Rational(0));
  if (!win.found) {  // empty table; everything at zero
    sol.value = ck_value(inst, sol.x);
    return sol;
  }
  std::int64_t P = win.profit;
  Rational used = 0;
  for (int k = win.f - 1; k >= 1; --k) {
    if (t.took(P, k)) {
      int orig = t.order[k - 1];
      sol.x[orig] = inst.item(orig).bound;
      sol.full_set.push_back(orig);
      used += inst.item(orig).bound;
      P = P >= scaling.scaled[orig] ? P - scaling.scaled[orig] : 0;
    }
  }
  if (win.f <= static_cast<int>(inst.size())) {
    int orig = t.order[win.f - 1];
    Rational room = inst.budget() - used;
    if (room < 0) room = 0;
    Rational xf = room < inst.item(orig).bound ? room : inst.item(orig).bound;
    if (xf == inst.item(orig).bound) {
      sol.x[orig] = xf;
      sol.full_set.push_back(orig);
    } else if (xf > 0) {
      sol.x[orig] = xf;
      sol.fractional_item = orig;
    }
  }
  std::sort(sol.full_set.begin(), sol.full_set.end());
  sol.value = ck_value(inst, sol.x);
  return sol;
}

}  // namespace ck_detail

// Exact optimum via the shared table and the candidate sweep.
inline CkSolution solve_dp(const CkInstance& inst, const ProfitScaling& scaling,
                           std::size_t cell_cap = kDefaultDpCellCap) {
  require(scaling.mode == ProfitScaling::Mode::Exact, Errc::ScalingNotExact,
          "exact solve requires exact scaling; use solve_fptas for approximate mode");
  if (inst.size() == 0) return CkSolution{Rational(0), {}, {}, std::nullopt};
  DpTable t = build_dp_table(inst, scaling, cell_cap);
  auto win = ck_detail::sweep(inst, scaling, t);
  return ck_detail::reconstruct(inst, scaling, t, win);
}

inline CkSolution solve_dp(const CkInstance& inst,
                           std::size_t cell_cap = kDefaultDpCellCap) {
  return solve_dp(inst, make_exact_scaling(inst), cell_cap);
}

struct FptasResult {
  CkSolution solution;    // x re-evaluated exactly; value is the exact objective
  Rational claimed_value; // scaled-units claim, >= (1-epsilon) * optimum
  std::int64_t table_rows = 0;
};

inline FptasResult solve_fptas(const CkInstance& inst, const Rational& epsilon,
                               std::size_t cell_cap = kDefaultDpCellCap) {
  ProfitScaling scaling = make_fptas_scaling(inst, epsilon);
  FptasResult out;
  if (inst.size() == 0 || scaling.factor == 0) {
    // Optimum equals the zero-point floor exactly.
    out.solution.x.assign(inst.size(), Rational(0));
    out.solution.value = ck_value(inst, out.solution.x);
    out.claimed_value = out.solution.value;
    out.table_rows = 1;
    return out;
  }
  DpTable t = build_dp_table(inst, scaling, cell_cap);
  auto win = ck_detail::sweep(inst, scaling, t);
  out.solution = ck_detail::reconstruct(inst, scaling, t, win);
  out.claimed_value = win.found ? win.value : scaling.offset;
  out.table_rows = t.profit_bound + 1;
  return out;
}

// Exhaustive oracle over extreme points: all full sets, then all full sets
// plus one strictly interior coordinate. Kept independent of the DP path.
inline CkSolution brute_force_ck(const CkInstance& inst) {
  const int n = inst.size();
  require(n <= 22, Errc::TooLarge, "brute force capped at 22 items");
  if (n == 0) return CkSolution{Rational(0), {}, {}, std::nullopt};

  struct Best {
    bool found = false;
    std::uint32_t mask = 0;
    int frac = -1;  // -1: none
    Rational value;
  } best;

  std::vector<Rational> bound_sum(std::size_t(1) << n);
  std::vector<Rational> bin_value(std::size_t(1) << n);
  Rational floor_value = ck_detail::zero_point_value(inst);
  bin_value[0] = floor_value;
  for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
    int low = std::countr_zero(mask);
    std::uint32_t rest = mask & (mask - 1);
    bound_sum[mask] = bound_sum[rest] + inst.item(low).bound;
    Rational zero_at_low = inst.item(low).gamma > 0 ? inst.item(low).gamma : Rational(0);
    bin_value[mask] = bin_value[rest] + inst.top_profit(low) - zero_at_low;
  }

  for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask) {
    if (bound_sum[mask] > inst.budget()) continue;
    if (!best.found || bin_value[mask] > best.value) {
      best = {true, mask, -1, bin_value[mask]};
    }
  }
  for (std::uint32_t mask = 0; mask < (std::uint32_t(1) << n); ++mask) {
    if (bound_sum[mask] > inst.budget()) continue;
    Rational room = inst.budget() - bound_sum[mask];
    if (!(room > 0)) continue;
    for (int f = 0; f < n; ++f) {
      if (mask & (std::uint32_t(1) << f)) continue;
      if (!(room < inst.item(f).bound)) continue;  // not strictly interior
      Rational zero_at_f = inst.item(f).gamma > 0 ? inst.item(f).gamma : Rational(0);
      Rational value = bin_value[mask] - zero_at_f + inst.profit(f, room);
      if (value > best.value) {
        best = {true, mask, f, value};
      }
    }
  }

  CkSolution sol;
  sol.x.assign(n, Rational(0));
  for (int j = 0; j < n; ++j)
    if (best.mask & (std::uint32_t(1) << j)) {
      sol.x[j] = inst.item(j).bound;
      sol.full_set.push_back(j);
    }
  if (best.frac >= 0) {
    sol.x[best.frac] = inst.budget() - bound_sum[best.mask];
    sol.fractional_item = best.frac;
  }
  sol.value = ck_value(inst, sol.x);
  return sol;
}

}  // namespace rebp
