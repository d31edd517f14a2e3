#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "rebp/error.hpp"
#include "rebp/rational.hpp"

namespace rebp {

// Robust extensible bin packing: m items with nominal duration and a worst-case
// deviation, n bins of capacity V, per-bin overtime rate c_j, and a budget
// bounding the total deviation mass an adversary may spend.
struct RebpItem {
  Rational nominal;    // always incurred
  Rational deviation;  // adversary may add any amount in [0, deviation]
};

struct RebpInstance {
  std::vector<RebpItem> items;
  int bin_count = 0;
  Rational capacity;             // V > 0
  std::vector<Rational> rates;   // overtime cost per unit, one per bin
  Rational budget;               // 0 <= budget <= sum of deviations

  int item_count() const { return static_cast<int>(items.size()); }

  Rational deviation_mass() const {
    Rational s = 0;
    for (const auto& it : items) s += it.deviation;
    return s;
  }

  Rational nominal_mass() const {
    Rational s = 0;
    for (const auto& it : items) s += it.nominal;
    return s;
  }

  // Symmetry-breaking cuts are valid only when all bins cost the same.
  bool equal_rates() const {
    return std::all_of(rates.begin(), rates.end(),
                       [&](const Rational& c) { return c == rates.front(); });
  }
};

// A realized deviation vector, one entry per item.
using Scenario = std::vector<Rational>;

inline std::vector<Error> validate_rebp(const RebpInstance& inst) {
  std::vector<Error> bad;
  if (inst.items.empty())
    bad.emplace_back(Errc::EmptyInstance, "instance has no items");
  if (inst.bin_count < 1)
    bad.emplace_back(Errc::EmptyInstance, "instance has no bins");
  for (std::size_t i = 0; i < inst.items.size(); ++i) {
    if (inst.items[i].nominal < 0)
      bad.emplace_back(Errc::NegativeDuration,
                       "item " + std::to_string(i) + " has negative nominal duration");
    if (inst.items[i].deviation < 0)
      bad.emplace_back(Errc::NegativeDuration,
                       "item " + std::to_string(i) + " has negative deviation");
  }
  if (!(inst.capacity > 0))
    bad.emplace_back(Errc::NegativeDuration, "capacity must be positive");
  if (static_cast<int>(inst.rates.size()) != inst.bin_count)
    bad.emplace_back(Errc::EmptyInstance, "need exactly one overtime rate per bin");
  for (std::size_t j = 0; j < inst.rates.size(); ++j)
    if (!(inst.rates[j] > 0))
      bad.emplace_back(Errc::NegativeDuration,
                       "rate for bin " + std::to_string(j) + " must be positive");
  if (inst.budget < 0)
    bad.emplace_back(Errc::BudgetOutOfRange, "budget is negative");
  else if (!inst.items.empty() && inst.budget > inst.deviation_mass())
    bad.emplace_back(Errc::BudgetOutOfRange, "budget exceeds total deviation mass");
  return bad;
}

inline void require_valid(const RebpInstance& inst) {
  auto bad = validate_rebp(inst);
  if (!bad.empty()) throw bad.front();
}

inline std::vector<Error> scenario_violations(const RebpInstance& inst, const Scenario& a) {
  std::vector<Error> bad;
  if (a.size() != inst.items.size()) {
    bad.emplace_back(Errc::ScenarioInfeasible, "scenario length differs from item count");
    return bad;
  }
  Rational total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || a[i] > inst.items[i].deviation)
      bad.emplace_back(Errc::ScenarioInfeasible,
                       "deviation of item " + std::to_string(i) + " outside its box");
    total += a[i];
  }
  if (total > inst.budget)
    bad.emplace_back(Errc::ScenarioInfeasible, "total deviation exceeds budget");
  return bad;
}

inline bool scenario_feasible(const RebpInstance& inst, const Scenario& a) {
  return scenario_violations(inst, a).empty();
}

// Assignment form used throughout: open[j] says whether bin j is used,
// bin_of[i] names item i's bin.
inline void require_assignment(const RebpInstance& inst, const std::vector<char>& open,
                               const std::vector<int>& bin_of) {
  require(static_cast<int>(open.size()) == inst.bin_count, Errc::UnassignedItem,
          "open-bin vector length differs from bin count");
  require(bin_of.size() == inst.items.size(), Errc::UnassignedItem,
          "assignment length differs from item count");
  for (std::size_t i = 0; i < bin_of.size(); ++i) {
    require(bin_of[i] >= 0 && bin_of[i] < inst.bin_count, Errc::UnassignedItem,
            "item " + std::to_string(i) + " is not assigned to a bin");
    require(open[bin_of[i]] != 0, Errc::UnassignedItem,
            "item " + std::to_string(i) + " is assigned to a closed bin");
  }
}

// Overtime part of the objective under a fixed scenario: sum over bins of
// rate * (load + deviation - capacity)_+ .
inline Rational overtime_cost(const RebpInstance& inst, const std::vector<char>& open,
                              const std::vector<int>& bin_of, const Scenario& a) {
  std::vector<Rational> load(inst.bin_count, Rational(0));
  for (std::size_t i = 0; i < bin_of.size(); ++i)
    load[bin_of[i]] += inst.items[i].nominal + a[i];
  Rational cost = 0;
  for (int j = 0; j < inst.bin_count; ++j) {
    if (!open[j]) continue;
    Rational over = load[j] - inst.capacity;
    if (over > 0) cost += inst.rates[j] * over;
  }
  return cost;
}

inline Rational rebp_objective(const RebpInstance& inst, const std::vector<char>& open,
                               const std::vector<int>& bin_of, const Scenario& a) {
  require_assignment(inst, open, bin_of);
  {
    auto bad = scenario_violations(inst, a);
    if (!bad.empty()) throw bad.front();
  }
  long bins = std::count_if(open.begin(), open.end(), [](char o) { return o != 0; });
  return Rational(bins) + overtime_cost(inst, open, bin_of, a);
}

}  // namespace rebp
