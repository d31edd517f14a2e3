#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rebp/error.hpp"
#include "rebp/rational.hpp"

namespace rebp {

// One item of the two-piece convex knapsack: profit p(x) = max(0, gamma + beta*x)
// for x in [0, bound]. The profit is flat at zero up to the breakpoint
// max(0, -gamma/beta), then linear with slope beta.
struct CkItem {
  Rational gamma;
  Rational beta;   // > 0
  Rational bound;  // u_j > 0
};

class CkInstance {
 public:
  // Items whose best profit p(bound) is not positive can always be left at
  // x = 0 in some optimum, so construction drops them (along with nonpositive
  // slopes or bounds). budget is the shared capacity on sum x_j.
  static CkInstance make(std::vector<CkItem> raw, Rational budget) {
    require(budget >= 0, Errc::BudgetOutOfRange, "knapsack capacity is negative");
    CkInstance inst;
    inst.budget_ = std::move(budget);
    for (auto& it : raw) {
      if (!(it.bound > 0) || !(it.beta > 0)) continue;
      if (!(it.gamma + it.beta * it.bound > 0)) continue;
      inst.items_.push_back(std::move(it));
    }
    // Smallest integer clearing every top profit (and every positive
    // intercept, so the zero-point profits scale exactly too).
    Integer s = 1;
    for (const auto& it : inst.items_) {
      s = int_lcm(s, den(it.gamma + it.beta * it.bound));
      if (it.gamma > 0) s = int_lcm(s, den(it.gamma));
    }
    inst.profit_scale_ = s;
    return inst;
  }

  int size() const { return static_cast<int>(items_.size()); }
  const std::vector<CkItem>& items() const { return items_; }
  const CkItem& item(int j) const { return items_[j]; }
  const Rational& budget() const { return budget_; }
  const Integer& profit_scale() const { return profit_scale_; }

  Rational profit(int j, const Rational& x) const {
    Rational v = items_[j].gamma + items_[j].beta * x;
    return v > 0 ? v : Rational(0);
  }

  Rational top_profit(int j) const { return profit(j, items_[j].bound); }

  Rational breakpoint(int j) const {
    if (items_[j].gamma >= 0) return 0;
    return -items_[j].gamma / items_[j].beta;
  }

 private:
  std::vector<CkItem> items_;
  Rational budget_;
  Integer profit_scale_ = 1;
};

struct CkSolution {
  Rational value;                     // sum of p_j(x_j) over stored items
  std::vector<Rational> x;            // one per stored item, instance order
  std::vector<int> full_set;          // indices with x_j = u_j, ascending
  std::optional<int> fractional_item; // the single index with 0 <= x_f < u_f, if any
};

inline bool ck_solution_feasible(const CkInstance& inst, const CkSolution& sol) {
  if (static_cast<int>(sol.x.size()) != inst.size()) return false;
  Rational total = 0;
  for (int j = 0; j < inst.size(); ++j) {
    if (sol.x[j] < 0 || sol.x[j] > inst.item(j).bound) return false;
    total += sol.x[j];
  }
  return total <= inst.budget();
}

inline Rational ck_value(const CkInstance& inst, const std::vector<Rational>& x) {
  Rational v = 0;
  for (int j = 0; j < inst.size(); ++j) v += inst.profit(j, x[j]);
  return v;
}

}  // namespace rebp
