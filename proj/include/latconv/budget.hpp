#pragma once

#include "latconv/errors.hpp"

namespace latconv {

/// Work meter for iteration fallbacks.  One unit is one membership query.
/// Charged budgets are per task: exhausting one aborts only the computation
/// holding it, via BudgetExceeded.
class Budget {
 public:
  static constexpr long long kDefault = 10'000'000;

  explicit Budget(long long units = kDefault) : remaining_(units) {}

  void charge(long long units, const char* what) {
    remaining_ -= units;
    if (remaining_ < 0) throw BudgetExceeded(std::string("budget exceeded in ") + what);
  }

  long long remaining() const { return remaining_; }

 private:
  long long remaining_;
};

}  // namespace latconv
