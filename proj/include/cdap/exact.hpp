#ifndef CDAP_EXACT_HPP
#define CDAP_EXACT_HPP

#include <functional>

#include "cdap/assignment.hpp"
#include "cdap/instance.hpp"
#include "cdap/objective.hpp"

namespace cdap {

// Ground truth from full enumeration.
struct ExactResult {
    Assignment best;                        // lexicographically smallest optimum
    Cost best_cost = 0.0;
    unsigned long long num_evaluated = 0;   // P(I,M) * P(J,N)
    unsigned long long optima_count = 0;    // assignments attaining best_cost
};

inline constexpr unsigned long long kDefaultExactBudget = 10'000'000ULL;

// n * (n-1) * ... * (n-k+1). Throws std::overflow_error past 2^64.
unsigned long long falling_factorial(int n, int k);

// Visits every feasible assignment in lexicographic (x, then y) order.
void for_each_assignment(const Instance& inst, const std::function<void(const Assignment&)>& fn);

// Exhaustive minimization of the travel objective. Refuses with
// BudgetExceededError when the enumeration count exceeds budget_limit.
// The x-range may be partitioned across threads; the result is identical
// for any thread count.
ExactResult solve_exact(const Instance& inst, unsigned long long budget_limit = kDefaultExactBudget,
                        int threads = 1);

}  // namespace cdap

#endif
