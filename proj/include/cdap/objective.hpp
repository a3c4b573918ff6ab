#ifndef CDAP_OBJECTIVE_HPP
#define CDAP_OBJECTIVE_HPP

#include "cdap/assignment.hpp"
#include "cdap/instance.hpp"

namespace cdap {

// Distance-weighted trip total, in length units x trips.
using Cost = double;

// Total material-handling travel of an assignment:
//   sum over origins m, destinations n of d[x[m]][y[n]] * w[m][n],
// accumulated in (m, n) row-major order. Throws FeasibilityError for an
// infeasible assignment.
Cost evaluate(const Instance& inst, const Assignment& a);

// Same sum without the feasibility check, for enumeration loops where the
// assignment is feasible by construction. Bit-identical to evaluate.
Cost evaluate_unchecked(const Instance& inst, const Assignment& a);

// Exact cost change of applying mv, computed in O(M + N) from the flow
// differences instead of re-summing the objective.
double evaluate_move_delta(const Instance& inst, const Assignment& a, const Move& mv);

}  // namespace cdap

#endif
