#include "cdap/objective.hpp"

namespace cdap {

Cost evaluate_unchecked(const Instance& inst, const Assignment& a) {
    double cost = 0.0;
    for (int m = 0; m < inst.origins; ++m) {
        const int i = a.x[m];
        for (int n = 0; n < inst.destinations; ++n)
            cost += inst.distance(i, a.y[n]) * static_cast<double>(inst.flow(m, n));
    }
    return cost;
}

Cost evaluate(const Instance& inst, const Assignment& a) {
    validate_assignment(inst, a);
    return evaluate_unchecked(inst, a);
}

double evaluate_move_delta(const Instance& inst, const Assignment& a, const Move& mv) {
    validate_move(inst, a, mv);
    double delta = 0.0;
    switch (mv.kind) {
        case MoveKind::SwapOrigins: {
            const int i1 = a.x[mv.a], i2 = a.x[mv.b];
            for (int n = 0; n < inst.destinations; ++n) {
                const int j = a.y[n];
                delta += (inst.distance(i2, j) - inst.distance(i1, j)) *
                         static_cast<double>(inst.flow(mv.a, n) - inst.flow(mv.b, n));
            }
            break;
        }
        case MoveKind::SwapDestinations: {
            const int j1 = a.y[mv.a], j2 = a.y[mv.b];
            for (int m = 0; m < inst.origins; ++m) {
                const int i = a.x[m];
                delta += (inst.distance(i, j2) - inst.distance(i, j1)) *
                         static_cast<double>(inst.flow(m, mv.a) - inst.flow(m, mv.b));
            }
            break;
        }
        case MoveKind::RelocateOrigin: {
            const int i_old = a.x[mv.a];
            for (int n = 0; n < inst.destinations; ++n) {
                const int j = a.y[n];
                delta += (inst.distance(mv.b, j) - inst.distance(i_old, j)) *
                         static_cast<double>(inst.flow(mv.a, n));
            }
            break;
        }
        case MoveKind::RelocateDestination: {
            const int j_old = a.y[mv.a];
            for (int m = 0; m < inst.origins; ++m) {
                const int i = a.x[m];
                delta += (inst.distance(i, mv.b) - inst.distance(i, j_old)) *
                         static_cast<double>(inst.flow(m, mv.a));
            }
            break;
        }
    }
    return delta;
}

}  // namespace cdap
