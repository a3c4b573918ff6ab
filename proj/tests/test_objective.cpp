#include <algorithm>
#include <cmath>
#include <map>

#include "cdap/errors.hpp"
#include "cdap/objective.hpp"
#include "cdap/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cdap;

namespace {

Instance tiny_1x1(double d, long long w) {
    Instance inst;
    inst.inbound_doors = inst.outbound_doors = inst.origins = inst.destinations = 1;
    inst.distance = Matrix<double>(1, 1, d);
    inst.flow = Matrix<long long>(1, 1, w);
    return inst;
}

// d=[[1,2],[3,4]], w=[[1,0],[0,1]]: the worked 2x2 example.
Instance example_2x2() {
    Instance inst;
    inst.inbound_doors = inst.outbound_doors = inst.origins = inst.destinations = 2;
    inst.distance = Matrix<double>(2, 2);
    inst.distance(0, 0) = 1;
    inst.distance(0, 1) = 2;
    inst.distance(1, 0) = 3;
    inst.distance(1, 1) = 4;
    inst.flow = Matrix<long long>(2, 2, 0);
    inst.flow(0, 0) = 1;
    inst.flow(1, 1) = 1;
    return inst;
}

Instance random_small(std::uint64_t seed) {
    Rng rng(seed);
    const int I = static_cast<int>(rng.uniform_int(1, 6));
    const int J = static_cast<int>(rng.uniform_int(1, 6));
    const int M = static_cast<int>(rng.uniform_int(1, I));
    const int N = static_cast<int>(rng.uniform_int(1, J));
    return generate_random(I, J, M, N, 10.0, 5, seed);
}

}  // namespace

TEST_CASE("single-term objective") {
    const Instance inst = tiny_1x1(5.0, 3);
    CHECK(evaluate(inst, {{0}, {0}}) == 15.0);
}

TEST_CASE("zero flow always costs zero") {
    Instance inst = generate_random(3, 3, 2, 2, 10.0, 5, 5);
    inst.flow = Matrix<long long>(2, 2, 0);
    CHECK(evaluate(inst, random_assignment(inst, 1)) == 0.0);
}

TEST_CASE("hand-expanded 2x2 objective") {
    const Instance inst = example_2x2();
    CHECK(evaluate(inst, {{0, 1}, {0, 1}}) == 5.0);  // d00*1 + d11*1
}

TEST_CASE("evaluate agrees with the four-index oracle") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const Instance inst = random_small(seed);
        const Assignment a = random_assignment(inst, seed * 19);
        const double expected = testing::brute_force_cost(inst, a);
        CHECK(evaluate(inst, a) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("infeasible assignments are rejected with the offending index") {
    const Instance inst = generate_random(3, 3, 2, 2, 10.0, 5, 2);
    CHECK_THROWS_AS(evaluate(inst, {{0, 0}, {0, 1}}), FeasibilityError);
    CHECK_THROWS_AS(evaluate(inst, {{0, 3}, {0, 1}}), FeasibilityError);
    CHECK_THROWS_AS(evaluate(inst, {{0}, {0, 1}}), FeasibilityError);
    try {
        evaluate(inst, {{0, 0}, {0, 1}});
    } catch (const FeasibilityError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("origin 2") != std::string::npos);
        CHECK(msg.find("door 1") != std::string::npos);
    }
}

TEST_CASE("identity swap has zero delta") {
    const Instance inst = example_2x2();
    const Assignment a{{0, 1}, {0, 1}};
    CHECK(evaluate_move_delta(inst, a, {MoveKind::SwapOrigins, 0, 0}) == 0.0);
    CHECK(evaluate_move_delta(inst, a, {MoveKind::SwapDestinations, 1, 1}) == 0.0);
}

TEST_CASE("swap delta matches two full evaluations") {
    const Instance inst = example_2x2();
    const Assignment a{{0, 1}, {0, 1}};
    const Move mv{MoveKind::SwapOrigins, 0, 1};
    const double delta = evaluate_move_delta(inst, a, mv);
    const double full = evaluate(inst, apply(a, mv));
    CHECK(full == doctest::Approx(5.0 + delta));
}

TEST_CASE("relocating to an identical distance column is free") {
    Instance inst;
    inst.inbound_doors = 2;
    inst.outbound_doors = 3;
    inst.origins = 1;
    inst.destinations = 1;
    inst.distance = Matrix<double>(2, 3);
    // Columns 0 and 2 identical.
    inst.distance(0, 0) = 4;
    inst.distance(0, 1) = 9;
    inst.distance(0, 2) = 4;
    inst.distance(1, 0) = 7;
    inst.distance(1, 1) = 2;
    inst.distance(1, 2) = 7;
    inst.flow = Matrix<long long>(1, 1, 6);
    const Assignment a{{0}, {0}};
    CHECK(evaluate_move_delta(inst, a, {MoveKind::RelocateDestination, 0, 2}) == 0.0);
}

TEST_CASE("delta consistency on random triples") {
    int tested = 0;
    for (std::uint64_t seed = 1; tested < 1000; ++seed) {
        const Instance inst = random_small(seed);
        const Assignment a = random_assignment(inst, seed ^ 0xABCD);
        const std::vector<Move> moves = enumerate_moves(inst, a);
        if (moves.empty()) continue;
        Rng rng(seed * 31);
        const Move mv = moves[rng.below(moves.size())];
        const double cost = evaluate(inst, a);
        const double delta = evaluate_move_delta(inst, a, mv);
        const double full = evaluate(inst, apply(a, mv));
        CHECK(std::abs(full - (cost + delta)) <= 1e-9 * std::max(1.0, cost));
        ++tested;
    }
}

TEST_CASE("invalid moves are rejected") {
    const Instance inst = example_2x2();
    const Assignment a{{0, 1}, {0, 1}};
    CHECK_THROWS_AS(evaluate_move_delta(inst, a, {MoveKind::SwapOrigins, 0, 2}),
                    std::invalid_argument);
    // Relocation target occupied: both inbound doors are in use.
    CHECK_THROWS_AS(evaluate_move_delta(inst, a, {MoveKind::RelocateOrigin, 0, 1}),
                    std::invalid_argument);
}

TEST_CASE("apply: swaps are involutions, relocations invert") {
    const Instance inst = generate_random(4, 5, 3, 3, 10.0, 5, 9);
    const Assignment a = random_assignment(inst, 4);
    const Move swap{MoveKind::SwapOrigins, 0, 2};
    CHECK(apply(apply(a, swap), swap) == a);

    // Relocate away and back.
    std::vector<char> used(inst.inbound_doors, 0);
    for (int door : a.x) used[door] = 1;
    int empty = 0;
    while (used[empty]) ++empty;
    const Assignment moved = apply(a, {MoveKind::RelocateOrigin, 1, empty});
    CHECK(apply(moved, {MoveKind::RelocateOrigin, 1, a.x[1]}) == a);

    const Assignment b{{0, 1}, {0, 1}};
    CHECK(apply(b, {MoveKind::SwapDestinations, 0, 1}).y == std::vector<int>{1, 0});
}

TEST_CASE("random assignments are injective and deterministic") {
    const Instance inst = generate_random(5, 5, 5, 5, 10.0, 5, 21);
    const Assignment a = random_assignment(inst, 77);
    validate_assignment(inst, a);
    // Square case: x is a permutation of all doors.
    std::vector<int> sorted = a.x;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(random_assignment(inst, 77) == a);
    CHECK(random_assignment(inst, 78) != a);
}

TEST_CASE("random assignments are uniform over ordered selections") {
    // I=3, M=2: 6 ordered door pairs, expect 10000/6 each within 3 sigma.
    const Instance inst = generate_random(3, 1, 2, 1, 10.0, 5, 3);
    std::map<std::pair<int, int>, int> counts;
    const int draws = 10000;
    for (int k = 0; k < draws; ++k) {
        const Assignment a = random_assignment(inst, static_cast<std::uint64_t>(k));
        counts[{a.x[0], a.x[1]}]++;
    }
    CHECK(counts.size() == 6);
    const double expected = draws / 6.0;
    const double sigma = std::sqrt(draws * (1.0 / 6.0) * (5.0 / 6.0));
    for (const auto& [pair, count] : counts) {
        CHECK(count > expected - 3 * sigma);
        CHECK(count < expected + 3 * sigma);
    }
}

TEST_CASE("relabeling origins leaves the objective unchanged") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Instance inst = random_small(seed);
        const Assignment a = random_assignment(inst, seed + 100);
        const double base = evaluate(inst, a);

        // Reverse the origin labels: permute flow rows and x entries together.
        Instance relabeled = inst;
        Assignment permuted = a;
        for (int m = 0; m < inst.origins; ++m) {
            const int src = inst.origins - 1 - m;
            permuted.x[m] = a.x[src];
            for (int n = 0; n < inst.destinations; ++n)
                relabeled.flow(m, n) = inst.flow(src, n);
        }
        CHECK(evaluate(relabeled, permuted) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("scaling distances scales the objective and keeps the argmin set") {
    // Integral distances make the scaling exact in floating point.
    LayoutSpec layout;
    layout.inbound_doors = 4;
    layout.outbound_doors = 4;
    const Instance inst = generate_from_layout(layout, 3, 3, 7, 5);
    Instance scaled = inst;
    for (int i = 0; i < inst.inbound_doors; ++i)
        for (int j = 0; j < inst.outbound_doors; ++j) scaled.distance(i, j) = 3.5 * inst.distance(i, j);

    const auto assignments = testing::all_assignments(inst);
    double best = std::numeric_limits<double>::infinity();
    double best_scaled = std::numeric_limits<double>::infinity();
    for (const Assignment& a : assignments) {
        const double c = evaluate(inst, a);
        const double cs = evaluate(scaled, a);
        CHECK(cs == 3.5 * c);
        best = std::min(best, c);
        best_scaled = std::min(best_scaled, cs);
    }
    for (const Assignment& a : assignments) {
        const bool opt = evaluate(inst, a) == best;
        const bool opt_scaled = evaluate(scaled, a) == best_scaled;
        CHECK(opt == opt_scaled);
    }
}

TEST_CASE("integral instances evaluate to exact integers") {
    const Instance inst = figure1_instance();
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Assignment a = random_assignment(inst, seed);
        CHECK(evaluate(inst, a) == static_cast<double>(testing::integer_cost(inst, a)));
    }
}
