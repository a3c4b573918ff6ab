#include <atomic>
#include <cmath>
#include <set>
#include <sstream>

#include "cdap/exact.hpp"
#include "cdap/memetic.hpp"
#include "cdap/report.hpp"
#include "cdap/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cdap;

namespace {

// d=[[1,5],[5,1]], w=[[2,1],[1,2]]: two optima at 14, two saddles at 22,
// and every saddle has a strictly improving swap into an optimum.
Instance valley_2x2() {
    Instance inst;
    inst.inbound_doors = inst.outbound_doors = inst.origins = inst.destinations = 2;
    inst.distance = Matrix<double>(2, 2);
    inst.distance(0, 0) = 1;
    inst.distance(0, 1) = 5;
    inst.distance(1, 0) = 5;
    inst.distance(1, 1) = 1;
    inst.flow = Matrix<long long>(2, 2);
    inst.flow(0, 0) = 2;
    inst.flow(0, 1) = 1;
    inst.flow(1, 0) = 1;
    inst.flow(1, 1) = 2;
    return inst;
}

MemeticConfig small_config(std::uint64_t seed) {
    MemeticConfig cfg;
    cfg.population_size = 20;
    cfg.generations = 40;
    cfg.stagnation_limit = 15;
    cfg.seed = seed;
    return cfg;
}

std::string report_text(const SolveReport& report) {
    std::ostringstream out;
    write_solve_report(out, "memetic", report);
    return out.str();
}

}  // namespace

TEST_CASE("valley landscape ground truth") {
    const Instance inst = valley_2x2();
    CHECK(evaluate(inst, {{0, 1}, {0, 1}}) == 14.0);
    CHECK(evaluate(inst, {{0, 1}, {1, 0}}) == 22.0);
    CHECK(evaluate(inst, {{1, 0}, {0, 1}}) == 22.0);
    CHECK(evaluate(inst, {{1, 0}, {1, 0}}) == 14.0);
    const ExactResult res = solve_exact(inst);
    CHECK(res.best_cost == 14.0);
    CHECK(res.optima_count == 2);
}

TEST_CASE("local search leaves a global optimum unchanged") {
    const Instance inst = generate_random(4, 4, 3, 3, 10.0, 5, 31);
    const ExactResult exact = solve_exact(inst);
    const FitnessFunction fitness = objective_fitness(inst);
    for (const LocalSearchStyle style :
         {LocalSearchStyle::BestImprovement, LocalSearchStyle::FirstImprovement}) {
        const LocalSearchResult res = local_search(inst, exact.best, fitness, style);
        CHECK(res.assignment == exact.best);
        CHECK(res.moves_taken == 0);
        CHECK(res.cost == exact.best_cost);
    }
}

TEST_CASE("local search descends from the worst valley corner to the optimum") {
    const Instance inst = valley_2x2();
    const FitnessFunction fitness = objective_fitness(inst);
    const Assignment worst{{0, 1}, {1, 0}};
    const LocalSearchResult res =
        local_search(inst, worst, fitness, LocalSearchStyle::BestImprovement);
    CHECK(res.cost == 14.0);
    CHECK(res.moves_taken >= 1);
}

TEST_CASE("flat landscape takes no moves") {
    Instance inst = generate_random(4, 4, 2, 2, 10.0, 5, 6);
    inst.flow = Matrix<long long>(2, 2, 0);
    const FitnessFunction fitness = objective_fitness(inst);
    const Assignment start = random_assignment(inst, 8);
    const LocalSearchResult res =
        local_search(inst, start, fitness, LocalSearchStyle::FirstImprovement);
    CHECK(res.assignment == start);
    CHECK(res.moves_taken == 0);
}

TEST_CASE("local search result is a local optimum of the full neighborhood") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Instance inst = generate_random(5, 5, 4, 4, 10.0, 5, seed);
        const FitnessFunction fitness = objective_fitness(inst);
        const LocalSearchResult res = local_search(inst, random_assignment(inst, seed * 7), fitness,
                                                   LocalSearchStyle::BestImprovement);
        const double tol = 1e-9 * std::max(1.0, res.cost);
        for (const Move& mv : enumerate_moves(inst, res.assignment))
            CHECK(evaluate_move_delta(inst, res.assignment, mv) >= -tol);
    }
}

TEST_CASE("local search takes strictly improving moves only") {
    const Instance inst = generate_random(6, 6, 4, 4, 10.0, 5, 55);
    const FitnessFunction fitness = objective_fitness(inst);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Assignment start = random_assignment(inst, seed);
        const double start_cost = evaluate(inst, start);
        for (const LocalSearchStyle style :
             {LocalSearchStyle::BestImprovement, LocalSearchStyle::FirstImprovement}) {
            const LocalSearchResult res = local_search(inst, start, fitness, style);
            if (res.moves_taken > 0)
                CHECK(res.cost < start_cost);
            else
                CHECK(res.cost == start_cost);
        }
    }
}

TEST_CASE("under a noisy fitness local search screens with exact deltas") {
    const Instance inst = generate_random(5, 5, 3, 3, 10.0, 5, 99);
    // CRN-style noisy evaluator: a fixed assignment-keyed perturbation on top
    // of the travel objective, identical on every call.
    FitnessFunction noisy;
    noisy.noisy = true;
    long long calls = 0;
    noisy.eval = [&](const Assignment& a, std::uint64_t) {
        ++calls;
        std::uint64_t h = 0;
        for (int v : a.x) h = derive_seed(h, static_cast<std::uint64_t>(v));
        for (int v : a.y) h = derive_seed(h, static_cast<std::uint64_t>(v));
        return evaluate(inst, a) + 0.01 * static_cast<double>(h % 97);
    };

    const Assignment start = random_assignment(inst, 4);
    const double start_value = noisy.eval(start, 0);
    const LocalSearchResult res =
        local_search(inst, start, noisy, LocalSearchStyle::BestImprovement);
    CHECK(res.cost <= start_value);  // re-ranking includes the start
    CHECK(res.evaluations <= calls);
    // The returned value is the noisy evaluator's, reproducible under CRN.
    CHECK(res.cost == noisy.eval(res.assignment, 0));
    validate_assignment(inst, res.assignment);
}

TEST_CASE("crossover of identical parents reproduces the parent") {
    const Instance inst = generate_random(6, 5, 4, 3, 10.0, 5, 12);
    const Assignment p = random_assignment(inst, 3);
    CHECK(crossover(inst, p, p, 99) == p);
}

TEST_CASE("crossover children are always feasible") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const Instance inst = generate_random(6, 7, 5, 4, 10.0, 5, seed);
        const Assignment a = random_assignment(inst, seed * 3 + 1);
        const Assignment b = random_assignment(inst, seed * 5 + 2);
        const Assignment child = crossover(inst, a, b, seed);
        validate_assignment(inst, child);
    }
    // Square case: children are permutations because validation forces it.
    const Instance square = generate_random(5, 5, 5, 5, 10.0, 5, 77);
    const Assignment child = crossover(square, random_assignment(square, 1),
                                       random_assignment(square, 2), 3);
    validate_assignment(square, child);
}

TEST_CASE("crossover is deterministic per seed") {
    const Instance inst = generate_random(6, 6, 4, 4, 10.0, 5, 44);
    const Assignment a = random_assignment(inst, 1);
    const Assignment b = random_assignment(inst, 2);
    CHECK(crossover(inst, a, b, 10) == crossover(inst, a, b, 10));
}

TEST_CASE("crossover rejects mismatched parents") {
    const Instance inst = generate_random(4, 4, 3, 3, 10.0, 5, 1);
    const Assignment ok = random_assignment(inst, 1);
    Assignment bad = ok;
    bad.x.pop_back();
    CHECK_THROWS_AS(crossover(inst, ok, bad, 0), std::invalid_argument);
}

TEST_CASE("mutation respects the rate and the feasible move set") {
    const Instance inst = generate_random(4, 4, 3, 3, 10.0, 5, 15);
    const Assignment a = random_assignment(inst, 5);
    CHECK(mutate(inst, a, 0.0, 123) == a);

    Instance point;
    point.inbound_doors = point.outbound_doors = point.origins = point.destinations = 1;
    point.distance = Matrix<double>(1, 1, 2.0);
    point.flow = Matrix<long long>(1, 1, 1);
    const Assignment only{{0}, {0}};
    CHECK(mutate(point, only, 1.0, 9) == only);  // no feasible non-identity move
}

TEST_CASE("mutation at rate 1 eventually uses every move") {
    // I=J=3, M=N=2: one swap per side plus two relocations per side.
    const Instance inst = generate_random(3, 3, 2, 2, 10.0, 5, 20);
    const Assignment a{{0, 1}, {0, 1}};
    const std::vector<Move> moves = enumerate_moves(inst, a);
    REQUIRE(moves.size() == 6);

    std::set<std::pair<int, std::pair<int, int>>> observed;
    std::set<int> kinds;
    for (int k = 0; k < 10000; ++k) {
        const Assignment mutated = mutate(inst, a, 1.0, static_cast<std::uint64_t>(k));
        validate_assignment(inst, mutated);
        CHECK(mutated != a);  // every move changes the assignment
        for (const Move& mv : moves)
            if (apply(a, mv) == mutated) {
                observed.insert({static_cast<int>(mv.kind), {mv.a, mv.b}});
                kinds.insert(static_cast<int>(mv.kind));
            }
    }
    CHECK(observed.size() == 6);  // every concrete move seen
    CHECK(kinds.size() == 4);     // every move variant seen
}

TEST_CASE("solve_memetic on the single-point space returns in generation 0") {
    Instance inst;
    inst.inbound_doors = inst.outbound_doors = inst.origins = inst.destinations = 1;
    inst.distance = Matrix<double>(1, 1, 5.0);
    inst.flow = Matrix<long long>(1, 1, 3);
    const SolveReport report = solve_memetic(inst, objective_fitness(inst), small_config(1));
    CHECK(report.best_cost == 15.0);
    CHECK(report.total_evaluations == 1);
    CHECK(report.history.size() == 1);
    CHECK(report.history[0].generation == 0);
}

TEST_CASE("solve_memetic finds the exact optimum on small instances") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Instance inst = generate_random(5, 5, 4, 4, 10.0, 5, seed);
        const ExactResult exact = solve_exact(inst);
        const SolveReport report =
            solve_memetic(inst, objective_fitness(inst), small_config(seed));
        CHECK(report.best_cost == doctest::Approx(exact.best_cost).epsilon(1e-12));
    }
}

TEST_CASE("history is non-increasing and evaluation counts are monotone") {
    const Instance inst = generate_random(8, 8, 6, 6, 10.0, 5, 5);
    const SolveReport report = solve_memetic(inst, objective_fitness(inst), small_config(2));
    REQUIRE(!report.history.empty());
    for (std::size_t k = 1; k < report.history.size(); ++k) {
        CHECK(report.history[k].best_cost <= report.history[k - 1].best_cost);
        CHECK(report.history[k].evaluations >= report.history[k - 1].evaluations);
    }
    CHECK(report.history.back().evaluations == report.total_evaluations);
    CHECK(report.best_cost == report.history.back().best_cost);
}

TEST_CASE("identical configs give byte-identical reports, at any thread count") {
    const Instance inst = generate_random(7, 6, 5, 4, 10.0, 5, 9);
    const MemeticConfig cfg = small_config(31);
    const SolveReport a = solve_memetic(inst, objective_fitness(inst), cfg, 1);
    const SolveReport b = solve_memetic(inst, objective_fitness(inst), cfg, 1);
    const SolveReport c = solve_memetic(inst, objective_fitness(inst), cfg, 4);
    const SolveReport d = solve_memetic(inst, objective_fitness(inst), cfg, 9);
    CHECK(report_text(a) == report_text(b));
    CHECK(report_text(a) == report_text(c));
    CHECK(report_text(a) == report_text(d));
}

TEST_CASE("every evaluated individual is feasible") {
    const Instance inst = generate_random(6, 5, 4, 3, 10.0, 5, 13);
    std::atomic<long long> checked{0};
    FitnessFunction guarded;
    guarded.noisy = false;
    guarded.eval = [&](const Assignment& a, std::uint64_t) {
        validate_assignment(inst, a);  // throws on any operator bug
        ++checked;
        return evaluate(inst, a);
    };
    const SolveReport report = solve_memetic(inst, guarded, small_config(3), 4);
    CHECK(checked.load() >= report.total_evaluations);
    CHECK(report.total_evaluations > 0);
}

TEST_CASE("with every_offspring the reported best is a local optimum") {
    const Instance inst = generate_random(6, 6, 4, 4, 10.0, 5, 25);
    MemeticConfig cfg = small_config(4);
    cfg.local_search_policy = LocalSearchPolicy::EveryOffspring;
    const SolveReport report = solve_memetic(inst, objective_fitness(inst), cfg);
    const double tol = 1e-9 * std::max(1.0, report.best_cost);
    for (const Move& mv : enumerate_moves(inst, report.best))
        CHECK(evaluate_move_delta(inst, report.best, mv) >= -tol);
}

TEST_CASE("elite_fraction policy also works and stays feasible") {
    const Instance inst = generate_random(6, 6, 5, 5, 10.0, 5, 2);
    MemeticConfig cfg = small_config(8);
    cfg.local_search_policy = LocalSearchPolicy::EliteFraction;
    cfg.elite_fraction = 0.25;
    const SolveReport report = solve_memetic(inst, objective_fitness(inst), cfg);
    validate_assignment(inst, report.best);
    CHECK(report.best_cost >= solve_exact(inst).best_cost);
}

TEST_CASE("evaluation budget is a hard cap") {
    const Instance inst = generate_random(8, 8, 6, 6, 10.0, 5, 41);
    MemeticConfig cfg = small_config(5);
    cfg.max_evaluations = 200;
    const SolveReport report = solve_memetic(inst, objective_fitness(inst), cfg);
    CHECK(report.total_evaluations <= 200);
    CHECK(report.terminated_by == Termination::MaxEvaluations);

    cfg.max_evaluations = 10;  // smaller than the population
    const SolveReport tiny = solve_memetic(inst, objective_fitness(inst), cfg);
    CHECK(tiny.total_evaluations <= 10);
    CHECK(tiny.terminated_by == Termination::MaxEvaluations);
}

TEST_CASE("stagnation terminates the loop") {
    const Instance inst = generate_random(3, 3, 2, 2, 10.0, 5, 18);
    MemeticConfig cfg = small_config(6);
    cfg.generations = 10000;
    cfg.stagnation_limit = 5;
    const SolveReport report = solve_memetic(inst, objective_fitness(inst), cfg);
    CHECK(report.terminated_by == Termination::Stagnation);
    CHECK(static_cast<int>(report.history.size()) < 10000);
}

TEST_CASE("random restart baseline is deterministic and feasible") {
    const Instance inst = generate_random(6, 6, 4, 4, 10.0, 5, 3);
    MemeticConfig cfg = small_config(12);
    cfg.generations = 25;  // restart count
    const SolveReport a = solve_random_restart(inst, objective_fitness(inst), cfg);
    const SolveReport b = solve_random_restart(inst, objective_fitness(inst), cfg);
    CHECK(report_text(a) == report_text(b));
    validate_assignment(inst, a.best);
    // Each restart ends in a local optimum, so the best is one too.
    const double tol = 1e-9 * std::max(1.0, a.best_cost);
    for (const Move& mv : enumerate_moves(inst, a.best))
        CHECK(evaluate_move_delta(inst, a.best, mv) >= -tol);
}

TEST_CASE("config validation rejects bad parameters") {
    MemeticConfig cfg;
    cfg.population_size = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = MemeticConfig{};
    cfg.tournament_size = 100;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = MemeticConfig{};
    cfg.crossover_rate = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = MemeticConfig{};
    cfg.stagnation_limit = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
