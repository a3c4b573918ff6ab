#ifndef CDAP_MEMETIC_HPP
#define CDAP_MEMETIC_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cdap/assignment.hpp"
#include "cdap/instance.hpp"
#include "cdap/objective.hpp"

namespace cdap {

enum class LocalSearchPolicy { EveryOffspring, EliteFraction };
enum class LocalSearchStyle { FirstImprovement, BestImprovement };
enum class Termination { Generations, MaxEvaluations, Stagnation };

const char* termination_name(Termination t);

// Population-based global search with embedded local search. Defaults give
// a plain baseline; everything is configurable.
struct MemeticConfig {
    int population_size = 50;
    int generations = 200;
    int tournament_size = 3;
    double crossover_rate = 0.9;
    double mutation_rate = 0.2;  // per-individual chance of one random move
    LocalSearchPolicy local_search_policy = LocalSearchPolicy::EveryOffspring;
    double elite_fraction = 0.2;  // share of offspring refined under EliteFraction
    LocalSearchStyle local_search_style = LocalSearchStyle::BestImprovement;
    long long max_evaluations = 1'000'000'000LL;
    int stagnation_limit = 50;
    std::uint64_t seed = 0;

    void validate() const;
};

// Abstract evaluator. Deterministic evaluators must ignore the replication
// seed; noisy ones may use it (or ignore it under common random numbers).
struct FitnessFunction {
    std::function<double(const Assignment&, std::uint64_t replication_seed)> eval;
    bool noisy = false;
};

// Plain travel objective as a fitness (deterministic, seed ignored).
FitnessFunction objective_fitness(const Instance& inst);

struct HistoryEntry {
    int generation = 0;
    double best_cost = 0.0;
    long long evaluations = 0;
};

struct SolveReport {
    Assignment best;
    double best_cost = 0.0;
    std::vector<HistoryEntry> history;  // best-so-far per generation, non-increasing
    long long total_evaluations = 0;
    Termination terminated_by = Termination::Generations;
    std::uint64_t seed = 0;
};

struct LocalSearchResult {
    Assignment assignment;
    double cost = 0.0;
    int moves_taken = 0;
    long long evaluations = 0;  // fitness calls spent
};

// Strict descent over the full move neighborhood (origin/destination swaps
// plus relocations to empty doors), screened with exact move deltas. Under a
// noisy fitness the descent follows the deterministic travel objective and
// the accepted candidates are re-ranked with the noisy evaluator.
LocalSearchResult local_search(const Instance& inst, const Assignment& start,
                               const FitnessFunction& fitness, LocalSearchStyle style);

// Per-side partially-matched recombination extended to injective non-total
// maps; the child is always feasible.
Assignment crossover(const Instance& inst, const Assignment& parent_a, const Assignment& parent_b,
                     std::uint64_t seed);

// With probability rate, applies one uniformly random feasible move.
Assignment mutate(const Instance& inst, const Assignment& a, double rate, std::uint64_t seed);

// Generational loop: tournament selection, crossover, mutation, Lamarckian
// local search, elitism of one. Deterministic given (inst, cfg) for a
// deterministic fitness, for any thread count.
SolveReport solve_memetic(const Instance& inst, const FitnessFunction& fitness,
                          const MemeticConfig& cfg, int threads = 1);

// Baseline: repeated random starts, each refined by local search. Uses
// cfg.generations as the restart count and shares the budget/stagnation
// rules with solve_memetic.
SolveReport solve_random_restart(const Instance& inst, const FitnessFunction& fitness,
                                 const MemeticConfig& cfg);

}  // namespace cdap

#endif
