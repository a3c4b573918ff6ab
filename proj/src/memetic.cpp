#include "cdap/memetic.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <stdexcept>

#include "cdap/errors.hpp"
#include "cdap/exact.hpp"
#include "cdap/parallel.hpp"
#include "cdap/rng.hpp"

namespace cdap {

namespace {

constexpr std::uint64_t kTagInit = 0x1A17;
constexpr std::uint64_t kTagOffspring = 0x0FF5;
constexpr std::uint64_t kTagEval = 0xE7A1;
constexpr std::uint64_t kTagRestart = 0x7357;

}  // namespace

const char* termination_name(Termination t) {
    switch (t) {
        case Termination::Generations: return "generations";
        case Termination::MaxEvaluations: return "max_evaluations";
        case Termination::Stagnation: return "stagnation";
    }
    return "?";
}

void MemeticConfig::validate() const {
    if (population_size < 2) throw std::invalid_argument("population_size must be at least 2");
    if (generations < 1) throw std::invalid_argument("generations must be at least 1");
    if (tournament_size < 1 || tournament_size > population_size)
        throw std::invalid_argument("tournament_size must be in [1, population_size]");
    if (crossover_rate < 0.0 || crossover_rate > 1.0)
        throw std::invalid_argument("crossover_rate must be in [0, 1]");
    if (mutation_rate < 0.0 || mutation_rate > 1.0)
        throw std::invalid_argument("mutation_rate must be in [0, 1]");
    if (elite_fraction < 0.0 || elite_fraction > 1.0)
        throw std::invalid_argument("elite_fraction must be in [0, 1]");
    if (max_evaluations < 1) throw std::invalid_argument("max_evaluations must be at least 1");
    if (stagnation_limit < 1) throw std::invalid_argument("stagnation_limit must be at least 1");
}

FitnessFunction objective_fitness(const Instance& inst) {
    const Instance* p = &inst;
    FitnessFunction f;
    f.eval = [p](const Assignment& a, std::uint64_t) { return evaluate(*p, a); };
    f.noisy = false;
    return f;
}

namespace {

// Strictly-improving move found by delta screening, or none.
struct ScreenedMove {
    bool found = false;
    Move move;
};

ScreenedMove screen_moves(const Instance& inst, const Assignment& a, LocalSearchStyle style) {
    ScreenedMove out;
    double best_delta = 0.0;
    for (const Move& mv : enumerate_moves(inst, a)) {
        const double delta = evaluate_move_delta(inst, a, mv);
        if (delta < best_delta) {
            out.found = true;
            out.move = mv;
            best_delta = delta;
            if (style == LocalSearchStyle::FirstImprovement) break;
        }
    }
    return out;
}

// Descent with a known start cost. Counts only fitness calls; delta
// screening is free. max_evals caps the fitness calls this run may spend.
LocalSearchResult local_search_impl(const Instance& inst, const Assignment& start, double start_cost,
                                    const FitnessFunction& fitness, LocalSearchStyle style,
                                    std::uint64_t eval_seed_base, long long max_evals) {
    LocalSearchResult res;
    res.assignment = start;
    res.cost = start_cost;

    if (!fitness.noisy) {
        while (res.evaluations < max_evals) {
            const ScreenedMove screened = screen_moves(inst, res.assignment, style);
            if (!screened.found) break;
            const Assignment candidate = apply(res.assignment, screened.move);
            const double cost =
                fitness.eval(candidate, derive_seed(eval_seed_base, kTagEval, res.evaluations));
            ++res.evaluations;
            if (!(cost < res.cost)) break;  // screen and full evaluation disagree: stop
            res.assignment = candidate;
            res.cost = cost;
            ++res.moves_taken;
        }
        return res;
    }

    // Noisy fitness: descend on the deterministic travel objective, then
    // re-rank the accepted candidates with the noisy evaluator.
    std::vector<Assignment> trajectory;
    Assignment current = start;
    double surrogate = evaluate(inst, current);
    while (true) {
        const ScreenedMove screened = screen_moves(inst, current, style);
        if (!screened.found) break;
        const Assignment candidate = apply(current, screened.move);
        const double cand_surrogate = evaluate(inst, candidate);
        if (!(cand_surrogate < surrogate)) break;
        current = candidate;
        surrogate = cand_surrogate;
        trajectory.push_back(candidate);
    }
    for (std::size_t t = 0; t < trajectory.size(); ++t) {
        if (res.evaluations >= max_evals) break;
        const double value =
            fitness.eval(trajectory[t], derive_seed(eval_seed_base, kTagEval, res.evaluations));
        ++res.evaluations;
        ++res.moves_taken;
        if (value < res.cost) {
            res.assignment = trajectory[t];
            res.cost = value;
        }
    }
    return res;
}

struct Individual {
    Assignment a;
    double cost = 0.0;
};

bool better(const Individual& lhs, const Individual& rhs) {
    if (lhs.cost != rhs.cost) return lhs.cost < rhs.cost;
    return lhs.a < rhs.a;
}

std::size_t best_index(const std::vector<Individual>& pop) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i)
        if (better(pop[i], pop[best])) best = i;
    return best;
}

// Slots refined by local search under the configured policy, ascending.
std::vector<std::size_t> local_search_slots(const std::vector<Individual>& group,
                                            const MemeticConfig& cfg) {
    std::vector<std::size_t> slots(group.size());
    for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i;
    if (cfg.local_search_policy == LocalSearchPolicy::EveryOffspring) return slots;

    const std::size_t take = static_cast<std::size_t>(
        std::min<double>(group.size(), std::ceil(cfg.elite_fraction * group.size())));
    std::sort(slots.begin(), slots.end(), [&](std::size_t lhs, std::size_t rhs) {
        if (group[lhs].cost != group[rhs].cost) return group[lhs].cost < group[rhs].cost;
        if (group[lhs].a != group[rhs].a) return group[lhs].a < group[rhs].a;
        return lhs < rhs;
    });
    slots.resize(take);
    std::sort(slots.begin(), slots.end());
    return slots;
}

}  // namespace

LocalSearchResult local_search(const Instance& inst, const Assignment& start,
                               const FitnessFunction& fitness, LocalSearchStyle style) {
    validate_assignment(inst, start);
    const double start_cost = fitness.eval(start, derive_seed(0x57A7, kTagEval, 0));
    LocalSearchResult res = local_search_impl(inst, start, start_cost, fitness, style, 0, LLONG_MAX);
    ++res.evaluations;  // the start evaluation above
    return res;
}

namespace {

// PMX-style recombination of one side, extended to injective maps that need
// not cover all doors: segment from a, fill from b skipping duplicates, then
// from a, then lowest unused doors.
std::vector<int> recombine_side(const std::vector<int>& a, const std::vector<int>& b, int doors,
                                Rng& rng) {
    const int k = static_cast<int>(a.size());
    std::vector<int> child(k, -1);
    std::vector<char> used(doors, 0);

    int lo = static_cast<int>(rng.below(k));
    int hi = static_cast<int>(rng.below(k));
    if (lo > hi) std::swap(lo, hi);
    for (int m = lo; m <= hi; ++m) {
        child[m] = a[m];
        used[a[m]] = 1;
    }
    for (int m = 0; m < k; ++m) {
        if (child[m] >= 0) continue;
        if (!used[b[m]]) {
            child[m] = b[m];
            used[b[m]] = 1;
        }
    }
    for (int m = 0; m < k; ++m) {
        if (child[m] >= 0) continue;
        if (!used[a[m]]) {
            child[m] = a[m];
            used[a[m]] = 1;
        }
    }
    for (int m = 0; m < k; ++m) {
        if (child[m] >= 0) continue;
        int door = 0;
        while (used[door]) ++door;
        child[m] = door;
        used[door] = 1;
    }
    return child;
}

}  // namespace

Assignment crossover(const Instance& inst, const Assignment& parent_a, const Assignment& parent_b,
                     std::uint64_t seed) {
    const std::size_t M = static_cast<std::size_t>(inst.origins);
    const std::size_t N = static_cast<std::size_t>(inst.destinations);
    if (parent_a.x.size() != M || parent_b.x.size() != M || parent_a.y.size() != N ||
        parent_b.y.size() != N)
        throw std::invalid_argument("crossover parents have mismatched dimensions");

    Rng rng(derive_seed(seed, 0xC505));
    Assignment child;
    child.x = recombine_side(parent_a.x, parent_b.x, inst.inbound_doors, rng);
    child.y = recombine_side(parent_a.y, parent_b.y, inst.outbound_doors, rng);
    return child;
}

Assignment mutate(const Instance& inst, const Assignment& a, double rate, std::uint64_t seed) {
    if (rate < 0.0 || rate > 1.0) throw std::invalid_argument("mutation rate must be in [0, 1]");
    Rng rng(derive_seed(seed, 0x307A7E));
    if (!rng.bernoulli(rate)) return a;
    const std::vector<Move> moves = enumerate_moves(inst, a);
    if (moves.empty()) return a;
    return apply(a, moves[rng.below(moves.size())]);
}

SolveReport solve_memetic(const Instance& inst, const FitnessFunction& fitness,
                          const MemeticConfig& cfg, int threads) {
    inst.validate();
    cfg.validate();

    SolveReport report;
    report.seed = cfg.seed;

    auto eval_seed = [&](std::uint64_t generation, std::uint64_t slot) {
        return derive_seed(cfg.seed, kTagEval, generation, slot);
    };

    // Single feasible point: report it without running the loop.
    if (falling_factorial(inst.inbound_doors, inst.origins) == 1 &&
        falling_factorial(inst.outbound_doors, inst.destinations) == 1) {
        Individual only;
        only.a = random_assignment(inst, derive_seed(cfg.seed, kTagInit, 0));
        only.cost = fitness.eval(only.a, eval_seed(0, 0));
        report.best = only.a;
        report.best_cost = only.cost;
        report.total_evaluations = 1;
        report.history.push_back({0, only.cost, 1});
        report.terminated_by = Termination::Generations;
        return report;
    }

    const std::size_t pop_size = static_cast<std::size_t>(cfg.population_size);
    long long total_evals = 0;
    bool budget_hit = false;

    // Applies accepted local-search refinements in slot order until the
    // evaluation budget runs out; later refinements are discarded so the
    // outcome is identical for any thread count.
    auto reconcile = [&](std::vector<Individual>& group, const std::vector<std::size_t>& slots,
                         const std::vector<LocalSearchResult>& refined) {
        for (std::size_t s = 0; s < slots.size(); ++s) {
            if (total_evals + refined[s].evaluations > cfg.max_evaluations) {
                budget_hit = true;
                return;
            }
            total_evals += refined[s].evaluations;
            group[slots[s]].a = refined[s].assignment;
            group[slots[s]].cost = refined[s].cost;
        }
    };

    auto run_local_search = [&](std::vector<Individual>& group, std::uint64_t generation) {
        const std::vector<std::size_t> slots = local_search_slots(group, cfg);
        std::vector<LocalSearchResult> refined(slots.size());
        parallel_for(slots.size(), threads, [&](std::size_t s) {
            const Individual& ind = group[slots[s]];
            refined[s] = local_search_impl(inst, ind.a, ind.cost, fitness, cfg.local_search_style,
                                           derive_seed(cfg.seed, kTagEval, generation, slots[s], 1),
                                           LLONG_MAX);
        });
        reconcile(group, slots, refined);
    };

    // Initial population.
    std::vector<Individual> pop(pop_size);
    const std::size_t eval_now =
        static_cast<std::size_t>(std::min<long long>(pop_size, cfg.max_evaluations));
    parallel_for(pop_size, threads, [&](std::size_t i) {
        pop[i].a = random_assignment(inst, derive_seed(cfg.seed, kTagInit, i));
        if (i < eval_now) pop[i].cost = fitness.eval(pop[i].a, eval_seed(0, i));
    });
    total_evals += static_cast<long long>(eval_now);
    if (eval_now < pop_size) {
        pop.resize(eval_now);
        budget_hit = true;
    } else {
        run_local_search(pop, 0);
    }

    Individual best = pop[best_index(pop)];
    report.history.push_back({0, best.cost, total_evals});

    int stagnant = 0;
    int generation = 0;
    Termination reason = Termination::Generations;

    if (budget_hit) {
        reason = Termination::MaxEvaluations;
    } else {
        while (generation < cfg.generations) {
            if (stagnant >= cfg.stagnation_limit) {
                reason = Termination::Stagnation;
                break;
            }
            const std::size_t offspring_count = pop_size - 1;
            if (total_evals + static_cast<long long>(offspring_count) > cfg.max_evaluations) {
                reason = Termination::MaxEvaluations;
                break;
            }
            ++generation;

            const Individual elite = pop[best_index(pop)];
            std::vector<Individual> offspring(offspring_count);
            parallel_for(offspring_count, threads, [&](std::size_t k) {
                Rng rng(derive_seed(cfg.seed, kTagOffspring, generation, k));
                auto tournament = [&]() -> const Individual& {
                    std::size_t winner = static_cast<std::size_t>(rng.below(pop.size()));
                    for (int t = 1; t < cfg.tournament_size; ++t) {
                        const std::size_t challenger = static_cast<std::size_t>(rng.below(pop.size()));
                        if (better(pop[challenger], pop[winner])) winner = challenger;
                    }
                    return pop[winner];
                };
                const Individual& parent_a = tournament();
                const Individual& parent_b = tournament();
                Assignment child = rng.bernoulli(cfg.crossover_rate)
                                       ? crossover(inst, parent_a.a, parent_b.a, rng.next_u64())
                                       : parent_a.a;
                child = mutate(inst, child, cfg.mutation_rate, rng.next_u64());
                offspring[k].a = std::move(child);
                offspring[k].cost = fitness.eval(offspring[k].a, eval_seed(generation, k));
            });
            total_evals += static_cast<long long>(offspring_count);

            run_local_search(offspring, static_cast<std::uint64_t>(generation));

            pop.clear();
            pop.push_back(elite);
            for (auto& child : offspring) pop.push_back(std::move(child));

            const Individual& generation_best = pop[best_index(pop)];
            if (better(generation_best, best)) {
                best = generation_best;
                stagnant = 0;
            } else {
                ++stagnant;
            }
            report.history.push_back({generation, best.cost, total_evals});

            if (budget_hit) {
                reason = Termination::MaxEvaluations;
                break;
            }
        }
    }

    report.best = best.a;
    report.best_cost = best.cost;
    report.total_evaluations = total_evals;
    report.terminated_by = reason;
    return report;
}

SolveReport solve_random_restart(const Instance& inst, const FitnessFunction& fitness,
                                 const MemeticConfig& cfg) {
    inst.validate();
    cfg.validate();

    SolveReport report;
    report.seed = cfg.seed;

    long long total_evals = 0;
    bool have_best = false;
    Individual best;
    int stagnant = 0;
    Termination reason = Termination::Generations;

    for (int r = 0; r < cfg.generations; ++r) {
        if (stagnant >= cfg.stagnation_limit) {
            reason = Termination::Stagnation;
            break;
        }
        if (total_evals + 1 > cfg.max_evaluations) {
            reason = Termination::MaxEvaluations;
            break;
        }
        Individual start;
        start.a = random_assignment(inst, derive_seed(cfg.seed, kTagRestart, r));
        start.cost = fitness.eval(start.a, derive_seed(cfg.seed, kTagEval, r, 0));
        ++total_evals;

        const LocalSearchResult refined =
            local_search_impl(inst, start.a, start.cost, fitness, cfg.local_search_style,
                              derive_seed(cfg.seed, kTagEval, r, 1),
                              cfg.max_evaluations - total_evals);
        total_evals += refined.evaluations;

        const Individual candidate{refined.assignment, refined.cost};
        if (!have_best || better(candidate, best)) {
            best = candidate;
            have_best = true;
            stagnant = 0;
        } else {
            ++stagnant;
        }
        report.history.push_back({r, best.cost, total_evals});

        if (total_evals >= cfg.max_evaluations) {
            reason = Termination::MaxEvaluations;
            break;
        }
    }

    report.best = best.a;
    report.best_cost = best.cost;
    report.total_evaluations = total_evals;
    report.terminated_by = reason;
    return report;
}

}  // namespace cdap
