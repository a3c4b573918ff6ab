#include "cdap/simopt.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "cdap/parallel.hpp"

namespace cdap {

void SimOptConfig::validate() const {
    memetic.validate();
    sim.validate();
    if (search_replications < 1) throw std::invalid_argument("search_replications must be at least 1");
    if (final_replications < search_replications)
        throw std::invalid_argument("final_replications must be >= search_replications");
    if (elite_rerank_size < 1) throw std::invalid_argument("elite_rerank_size must be at least 1");
}

namespace {

struct SearchStats {
    double mean = 0.0;
    double dev = 0.0;
};

}  // namespace

SimOptReport solve_simopt(const Instance& inst, const SimOptConfig& cfg, int threads) {
    inst.validate();
    cfg.validate();
    const std::uint64_t master_seed = cfg.memetic.seed;

    // Every distinct candidate the search evaluates, with its search-phase
    // estimate. CRN makes repeated estimates of one assignment identical, so
    // the map is insertion-order independent.
    std::map<Assignment, SearchStats> seen;
    std::mutex seen_mutex;

    FitnessFunction fitness;
    fitness.noisy = true;
    fitness.eval = [&](const Assignment& a, std::uint64_t) {
        const CostEstimate est = estimate_cost(inst, a, cfg.sim, cfg.search_replications, master_seed);
        {
            std::lock_guard<std::mutex> lock(seen_mutex);
            seen.emplace(a, SearchStats{est.mean, est.stddev});
        }
        return est.mean;
    };

    SimOptReport report;
    report.search = solve_memetic(inst, fitness, cfg.memetic, threads);

    // Elite set: best-by-search-mean distinct assignments, ties broken
    // lexicographically (the map iterates in lexicographic order already).
    std::vector<std::pair<Assignment, SearchStats>> ranked(seen.begin(), seen.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& lhs, const auto& rhs) { return lhs.second.mean < rhs.second.mean; });
    const std::size_t elite_size =
        std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(cfg.elite_rerank_size));
    ranked.resize(elite_size);

    report.elite.resize(elite_size);
    parallel_for(elite_size, threads, [&](std::size_t k) {
        EliteCandidate& c = report.elite[k];
        c.assignment = ranked[k].first;
        c.search_mean = ranked[k].second.mean;
        c.search_dev = ranked[k].second.dev;
        const CostEstimate est =
            estimate_cost(inst, c.assignment, cfg.sim, cfg.final_replications, master_seed);
        c.final_mean = est.mean;
        c.final_dev = est.stddev;
    });

    std::stable_sort(report.elite.begin(), report.elite.end(),
                     [](const EliteCandidate& lhs, const EliteCandidate& rhs) {
                         if (lhs.final_mean != rhs.final_mean) return lhs.final_mean < rhs.final_mean;
                         return lhs.assignment < rhs.assignment;
                     });
    report.best = report.elite.front().assignment;
    report.best_cost = report.elite.front().final_mean;
    return report;
}

}  // namespace cdap
