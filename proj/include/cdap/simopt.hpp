#ifndef CDAP_SIMOPT_HPP
#define CDAP_SIMOPT_HPP

#include "cdap/des.hpp"
#include "cdap/memetic.hpp"

namespace cdap {

struct SimOptConfig {
    MemeticConfig memetic;
    SimConfig sim;
    int search_replications = 5;   // per fitness evaluation during search
    int final_replications = 50;   // for re-ranking the elite set
    int elite_rerank_size = 10;

    void validate() const;
};

struct EliteCandidate {
    Assignment assignment;
    double search_mean = 0.0;
    double search_dev = 0.0;
    double final_mean = 0.0;
    double final_dev = 0.0;
};

// Memetic search report plus the re-ranked elite table. elite[0] is the
// winner by final mean (ties broken lexicographically on the assignment).
struct SimOptReport {
    SolveReport search;
    std::vector<EliteCandidate> elite;
    Assignment best;
    double best_cost = 0.0;  // the winner's final-replication mean
};

// Runs the memetic algorithm against the replication estimator under common
// random numbers (every candidate's replication r shares the same master
// seed), then re-estimates the elite set with final_replications and picks
// the best re-ranked mean.
SimOptReport solve_simopt(const Instance& inst, const SimOptConfig& cfg, int threads = 1);

}  // namespace cdap

#endif
