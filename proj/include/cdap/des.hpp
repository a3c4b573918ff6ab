#ifndef CDAP_DES_HPP
#define CDAP_DES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cdap/assignment.hpp"
#include "cdap/instance.hpp"

namespace cdap {

// Duration distribution for unload / outbound service times.
struct DurationSpec {
    enum class Kind { None, Constant, Uniform, Exponential };
    Kind kind = Kind::Constant;
    double a = 1.0;  // constant value, uniform lower bound, or mean
    double b = 1.0;  // uniform upper bound

    static DurationSpec none();
    static DurationSpec constant(double value);
    static DurationSpec uniform(double lo, double hi);
    static DurationSpec exponential(double mean);

    bool enabled() const { return kind != Kind::None; }
    void validate(const char* what) const;
    std::string to_string() const;
};

DurationSpec parse_duration_spec(const std::string& text);

enum class ArrivalProcess { Poisson, Schedule };
enum class TripRule { FullRow, SplitEvenly };

// Scheduled trailer arrival; origin is 0-based internally.
struct ArrivalEntry {
    int origin = 0;
    double time = 0.0;
};

// Stochastic scenario parameters. All randomness is keyed to trailer
// identity and the replication seed, never to the assignment, so competing
// assignments see common random numbers.
struct SimConfig {
    ArrivalProcess arrival_process = ArrivalProcess::Poisson;
    double arrival_rate = 0.1;       // per-origin Poisson rate, trailers/time unit
    int trailers_per_origin = 1;     // run length under Poisson arrivals
    std::vector<ArrivalEntry> schedule;  // used when arrival_process == Schedule
    DurationSpec unload_time = DurationSpec::constant(1.0);
    int forklift_count = 1;
    double forklift_speed = 1.0;     // length units per time unit
    TripRule trips_per_trailer = TripRule::FullRow;
    DurationSpec outbound_service_time = DurationSpec::none();  // off by default
    double delay_weight = 1.0;       // cost per unit trailer waiting time
    std::uint64_t seed = 0;          // default master seed for estimation

    void validate() const;
};

// Exogenous realization of one replication: trailers with arrival times,
// unload durations, and per-destination trip counts. Independent of the
// assignment by construction (the CRN guarantee).
struct Trailer {
    int origin = 0;
    double arrival_time = 0.0;
    double unload_duration = 0.0;
    std::vector<long long> trips;  // per destination
    std::vector<double> service_times;  // per spawned trip, when outbound service is on
};

struct Scenario {
    std::vector<Trailer> trailers;  // arrival-time order, stable on ties

    bool operator==(const Scenario& other) const;
};

Scenario realize_scenario(const Instance& inst, const SimConfig& cfg, std::uint64_t replication_seed);

// Replicated run statistics. refined_cost is the simulation's refinement of
// the travel objective: total travel plus delay_weight times trailer waiting.
struct SimResult {
    double loaded_travel_distance = 0.0;  // loaded legs only
    double total_travel_distance = 0.0;   // loaded plus empty return legs
    long long total_trips = 0;
    double total_trailer_waiting_time = 0.0;
    double makespan = 0.0;
    std::vector<double> door_busy_time;  // per inbound door, unassigned doors stay 0
    double refined_cost = 0.0;
};

// Event-driven run to completion of all trips. Deterministic per arguments,
// independent of host machine.
SimResult simulate(const Instance& inst, const Assignment& a, const SimConfig& cfg,
                   std::uint64_t replication_seed);

// Seed of replication r under a master seed; exposed so reports and tests
// can reproduce individual replications.
std::uint64_t replication_seed(std::uint64_t master_seed, int r);

struct CostEstimate {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation, 0 by convention for R=1
    std::vector<double> values;  // per-replication refined costs, in index order
};

std::vector<SimResult> run_replications(const Instance& inst, const Assignment& a,
                                        const SimConfig& cfg, int replications,
                                        std::uint64_t master_seed, int threads = 1);

// Mean and sample deviation of the refined costs, reduced in replication
// order. Identical values report their exact mean and zero deviation.
CostEstimate summarize_costs(const std::vector<SimResult>& results);

CostEstimate estimate_cost(const Instance& inst, const Assignment& a, const SimConfig& cfg,
                           int replications, std::uint64_t master_seed, int threads = 1);

}  // namespace cdap

#endif
