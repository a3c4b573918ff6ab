#ifndef CDAP_REPORT_HPP
#define CDAP_REPORT_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cdap/des.hpp"
#include "cdap/exact.hpp"
#include "cdap/memetic.hpp"
#include "cdap/simopt.hpp"

namespace cdap {

// Flat key=value solve report; history entries follow as bare
// "generation best_cost evaluations" lines after a "history:" marker.
void write_solve_report(std::ostream& out, const std::string& method, const SolveReport& report);

// Exact solves have no history; they report the enumeration counts instead.
void write_exact_report(std::ostream& out, const ExactResult& result);

void write_simopt_report(std::ostream& out, const SimOptReport& report);

// Elite table CSV: rank,X,Y,search_mean,search_dev,final_mean,final_dev.
// X and Y are space-separated 1-based door lists.
void write_elite_csv(std::ostream& out, const std::vector<EliteCandidate>& elite);

// Per-replication records (rep=..., then one key per SimResult field,
// door_busy_time_<door> per inbound door) followed by a summary block.
void write_sim_records(std::ostream& out, const std::vector<SimResult>& results,
                       const CostEstimate& estimate, std::uint64_t master_seed);

// One row per replication:
// replication,seed,loaded_travel_distance,total_travel_distance,total_trips,
// total_trailer_waiting_time,makespan,refined_cost
void write_sim_csv(std::ostream& out, const std::vector<SimResult>& results,
                   std::uint64_t master_seed);

// Everything needed to reproduce a run byte-for-byte: subcommand, artifact
// version, instance reference, and all resolved config values. Output paths
// and thread counts are deliberately absent (they never affect results), so
// a manifest can be replayed via --config into any directory.
struct RunManifest {
    std::string subcommand;
    std::string instance_path;   // as given on the command line; empty for generate
    std::string instance_checksum;
    std::vector<std::pair<std::string, std::string>> entries;
    std::vector<ArrivalEntry> schedule;  // bare lines, emitted after the entries
};

void write_manifest(std::ostream& out, const RunManifest& manifest);

}  // namespace cdap

#endif
