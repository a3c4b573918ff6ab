#include "cdap/report.hpp"

#include <ostream>

#include "cdap/exact.hpp"
#include "cdap/text.hpp"
#include "cdap/version.hpp"

namespace cdap {

namespace {

std::string door_list(const std::vector<int>& doors) {
    std::string out;
    for (std::size_t k = 0; k < doors.size(); ++k) {
        if (k) out += ' ';
        out += std::to_string(doors[k] + 1);
    }
    return out;
}

}  // namespace

void write_solve_report(std::ostream& out, const std::string& method, const SolveReport& report) {
    out << "method=" << method << '\n';
    out << "best_cost=" << format_real17(report.best_cost) << '\n';
    out << "best_x=" << door_list(report.best.x) << '\n';
    out << "best_y=" << door_list(report.best.y) << '\n';
    out << "total_evaluations=" << report.total_evaluations << '\n';
    out << "terminated_by=" << termination_name(report.terminated_by) << '\n';
    out << "seed=" << report.seed << '\n';
    out << "history:\n";
    for (const HistoryEntry& h : report.history)
        out << h.generation << ' ' << format_real17(h.best_cost) << ' ' << h.evaluations << '\n';
}

void write_exact_report(std::ostream& out, const ExactResult& result) {
    out << "method=exact\n";
    out << "best_cost=" << format_real17(result.best_cost) << '\n';
    out << "best_x=" << door_list(result.best.x) << '\n';
    out << "best_y=" << door_list(result.best.y) << '\n';
    out << "num_evaluated=" << result.num_evaluated << '\n';
    out << "optima_count=" << result.optima_count << '\n';
}

void write_simopt_report(std::ostream& out, const SimOptReport& report) {
    out << "method=simopt\n";
    out << "best_cost=" << format_real17(report.best_cost) << '\n';
    out << "best_x=" << door_list(report.best.x) << '\n';
    out << "best_y=" << door_list(report.best.y) << '\n';
    out << "search_best_cost=" << format_real17(report.search.best_cost) << '\n';
    out << "search_total_evaluations=" << report.search.total_evaluations << '\n';
    out << "search_terminated_by=" << termination_name(report.search.terminated_by) << '\n';
    out << "seed=" << report.search.seed << '\n';
    out << "elite_size=" << report.elite.size() << '\n';
    out << "history:\n";
    for (const HistoryEntry& h : report.search.history)
        out << h.generation << ' ' << format_real17(h.best_cost) << ' ' << h.evaluations << '\n';
}

void write_elite_csv(std::ostream& out, const std::vector<EliteCandidate>& elite) {
    out << "rank,X,Y,search_mean,search_dev,final_mean,final_dev\n";
    for (std::size_t k = 0; k < elite.size(); ++k) {
        const EliteCandidate& c = elite[k];
        out << k + 1 << ',' << door_list(c.assignment.x) << ',' << door_list(c.assignment.y) << ','
            << format_real17(c.search_mean) << ',' << format_real17(c.search_dev) << ','
            << format_real17(c.final_mean) << ',' << format_real17(c.final_dev) << '\n';
    }
}

void write_sim_records(std::ostream& out, const std::vector<SimResult>& results,
                       const CostEstimate& estimate, std::uint64_t master_seed) {
    for (std::size_t r = 0; r < results.size(); ++r) {
        const SimResult& res = results[r];
        out << "rep=" << r + 1 << '\n';
        out << "seed=" << replication_seed(master_seed, static_cast<int>(r)) << '\n';
        out << "loaded_travel_distance=" << format_real17(res.loaded_travel_distance) << '\n';
        out << "total_travel_distance=" << format_real17(res.total_travel_distance) << '\n';
        out << "total_trips=" << res.total_trips << '\n';
        out << "total_trailer_waiting_time=" << format_real17(res.total_trailer_waiting_time) << '\n';
        out << "makespan=" << format_real17(res.makespan) << '\n';
        for (std::size_t door = 0; door < res.door_busy_time.size(); ++door)
            out << "door_busy_time_" << door + 1 << '=' << format_real17(res.door_busy_time[door])
                << '\n';
        out << "refined_cost=" << format_real17(res.refined_cost) << '\n';
        out << '\n';
    }
    out << "replications=" << results.size() << '\n';
    out << "refined_cost_mean=" << format_real17(estimate.mean) << '\n';
    out << "refined_cost_stddev=" << format_real17(estimate.stddev) << '\n';
}

void write_sim_csv(std::ostream& out, const std::vector<SimResult>& results,
                   std::uint64_t master_seed) {
    out << "replication,seed,loaded_travel_distance,total_travel_distance,total_trips,"
           "total_trailer_waiting_time,makespan,refined_cost\n";
    for (std::size_t r = 0; r < results.size(); ++r) {
        const SimResult& res = results[r];
        out << r + 1 << ',' << replication_seed(master_seed, static_cast<int>(r)) << ','
            << format_real17(res.loaded_travel_distance) << ','
            << format_real17(res.total_travel_distance) << ',' << res.total_trips << ','
            << format_real17(res.total_trailer_waiting_time) << ',' << format_real17(res.makespan)
            << ',' << format_real17(res.refined_cost) << '\n';
    }
}

void write_manifest(std::ostream& out, const RunManifest& manifest) {
    out << "run.subcommand=" << manifest.subcommand << '\n';
    out << "run.artifact_version=" << kVersion << '\n';
    if (!manifest.instance_path.empty()) out << "run.instance=" << manifest.instance_path << '\n';
    if (!manifest.instance_checksum.empty())
        out << "run.instance_checksum=" << manifest.instance_checksum << '\n';
    for (const auto& [key, value] : manifest.entries) out << key << '=' << value << '\n';
    for (const ArrivalEntry& e : manifest.schedule)
        out << e.origin + 1 << ' ' << format_real17(e.time) << '\n';
}

}  // namespace cdap
