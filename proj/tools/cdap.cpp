// Command-line surface: generate instances, solve assignments, simulate
// freight flow, and run simulation optimization, all reproducibly seeded.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cdap/config.hpp"
#include "cdap/errors.hpp"
#include "cdap/exact.hpp"
#include "cdap/instance.hpp"
#include "cdap/report.hpp"
#include "cdap/text.hpp"
#include "cdap/version.hpp"

namespace fs = std::filesystem;
using namespace cdap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRefused = 3;
constexpr int kExitParse = 4;

struct CommonOpts {
    std::string out_dir;
    std::string config_path;
    std::string instance_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool strict = false;
    int threads = 1;
    bool show_config = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_instance) {
    cmd->add_option("--out", opts.out_dir, "Output directory (created if missing)");
    cmd->add_option("--config", opts.config_path, "key=value config file (a manifest replays)");
    if (with_instance) cmd->add_option("--instance", opts.instance_path, "Instance file (CDAP format)");
    cmd->add_option("--seed", opts.seed, "Master seed; absent seeds draw from entropy")
        ->each([&opts](const std::string&) { opts.seed_given = true; });
    cmd->add_option("--threads", opts.threads, "Worker threads (results are thread-count independent)")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--strict", opts.strict, "Refuse to run without an explicit seed");
    cmd->add_flag("--show-config", opts.show_config, "Print the resolved configuration and exit");
}

// Reads the config file (if any) and strips the replay header.
KeyValueFile load_config(const CommonOpts& opts, const std::string& subcommand,
                         std::string* instance_from_config, std::string* assignment_from_config,
                         std::string* checksum_from_config) {
    KeyValueFile kv;
    if (opts.config_path.empty()) return kv;
    kv = parse_key_value_file(opts.config_path);
    if (const std::string* sub = kv.find("run.subcommand")) {
        if (*sub != subcommand)
            throw ParseError(0, "config was recorded for subcommand '" + *sub + "', not '" +
                                    subcommand + "'");
    }
    kv.find("run.artifact_version");
    if (const std::string* path = kv.find("run.instance"))
        if (instance_from_config) *instance_from_config = *path;
    if (const std::string* path = kv.find("run.assignment"))
        if (assignment_from_config) *assignment_from_config = *path;
    if (const std::string* sum = kv.find("run.instance_checksum"))
        if (checksum_from_config) *checksum_from_config = *sum;
    return kv;
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

// Flag wins over config file; otherwise entropy unless --strict.
std::uint64_t resolve_seed(const CommonOpts& opts, bool config_had_seed, std::uint64_t config_seed) {
    if (opts.seed_given) return opts.seed;
    if (config_had_seed) return config_seed;
    if (opts.strict) throw std::invalid_argument("--strict requires an explicit --seed");
    return entropy_seed();
}

fs::path ensure_out_dir(const CommonOpts& opts) {
    if (opts.out_dir.empty()) throw std::invalid_argument("--out is required");
    fs::path dir(opts.out_dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

void print_entries(const std::vector<std::pair<std::string, std::string>>& entries) {
    for (const auto& [key, value] : entries) std::cout << key << '=' << value << '\n';
}

Instance load_instance(const std::string& path, const std::string& expected_checksum) {
    if (path.empty()) throw std::invalid_argument("--instance is required");
    Instance inst = read_instance_file(path);
    if (!expected_checksum.empty()) {
        const std::string actual = instance_checksum(inst);
        if (actual != expected_checksum)
            throw ParseError(0, "instance checksum " + actual + " does not match manifest value " +
                                    expected_checksum);
    }
    if (inst.zero_flow())
        std::cerr << "note: instance has zero flow everywhere; every assignment costs 0\n";
    return inst;
}

// ---------------------------------------------------------------- generate

struct GenerateOpts {
    CommonOpts common;
    bool random = false;
    bool figure1 = false;
    bool layout = false;
    int I = 0, J = 0, M = 0, N = 0;
    bool m_given = false, n_given = false;
    double max_distance = 10.0;
    long long max_flow = 5;
    double pitch = 1.0;
    double width = 3.0;
    int inbound_doors = 0, outbound_doors = 0, open_doors = 0;
    std::string inbound_side = "south", outbound_side = "north";
};

int run_generate(GenerateOpts& g) {
    const KeyValueFile kv = load_config(g.common, "generate", nullptr, nullptr, nullptr);

    std::string mode;
    if (const std::string* v = kv.find("generate.mode")) mode = *v;
    if (g.random) mode = "random";
    if (g.figure1) mode = "figure1";
    if (g.layout) mode = "layout";
    if (mode.empty())
        throw std::invalid_argument("choose a mode: --random, --figure1, or --layout");

    auto take_int = [&](const char* key, int& value) {
        if (const std::string* v = kv.find(std::string("generate.") + key))
            value = static_cast<int>(parse_int_value(*v, key));
    };
    auto take_ll = [&](const char* key, long long& value) {
        if (const std::string* v = kv.find(std::string("generate.") + key))
            value = parse_int_value(*v, key);
    };
    auto take_real = [&](const char* key, double& value) {
        if (const std::string* v = kv.find(std::string("generate.") + key))
            value = parse_real_value(*v, key);
    };

    // Config file first, explicit flags on top.
    GenerateOpts from_file = g;
    take_int("I", from_file.I);
    take_int("J", from_file.J);
    if (const std::string* v = kv.find("generate.M")) {
        from_file.M = static_cast<int>(parse_int_value(*v, "M"));
        from_file.m_given = true;
    }
    if (const std::string* v = kv.find("generate.N")) {
        from_file.N = static_cast<int>(parse_int_value(*v, "N"));
        from_file.n_given = true;
    }
    take_real("max_distance", from_file.max_distance);
    take_ll("max_flow", from_file.max_flow);
    take_real("pitch", from_file.pitch);
    take_real("width", from_file.width);
    take_int("inbound_doors", from_file.inbound_doors);
    take_int("outbound_doors", from_file.outbound_doors);
    take_int("open_doors", from_file.open_doors);
    if (const std::string* v = kv.find("generate.inbound_side")) from_file.inbound_side = *v;
    if (const std::string* v = kv.find("generate.outbound_side")) from_file.outbound_side = *v;
    // Explicit flags already live in g; merge: flags that were not passed keep
    // the file values.
    from_file.common = g.common;
    if (g.I) from_file.I = g.I;
    if (g.J) from_file.J = g.J;
    if (g.m_given) { from_file.M = g.M; from_file.m_given = true; }
    if (g.n_given) { from_file.N = g.N; from_file.n_given = true; }
    if (g.max_distance != 10.0) from_file.max_distance = g.max_distance;
    if (g.max_flow != 5) from_file.max_flow = g.max_flow;
    if (g.pitch != 1.0) from_file.pitch = g.pitch;
    if (g.width != 3.0) from_file.width = g.width;
    if (g.inbound_doors) from_file.inbound_doors = g.inbound_doors;
    if (g.outbound_doors) from_file.outbound_doors = g.outbound_doors;
    if (g.open_doors) from_file.open_doors = g.open_doors;
    if (g.inbound_side != "south") from_file.inbound_side = g.inbound_side;
    if (g.outbound_side != "north") from_file.outbound_side = g.outbound_side;
    GenerateOpts& r = from_file;

    bool config_had_seed = false;
    std::uint64_t config_seed = 0;
    if (const std::string* v = kv.find("generate.seed")) {
        config_had_seed = true;
        config_seed = parse_uint_value(*v, "seed");
    }
    kv.check_all_consumed();
    const std::uint64_t seed = resolve_seed(g.common, config_had_seed, config_seed);

    RunManifest manifest;
    manifest.subcommand = "generate";
    manifest.entries.emplace_back("generate.mode", mode);
    manifest.entries.emplace_back("generate.seed", std::to_string(seed));

    Instance inst;
    if (mode == "random") {
        if (r.I < 1 || r.J < 1) throw std::invalid_argument("--random needs -I and -J");
        if (!r.m_given) r.M = r.I;
        if (!r.n_given) r.N = r.J;
        inst = generate_random(r.I, r.J, r.M, r.N, r.max_distance, r.max_flow, seed);
        manifest.entries.emplace_back("generate.I", std::to_string(r.I));
        manifest.entries.emplace_back("generate.J", std::to_string(r.J));
        manifest.entries.emplace_back("generate.M", std::to_string(r.M));
        manifest.entries.emplace_back("generate.N", std::to_string(r.N));
        manifest.entries.emplace_back("generate.max_distance", format_real17(r.max_distance));
        manifest.entries.emplace_back("generate.max_flow", std::to_string(r.max_flow));
    } else {
        LayoutSpec layout;
        if (mode == "figure1") {
            layout = figure1_layout();
            if (!r.m_given) r.M = 6;
            if (!r.n_given) r.N = 9;
        } else {
            if (r.inbound_doors < 1 || r.outbound_doors < 1)
                throw std::invalid_argument("--layout needs --inbound-doors and --outbound-doors");
            layout.door_pitch = r.pitch;
            layout.dock_width = r.width;
            layout.inbound_doors = r.inbound_doors;
            layout.outbound_doors = r.outbound_doors;
            layout.open_doors = r.open_doors;
            layout.inbound_side = parse_wall(r.inbound_side);
            layout.outbound_side = parse_wall(r.outbound_side);
            if (!r.m_given) r.M = layout.inbound_doors;
            if (!r.n_given) r.N = layout.outbound_doors;
            manifest.entries.emplace_back("generate.pitch", format_real17(layout.door_pitch));
            manifest.entries.emplace_back("generate.width", format_real17(layout.dock_width));
            manifest.entries.emplace_back("generate.inbound_doors", std::to_string(layout.inbound_doors));
            manifest.entries.emplace_back("generate.outbound_doors",
                                          std::to_string(layout.outbound_doors));
            manifest.entries.emplace_back("generate.open_doors", std::to_string(layout.open_doors));
            manifest.entries.emplace_back("generate.inbound_side", wall_name(layout.inbound_side));
            manifest.entries.emplace_back("generate.outbound_side", wall_name(layout.outbound_side));
        }
        inst = generate_from_layout(layout, r.M, r.N, seed, r.max_flow);
        manifest.entries.emplace_back("generate.M", std::to_string(r.M));
        manifest.entries.emplace_back("generate.N", std::to_string(r.N));
        manifest.entries.emplace_back("generate.max_flow", std::to_string(r.max_flow));
    }

    if (g.common.show_config) {
        print_entries(manifest.entries);
        return kExitOk;
    }

    manifest.instance_checksum = instance_checksum(inst);
    const fs::path dir = ensure_out_dir(g.common);
    {
        std::ostringstream text;
        write_instance(text, inst);
        write_file(dir / "instance.cdap", text.str());
    }
    {
        std::ostringstream text;
        write_manifest(text, manifest);
        write_file(dir / "manifest.txt", text.str());
    }
    std::cout << "instance: I=" << inst.inbound_doors << " J=" << inst.outbound_doors
              << " M=" << inst.origins << " N=" << inst.destinations << " checksum "
              << manifest.instance_checksum << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------- solve

struct SolveOpts {
    CommonOpts common;
    std::string method;
    unsigned long long budget = kDefaultExactBudget;
    bool budget_given = false;
    MemeticConfig memetic;
    bool pop_given = false, gen_given = false, tour_given = false, cx_given = false,
         mut_given = false, policy_given = false, frac_given = false, style_given = false,
         maxev_given = false, stag_given = false;
    std::string policy = "every_offspring";
    std::string style = "best_improvement";
};

int run_solve(SolveOpts& s) {
    std::string instance_from_config, checksum_from_config;
    const KeyValueFile kv =
        load_config(s.common, "solve", &instance_from_config, nullptr, &checksum_from_config);

    std::string method = "memetic";
    if (const std::string* v = kv.find("solve.method")) method = *v;
    if (!s.method.empty()) method = s.method;
    if (method != "exact" && method != "memetic" && method != "random-restart")
        throw std::invalid_argument("--method must be exact|memetic|random-restart");

    unsigned long long budget = kDefaultExactBudget;
    if (const std::string* v = kv.find("solve.budget")) budget = parse_uint_value(*v, "budget");
    if (s.budget_given) budget = s.budget;

    MemeticConfig cfg;
    apply_memetic_keys(kv, "memetic", cfg);
    const bool config_had_seed = kv.has("memetic.seed");
    if (s.pop_given) cfg.population_size = s.memetic.population_size;
    if (s.gen_given) cfg.generations = s.memetic.generations;
    if (s.tour_given) cfg.tournament_size = s.memetic.tournament_size;
    if (s.cx_given) cfg.crossover_rate = s.memetic.crossover_rate;
    if (s.mut_given) cfg.mutation_rate = s.memetic.mutation_rate;
    if (s.policy_given) cfg.local_search_policy = (s.policy == "elite_fraction")
                                                      ? LocalSearchPolicy::EliteFraction
                                                      : LocalSearchPolicy::EveryOffspring;
    if (s.frac_given) cfg.elite_fraction = s.memetic.elite_fraction;
    if (s.style_given) cfg.local_search_style = (s.style == "first_improvement")
                                                    ? LocalSearchStyle::FirstImprovement
                                                    : LocalSearchStyle::BestImprovement;
    if (s.maxev_given) cfg.max_evaluations = s.memetic.max_evaluations;
    if (s.stag_given) cfg.stagnation_limit = s.memetic.stagnation_limit;
    kv.check_all_consumed();

    if (method != "exact") cfg.seed = resolve_seed(s.common, config_had_seed, cfg.seed);

    if (s.common.show_config) {
        std::cout << "solve.method=" << method << '\n';
        if (method == "exact") std::cout << "solve.budget=" << budget << '\n';
        else print_entries(memetic_config_entries("memetic", cfg));
        return kExitOk;
    }

    const std::string instance_path =
        !s.common.instance_path.empty() ? s.common.instance_path : instance_from_config;
    const Instance inst = load_instance(instance_path, checksum_from_config);

    RunManifest manifest;
    manifest.subcommand = "solve";
    manifest.instance_path = instance_path;
    manifest.instance_checksum = instance_checksum(inst);
    manifest.entries.emplace_back("solve.method", method);

    std::ostringstream report_text;
    Assignment best;
    if (method == "exact") {
        manifest.entries.emplace_back("solve.budget", std::to_string(budget));
        const ExactResult result = solve_exact(inst, budget, s.common.threads);
        write_exact_report(report_text, result);
        best = result.best;
    } else {
        for (auto& e : memetic_config_entries("memetic", cfg)) manifest.entries.push_back(e);
        const FitnessFunction fitness = objective_fitness(inst);
        const SolveReport report = (method == "memetic")
                                       ? solve_memetic(inst, fitness, cfg, s.common.threads)
                                       : solve_random_restart(inst, fitness, cfg);
        write_solve_report(report_text, method, report);
        best = report.best;
    }

    const fs::path dir = ensure_out_dir(s.common);
    write_file(dir / "report.txt", report_text.str());
    {
        std::ostringstream text;
        write_assignment(text, best);
        write_file(dir / "assignment.txt", text.str());
    }
    {
        std::ostringstream text;
        write_manifest(text, manifest);
        write_file(dir / "manifest.txt", text.str());
    }
    std::cout << report_text.str();
    return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
    CommonOpts common;
    std::string assignment_path;
    int replications = 1;
    bool reps_given = false;
    SimConfig sim;
    std::string arrival_process, unload_time, trips_rule, outbound_service;
    bool rate_given = false, tpo_given = false, fk_given = false, speed_given = false,
         weight_given = false;
};

void overlay_sim_flags(const SimulateOpts& s, SimConfig& cfg) {
    if (!s.arrival_process.empty()) {
        if (s.arrival_process == "poisson") cfg.arrival_process = ArrivalProcess::Poisson;
        else if (s.arrival_process == "schedule") cfg.arrival_process = ArrivalProcess::Schedule;
        else throw std::invalid_argument("--arrival-process must be poisson|schedule");
    }
    if (s.rate_given) cfg.arrival_rate = s.sim.arrival_rate;
    if (s.tpo_given) cfg.trailers_per_origin = s.sim.trailers_per_origin;
    if (!s.unload_time.empty()) cfg.unload_time = parse_duration_spec(s.unload_time);
    if (s.fk_given) cfg.forklift_count = s.sim.forklift_count;
    if (s.speed_given) cfg.forklift_speed = s.sim.forklift_speed;
    if (!s.trips_rule.empty()) {
        if (s.trips_rule == "full_row") cfg.trips_per_trailer = TripRule::FullRow;
        else if (s.trips_rule == "split_evenly") cfg.trips_per_trailer = TripRule::SplitEvenly;
        else throw std::invalid_argument("--trips-per-trailer must be full_row|split_evenly");
    }
    if (!s.outbound_service.empty()) cfg.outbound_service_time = parse_duration_spec(s.outbound_service);
    if (s.weight_given) cfg.delay_weight = s.sim.delay_weight;
}

int run_simulate(SimulateOpts& s) {
    std::string instance_from_config, assignment_from_config, checksum_from_config;
    const KeyValueFile kv = load_config(s.common, "simulate", &instance_from_config,
                                        &assignment_from_config, &checksum_from_config);

    SimConfig cfg;
    apply_sim_keys(kv, "sim", cfg);
    const bool config_had_seed = kv.has("sim.seed");
    overlay_sim_flags(s, cfg);

    int replications = 1;
    if (const std::string* v = kv.find("simulate.replications"))
        replications = static_cast<int>(parse_int_value(*v, "replications"));
    if (s.reps_given) replications = s.replications;
    if (replications < 1) throw std::invalid_argument("--replications must be at least 1");
    kv.check_all_consumed();

    cfg.seed = resolve_seed(s.common, config_had_seed, cfg.seed);

    if (s.common.show_config) {
        std::cout << "simulate.replications=" << replications << '\n';
        print_entries(sim_config_entries("sim", cfg));
        return kExitOk;
    }

    const std::string instance_path =
        !s.common.instance_path.empty() ? s.common.instance_path : instance_from_config;
    const Instance inst = load_instance(instance_path, checksum_from_config);
    const std::string assignment_path =
        !s.assignment_path.empty() ? s.assignment_path : assignment_from_config;
    if (assignment_path.empty()) throw std::invalid_argument("--assignment is required");
    const Assignment a = read_assignment_file(assignment_path);
    validate_assignment(inst, a);
    cfg.validate();

    const std::vector<SimResult> results =
        run_replications(inst, a, cfg, replications, cfg.seed, s.common.threads);
    const CostEstimate estimate = summarize_costs(results);

    RunManifest manifest;
    manifest.subcommand = "simulate";
    manifest.instance_path = instance_path;
    manifest.instance_checksum = instance_checksum(inst);
    manifest.entries.emplace_back("run.assignment", assignment_path);
    manifest.entries.emplace_back("simulate.replications", std::to_string(replications));
    for (auto& e : sim_config_entries("sim", cfg)) manifest.entries.push_back(e);
    manifest.schedule = cfg.schedule;

    const fs::path dir = ensure_out_dir(s.common);
    {
        std::ostringstream text;
        write_sim_records(text, results, estimate, cfg.seed);
        write_file(dir / "simresult.txt", text.str());
    }
    {
        std::ostringstream text;
        write_sim_csv(text, results, cfg.seed);
        write_file(dir / "simresult.csv", text.str());
    }
    {
        std::ostringstream text;
        write_manifest(text, manifest);
        write_file(dir / "manifest.txt", text.str());
    }
    std::cout << "replications=" << replications << " refined_cost_mean=" << format_real17(estimate.mean)
              << " refined_cost_stddev=" << format_real17(estimate.stddev) << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ simopt

struct SimOptOpts {
    SolveOpts solve;       // reuses the memetic flag block
    SimulateOpts simulate; // reuses the sim flag block
    SimOptConfig cfg;
    bool rs_given = false, rf_given = false, elite_given = false;
};

int run_simopt(SimOptOpts& o, CommonOpts& common) {
    std::string instance_from_config, checksum_from_config;
    const KeyValueFile kv =
        load_config(common, "simopt", &instance_from_config, nullptr, &checksum_from_config);

    SimOptConfig cfg;
    apply_memetic_keys(kv, "memetic", cfg.memetic);
    apply_sim_keys(kv, "sim", cfg.sim);
    apply_simopt_keys(kv, "simopt", cfg);
    const bool config_had_seed = kv.has("memetic.seed") || kv.has("sim.seed");

    const SolveOpts& s = o.solve;
    if (s.pop_given) cfg.memetic.population_size = s.memetic.population_size;
    if (s.gen_given) cfg.memetic.generations = s.memetic.generations;
    if (s.tour_given) cfg.memetic.tournament_size = s.memetic.tournament_size;
    if (s.cx_given) cfg.memetic.crossover_rate = s.memetic.crossover_rate;
    if (s.mut_given) cfg.memetic.mutation_rate = s.memetic.mutation_rate;
    if (s.policy_given) cfg.memetic.local_search_policy = (s.policy == "elite_fraction")
                                                              ? LocalSearchPolicy::EliteFraction
                                                              : LocalSearchPolicy::EveryOffspring;
    if (s.frac_given) cfg.memetic.elite_fraction = s.memetic.elite_fraction;
    if (s.style_given) cfg.memetic.local_search_style = (s.style == "first_improvement")
                                                            ? LocalSearchStyle::FirstImprovement
                                                            : LocalSearchStyle::BestImprovement;
    if (s.maxev_given) cfg.memetic.max_evaluations = s.memetic.max_evaluations;
    if (s.stag_given) cfg.memetic.stagnation_limit = s.memetic.stagnation_limit;
    overlay_sim_flags(o.simulate, cfg.sim);
    if (o.rs_given) cfg.search_replications = o.cfg.search_replications;
    if (o.rf_given) cfg.final_replications = o.cfg.final_replications;
    if (o.elite_given) cfg.elite_rerank_size = o.cfg.elite_rerank_size;
    kv.check_all_consumed();

    // One master seed drives the search and the common random numbers.
    const std::uint64_t master =
        resolve_seed(common, config_had_seed, kv.has("memetic.seed") ? cfg.memetic.seed : cfg.sim.seed);
    cfg.memetic.seed = master;
    cfg.sim.seed = master;

    if (common.show_config) {
        print_entries(memetic_config_entries("memetic", cfg.memetic));
        print_entries(sim_config_entries("sim", cfg.sim));
        print_entries(simopt_config_entries("simopt", cfg));
        return kExitOk;
    }

    const std::string instance_path =
        !common.instance_path.empty() ? common.instance_path : instance_from_config;
    const Instance inst = load_instance(instance_path, checksum_from_config);
    cfg.validate();

    const SimOptReport report = solve_simopt(inst, cfg, common.threads);

    RunManifest manifest;
    manifest.subcommand = "simopt";
    manifest.instance_path = instance_path;
    manifest.instance_checksum = instance_checksum(inst);
    for (auto& e : memetic_config_entries("memetic", cfg.memetic)) manifest.entries.push_back(e);
    for (auto& e : sim_config_entries("sim", cfg.sim)) manifest.entries.push_back(e);
    for (auto& e : simopt_config_entries("simopt", cfg)) manifest.entries.push_back(e);
    manifest.schedule = cfg.sim.schedule;

    const fs::path dir = ensure_out_dir(common);
    std::ostringstream report_text;
    write_simopt_report(report_text, report);
    write_file(dir / "report.txt", report_text.str());
    {
        std::ostringstream text;
        write_assignment(text, report.best);
        write_file(dir / "assignment.txt", text.str());
    }
    {
        std::ostringstream text;
        write_elite_csv(text, report.elite);
        write_file(dir / "elite.csv", text.str());
    }
    {
        std::ostringstream text;
        write_manifest(text, manifest);
        write_file(dir / "manifest.txt", text.str());
    }
    std::cout << report_text.str();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Crossdock door assignment: generate, solve, simulate, simopt"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    GenerateOpts gen;
    CLI::App* cmd_gen = app.add_subcommand("generate", "Write an instance file");
    add_common(cmd_gen, gen.common, false);
    cmd_gen->add_flag("--random", gen.random, "Uniform random distances and flows");
    cmd_gen->add_flag("--figure1", gen.figure1, "The 6-inbound/9-outbound example dock");
    cmd_gen->add_flag("--layout", gen.layout, "Geometric dock layout");
    cmd_gen->add_option("-I,--inbound", gen.I, "Inbound doors (random mode)");
    cmd_gen->add_option("-J,--outbound", gen.J, "Outbound doors (random mode)");
    cmd_gen->add_option("-M,--origins", gen.M, "Origins")->each([&gen](const std::string&) {
        gen.m_given = true;
    });
    cmd_gen->add_option("-N,--destinations", gen.N, "Destinations")->each([&gen](const std::string&) {
        gen.n_given = true;
    });
    cmd_gen->add_option("--max-distance", gen.max_distance, "Upper bound for random distances");
    cmd_gen->add_option("--max-flow", gen.max_flow, "Upper bound for random flows");
    cmd_gen->add_option("--pitch", gen.pitch, "Door pitch (layout mode)");
    cmd_gen->add_option("--width", gen.width, "Dock width (layout mode)");
    cmd_gen->add_option("--inbound-doors", gen.inbound_doors, "Inbound doors (layout mode)");
    cmd_gen->add_option("--outbound-doors", gen.outbound_doors, "Outbound doors (layout mode)");
    cmd_gen->add_option("--open-doors", gen.open_doors, "Open doors (layout mode)");
    cmd_gen->add_option("--inbound-side", gen.inbound_side, "Wall for inbound doors");
    cmd_gen->add_option("--outbound-side", gen.outbound_side, "Wall for outbound doors");

    SolveOpts sol;
    CLI::App* cmd_sol = app.add_subcommand("solve", "Minimize the travel objective");
    add_common(cmd_sol, sol.common, true);
    cmd_sol->add_option("--method", sol.method, "exact | memetic | random-restart");
    cmd_sol->add_option("--budget", sol.budget, "Enumeration cap for --method exact")
        ->each([&sol](const std::string&) { sol.budget_given = true; });
    auto add_memetic_flags = [](CLI::App* cmd, SolveOpts& s) {
        cmd->add_option("--population-size", s.memetic.population_size)
            ->each([&s](const std::string&) { s.pop_given = true; });
        cmd->add_option("--generations", s.memetic.generations)->each([&s](const std::string&) {
            s.gen_given = true;
        });
        cmd->add_option("--tournament-size", s.memetic.tournament_size)
            ->each([&s](const std::string&) { s.tour_given = true; });
        cmd->add_option("--crossover-rate", s.memetic.crossover_rate)
            ->each([&s](const std::string&) { s.cx_given = true; });
        cmd->add_option("--mutation-rate", s.memetic.mutation_rate)
            ->each([&s](const std::string&) { s.mut_given = true; });
        cmd->add_option("--local-search-policy", s.policy, "every_offspring | elite_fraction")
            ->each([&s](const std::string&) { s.policy_given = true; });
        cmd->add_option("--elite-fraction", s.memetic.elite_fraction)
            ->each([&s](const std::string&) { s.frac_given = true; });
        cmd->add_option("--local-search-style", s.style, "first_improvement | best_improvement")
            ->each([&s](const std::string&) { s.style_given = true; });
        cmd->add_option("--max-evaluations", s.memetic.max_evaluations)
            ->each([&s](const std::string&) { s.maxev_given = true; });
        cmd->add_option("--stagnation-limit", s.memetic.stagnation_limit)
            ->each([&s](const std::string&) { s.stag_given = true; });
    };
    add_memetic_flags(cmd_sol, sol);

    SimulateOpts sim;
    CLI::App* cmd_sim = app.add_subcommand("simulate", "Estimate the refined cost of an assignment");
    add_common(cmd_sim, sim.common, true);
    cmd_sim->add_option("--assignment", sim.assignment_path, "Assignment file (X:/Y: lines)");
    cmd_sim->add_option("--replications", sim.replications)->each([&sim](const std::string&) {
        sim.reps_given = true;
    });
    auto add_sim_flags = [](CLI::App* cmd, SimulateOpts& s) {
        cmd->add_option("--arrival-process", s.arrival_process, "poisson | schedule");
        cmd->add_option("--arrival-rate", s.sim.arrival_rate)->each([&s](const std::string&) {
            s.rate_given = true;
        });
        cmd->add_option("--trailers-per-origin", s.sim.trailers_per_origin)
            ->each([&s](const std::string&) { s.tpo_given = true; });
        cmd->add_option("--unload-time", s.unload_time, "e.g. 'constant 5', 'uniform 2 6', 'exponential 4'");
        cmd->add_option("--forklift-count", s.sim.forklift_count)->each([&s](const std::string&) {
            s.fk_given = true;
        });
        cmd->add_option("--forklift-speed", s.sim.forklift_speed)->each([&s](const std::string&) {
            s.speed_given = true;
        });
        cmd->add_option("--trips-per-trailer", s.trips_rule, "full_row | split_evenly");
        cmd->add_option("--outbound-service-time", s.outbound_service, "duration spec or 'none'");
        cmd->add_option("--delay-weight", s.sim.delay_weight)->each([&s](const std::string&) {
            s.weight_given = true;
        });
    };
    add_sim_flags(cmd_sim, sim);

    SimOptOpts sopt;
    CommonOpts sopt_common;
    CLI::App* cmd_sopt = app.add_subcommand("simopt", "Optimize against the simulation estimator");
    add_common(cmd_sopt, sopt_common, true);
    add_memetic_flags(cmd_sopt, sopt.solve);
    add_sim_flags(cmd_sopt, sopt.simulate);
    cmd_sopt->add_option("--search-replications", sopt.cfg.search_replications)
        ->each([&sopt](const std::string&) { sopt.rs_given = true; });
    cmd_sopt->add_option("--final-replications", sopt.cfg.final_replications)
        ->each([&sopt](const std::string&) { sopt.rf_given = true; });
    cmd_sopt->add_option("--elite-rerank-size", sopt.cfg.elite_rerank_size)
        ->each([&sopt](const std::string&) { sopt.elite_given = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_gen->parsed()) return run_generate(gen);
        if (cmd_sol->parsed()) return run_solve(sol);
        if (cmd_sim->parsed()) return run_simulate(sim);
        if (cmd_sopt->parsed()) return run_simopt(sopt, sopt_common);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRefused;
    } catch (const FeasibilityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRefused;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitUsage;
}
