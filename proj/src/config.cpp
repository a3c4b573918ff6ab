#include "cdap/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cdap/errors.hpp"
#include "cdap/text.hpp"

namespace cdap {

const std::string* KeyValueFile::find(const std::string& key) const {
    const auto it = entries.find(key);
    if (it == entries.end()) return nullptr;
    it->second.consumed = true;
    return &it->second.value;
}

void KeyValueFile::check_all_consumed() const {
    for (const auto& [key, entry] : entries)
        if (!entry.consumed) throw ParseError(entry.line, "unknown configuration key '" + key + "'");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t lo = s.find_first_not_of(" \t\r");
    if (lo == std::string::npos) return "";
    std::size_t hi = s.find_last_not_of(" \t\r");
    return s.substr(lo, hi - lo + 1);
}

}  // namespace

KeyValueFile parse_key_values(std::istream& in) {
    KeyValueFile kv;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq != std::string::npos) {
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw ParseError(number, "empty key");
            if (kv.entries.count(key)) throw ParseError(number, "duplicate key '" + key + "'");
            kv.entries[key] = {value, number, false};
            continue;
        }

        // Bare "origin_index arrival_time" pairs form the explicit schedule.
        std::istringstream tokens(line);
        long long origin = 0;
        double time = 0.0;
        std::string extra;
        if (!(tokens >> origin >> time) || (tokens >> extra))
            throw ParseError(number, "expected 'key = value' or 'origin_index arrival_time'");
        if (origin < 1) throw ParseError(number, "schedule origin indices are 1-based");
        kv.schedule.push_back({static_cast<int>(origin - 1), time});
    }
    return kv;
}

KeyValueFile parse_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open config file '" + path + "'");
    return parse_key_values(in);
}

long long parse_int_value(const std::string& text, const std::string& what) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (text.empty() || end != text.c_str() + text.size() || errno != 0)
        throw std::invalid_argument(what + " must be an integer, got '" + text + "'");
    return v;
}

unsigned long long parse_uint_value(const std::string& text, const std::string& what) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (text.empty() || text[0] == '-' || end != text.c_str() + text.size() || errno != 0)
        throw std::invalid_argument(what + " must be a non-negative integer, got '" + text + "'");
    return v;
}

double parse_real_value(const std::string& text, const std::string& what) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE)
        throw std::invalid_argument(what + " must be a real number, got '" + text + "'");
    return v;
}

namespace {

LocalSearchPolicy parse_policy(const std::string& text) {
    if (text == "every_offspring") return LocalSearchPolicy::EveryOffspring;
    if (text == "elite_fraction") return LocalSearchPolicy::EliteFraction;
    throw std::invalid_argument("local_search_policy must be every_offspring|elite_fraction, got '" +
                                text + "'");
}

const char* policy_name(LocalSearchPolicy p) {
    return p == LocalSearchPolicy::EveryOffspring ? "every_offspring" : "elite_fraction";
}

LocalSearchStyle parse_style(const std::string& text) {
    if (text == "first_improvement") return LocalSearchStyle::FirstImprovement;
    if (text == "best_improvement") return LocalSearchStyle::BestImprovement;
    throw std::invalid_argument("local_search_style must be first_improvement|best_improvement, got '" +
                                text + "'");
}

const char* style_name(LocalSearchStyle s) {
    return s == LocalSearchStyle::FirstImprovement ? "first_improvement" : "best_improvement";
}

// Wraps value conversion so errors carry the config line number.
template <typename Fn>
void take(const KeyValueFile& kv, const std::string& key, Fn&& fn) {
    const auto it = kv.entries.find(key);
    if (it == kv.entries.end()) return;
    it->second.consumed = true;
    try {
        fn(it->second.value);
    } catch (const std::invalid_argument& e) {
        throw ParseError(it->second.line, e.what());
    }
}

}  // namespace

void apply_memetic_keys(const KeyValueFile& kv, const std::string& prefix, MemeticConfig& cfg) {
    const std::string p = prefix + ".";
    take(kv, p + "population_size",
         [&](const std::string& v) { cfg.population_size = static_cast<int>(parse_int_value(v, "population_size")); });
    take(kv, p + "generations",
         [&](const std::string& v) { cfg.generations = static_cast<int>(parse_int_value(v, "generations")); });
    take(kv, p + "tournament_size",
         [&](const std::string& v) { cfg.tournament_size = static_cast<int>(parse_int_value(v, "tournament_size")); });
    take(kv, p + "crossover_rate",
         [&](const std::string& v) { cfg.crossover_rate = parse_real_value(v, "crossover_rate"); });
    take(kv, p + "mutation_rate",
         [&](const std::string& v) { cfg.mutation_rate = parse_real_value(v, "mutation_rate"); });
    take(kv, p + "local_search_policy",
         [&](const std::string& v) { cfg.local_search_policy = parse_policy(v); });
    take(kv, p + "elite_fraction",
         [&](const std::string& v) { cfg.elite_fraction = parse_real_value(v, "elite_fraction"); });
    take(kv, p + "local_search_style",
         [&](const std::string& v) { cfg.local_search_style = parse_style(v); });
    take(kv, p + "max_evaluations",
         [&](const std::string& v) { cfg.max_evaluations = parse_int_value(v, "max_evaluations"); });
    take(kv, p + "stagnation_limit",
         [&](const std::string& v) { cfg.stagnation_limit = static_cast<int>(parse_int_value(v, "stagnation_limit")); });
    take(kv, p + "seed", [&](const std::string& v) { cfg.seed = parse_uint_value(v, "seed"); });
}

void apply_sim_keys(const KeyValueFile& kv, const std::string& prefix, SimConfig& cfg) {
    const std::string p = prefix + ".";
    take(kv, p + "arrival_process", [&](const std::string& v) {
        if (v == "poisson")
            cfg.arrival_process = ArrivalProcess::Poisson;
        else if (v == "schedule")
            cfg.arrival_process = ArrivalProcess::Schedule;
        else
            throw std::invalid_argument("arrival_process must be poisson|schedule, got '" + v + "'");
    });
    take(kv, p + "arrival_rate",
         [&](const std::string& v) { cfg.arrival_rate = parse_real_value(v, "arrival_rate"); });
    take(kv, p + "trailers_per_origin", [&](const std::string& v) {
        cfg.trailers_per_origin = static_cast<int>(parse_int_value(v, "trailers_per_origin"));
    });
    take(kv, p + "unload_time",
         [&](const std::string& v) { cfg.unload_time = parse_duration_spec(v); });
    take(kv, p + "forklift_count",
         [&](const std::string& v) { cfg.forklift_count = static_cast<int>(parse_int_value(v, "forklift_count")); });
    take(kv, p + "forklift_speed",
         [&](const std::string& v) { cfg.forklift_speed = parse_real_value(v, "forklift_speed"); });
    take(kv, p + "trips_per_trailer", [&](const std::string& v) {
        if (v == "full_row")
            cfg.trips_per_trailer = TripRule::FullRow;
        else if (v == "split_evenly")
            cfg.trips_per_trailer = TripRule::SplitEvenly;
        else
            throw std::invalid_argument("trips_per_trailer must be full_row|split_evenly, got '" + v + "'");
    });
    take(kv, p + "outbound_service_time",
         [&](const std::string& v) { cfg.outbound_service_time = parse_duration_spec(v); });
    take(kv, p + "delay_weight",
         [&](const std::string& v) { cfg.delay_weight = parse_real_value(v, "delay_weight"); });
    take(kv, p + "seed", [&](const std::string& v) { cfg.seed = parse_uint_value(v, "seed"); });
    if (!kv.schedule.empty()) cfg.schedule = kv.schedule;
}

void apply_simopt_keys(const KeyValueFile& kv, const std::string& prefix, SimOptConfig& cfg) {
    const std::string p = prefix + ".";
    take(kv, p + "search_replications", [&](const std::string& v) {
        cfg.search_replications = static_cast<int>(parse_int_value(v, "search_replications"));
    });
    take(kv, p + "final_replications", [&](const std::string& v) {
        cfg.final_replications = static_cast<int>(parse_int_value(v, "final_replications"));
    });
    take(kv, p + "elite_rerank_size", [&](const std::string& v) {
        cfg.elite_rerank_size = static_cast<int>(parse_int_value(v, "elite_rerank_size"));
    });
}

std::vector<std::pair<std::string, std::string>> memetic_config_entries(const std::string& prefix,
                                                                        const MemeticConfig& cfg) {
    const std::string p = prefix + ".";
    return {
        {p + "population_size", std::to_string(cfg.population_size)},
        {p + "generations", std::to_string(cfg.generations)},
        {p + "tournament_size", std::to_string(cfg.tournament_size)},
        {p + "crossover_rate", format_real17(cfg.crossover_rate)},
        {p + "mutation_rate", format_real17(cfg.mutation_rate)},
        {p + "local_search_policy", policy_name(cfg.local_search_policy)},
        {p + "elite_fraction", format_real17(cfg.elite_fraction)},
        {p + "local_search_style", style_name(cfg.local_search_style)},
        {p + "max_evaluations", std::to_string(cfg.max_evaluations)},
        {p + "stagnation_limit", std::to_string(cfg.stagnation_limit)},
        {p + "seed", std::to_string(cfg.seed)},
    };
}

std::vector<std::pair<std::string, std::string>> sim_config_entries(const std::string& prefix,
                                                                    const SimConfig& cfg) {
    const std::string p = prefix + ".";
    std::vector<std::pair<std::string, std::string>> out = {
        {p + "arrival_process",
         cfg.arrival_process == ArrivalProcess::Poisson ? "poisson" : "schedule"},
        {p + "arrival_rate", format_real17(cfg.arrival_rate)},
        {p + "trailers_per_origin", std::to_string(cfg.trailers_per_origin)},
        {p + "unload_time", cfg.unload_time.to_string()},
        {p + "forklift_count", std::to_string(cfg.forklift_count)},
        {p + "forklift_speed", format_real17(cfg.forklift_speed)},
        {p + "trips_per_trailer",
         cfg.trips_per_trailer == TripRule::FullRow ? "full_row" : "split_evenly"},
        {p + "outbound_service_time", cfg.outbound_service_time.to_string()},
        {p + "delay_weight", format_real17(cfg.delay_weight)},
        {p + "seed", std::to_string(cfg.seed)},
    };
    return out;
}

std::vector<std::pair<std::string, std::string>> simopt_config_entries(const std::string& prefix,
                                                                       const SimOptConfig& cfg) {
    const std::string p = prefix + ".";
    return {
        {p + "search_replications", std::to_string(cfg.search_replications)},
        {p + "final_replications", std::to_string(cfg.final_replications)},
        {p + "elite_rerank_size", std::to_string(cfg.elite_rerank_size)},
    };
}

}  // namespace cdap
