#ifndef CDAP_CONFIG_HPP
#define CDAP_CONFIG_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cdap/des.hpp"
#include "cdap/memetic.hpp"
#include "cdap/simopt.hpp"

namespace cdap {

// Parsed key=value file. Lines are either "key = value", a bare
// "origin_index arrival_time" pair (an explicit trailer arrival, 1-based
// origin), or comments starting with '#'.
struct KeyValueFile {
    struct Entry {
        std::string value;
        int line = 0;
        mutable bool consumed = false;
    };
    std::map<std::string, Entry> entries;
    std::vector<ArrivalEntry> schedule;

    bool has(const std::string& key) const { return entries.count(key) != 0; }
    const std::string* find(const std::string& key) const;

    // Throws ParseError listing keys nobody consumed (typo guard).
    void check_all_consumed() const;
};

KeyValueFile parse_key_values(std::istream& in);
KeyValueFile parse_key_value_file(const std::string& path);

// Apply "<prefix>.<field>" entries onto a config; unknown fields under the
// prefix raise ParseError. The schedule block, when present, lands in
// SimConfig::schedule.
void apply_memetic_keys(const KeyValueFile& kv, const std::string& prefix, MemeticConfig& cfg);
void apply_sim_keys(const KeyValueFile& kv, const std::string& prefix, SimConfig& cfg);
void apply_simopt_keys(const KeyValueFile& kv, const std::string& prefix, SimOptConfig& cfg);

// Canonical serialization, mirrors what apply_* accepts.
std::vector<std::pair<std::string, std::string>> memetic_config_entries(const std::string& prefix,
                                                                        const MemeticConfig& cfg);
std::vector<std::pair<std::string, std::string>> sim_config_entries(const std::string& prefix,
                                                                    const SimConfig& cfg);
std::vector<std::pair<std::string, std::string>> simopt_config_entries(const std::string& prefix,
                                                                       const SimOptConfig& cfg);

// Strict numeric parsing for config/CLI values; throws std::invalid_argument.
long long parse_int_value(const std::string& text, const std::string& what);
double parse_real_value(const std::string& text, const std::string& what);
unsigned long long parse_uint_value(const std::string& text, const std::string& what);

}  // namespace cdap

#endif
