#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <iosfwd>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "cactus/rng.hpp"

namespace cactus {

// Flat `key = value` configuration. Lines starting with '#' are comments.
class Config {
public:
    Config() = default;
    static Config parse(std::istream& in);
    static Config parse_string(const std::string& text);

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) > 0; }
    const std::map<std::string, std::string>& entries() const { return values_; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    int get_int(const std::string& key, int fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
    std::vector<int> get_ints(const std::string& key, const std::vector<int>& fallback) const;

    // Throws InputError naming the first key outside `known`.
    void require_known(const std::vector<std::string>& known) const;

private:
    std::map<std::string, std::string> values_;
};

struct StatRow {
    std::string name;
    double estimate = 0;
    double std_error = std::numeric_limits<double>::quiet_NaN();
    double reference = std::numeric_limits<double>::quiet_NaN();
    std::string provenance;
    double tolerance = std::numeric_limits<double>::quiet_NaN();  // acceptance bound if any
};

struct StatReport {
    std::string experiment;
    std::vector<std::pair<std::string, std::string>> config;  // resolved values, worker count excluded
    std::vector<StatRow> rows;
    std::map<std::string, std::vector<double>> samples;        // raw samples when requested

    const StatRow& row(const std::string& name) const;  // throws InputError if absent
};

void write_csv(std::ostream& out, const StatReport& r);
void write_json(std::ostream& out, const StatReport& r);
void write_samples_csv(std::ostream& out, const StatReport& r);

// Runs job(i, rng_i) for i in [0, count) on `workers` threads with
// rng_i = Rng(derive_seed(seed, i)); results come back in index order, so
// they do not depend on the worker count. The exception of the smallest
// failing index is rethrown.
template <class Result>
std::vector<Result> run_replicas(std::uint64_t seed, int count, int workers,
                                 const std::function<Result(int, Rng&)>& job);

StatReport volume_growth(const Config& cfg);
StatReport ball_exponent(const Config& cfg);
StatReport separating_cycle(const Config& cfg);
StatReport cactus_convergence(const Config& cfg);

// Dispatch on "volume-growth", "ball-exponent", "separating-cycle", "convergence".
StatReport run_experiment(const std::string& name, const Config& cfg);

}  // namespace cactus

#include "cactus/detail/replicas.hpp"
