#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ccd {

// Declarative experiment description: `key = value` lines, `#` comments.
// The `name` key selects one of the built-in experiment protocols.
struct ExperimentSpec {
    std::string name;
    std::map<std::string, std::string> kv;

    static ExperimentSpec load(const std::string& path);
    static ExperimentSpec parse(const std::string& text);

    bool has(const std::string& key) const { return kv.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback = "") const;
    int get_int(const std::string& key, int fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::vector<std::string> get_list(const std::string& key,
                                      const std::string& fallback = "") const;
    std::vector<int> get_int_list(const std::string& key, const std::string& fallback = "") const;
    std::vector<double> get_double_list(const std::string& key,
                                        const std::string& fallback = "") const;
};

// Executes the experiment grid and writes `<name>.csv` into out_dir.
// Deterministic for a fixed master_seed, independent of thread count.
// Returns the path of the CSV written.
std::string run_experiment(const ExperimentSpec& spec, const std::string& out_dir,
                           std::uint64_t master_seed, int threads = 1);

}  // namespace ccd
