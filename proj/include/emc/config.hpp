#pragma once

#include <cstdint>
#include <string>

#include "emc/mp.hpp"
#include "emc/scenario.hpp"

namespace emc {

// Pipeline configuration: a plain-text key-value file with [section] headers,
// '#' comments, and one key = value per line. Every field has a default;
// print-config dumps the effective configuration in the same format so runs
// are diffable.
struct RunConfig {
    // [paths]
    std::string building_path;   // empty = default_building()
    std::string gains_csv;       // empty = synthetic weather from master_seed
    std::string prices_csv;      // empty = synthetic price shape
    std::string output_dir = "out";

    // [scenario]
    int horizon_steps = kDefaultHorizonSteps;
    double dt_hours = 0.25;
    int n_profiles = 52;
    uint64_t master_seed = kDefaultMasterSeed;
    int window_steps = 96;
    int lookahead_steps = 32;
    bool allow_relaxation = true;
    double relax_penalty = 1e6;
    int threads = 0;  // 0 = hardware concurrency

    // [binning]
    std::string power_var = "heat_pump";  // heat_pump | auxiliary
    std::string bin_mode = "product";     // product | marginal
    int n_temp_bins = 10;
    int n_power_bins = 10;

    // [mdp]
    int mdp_horizon = 96;
    double mdp_dt_hours = 1.0;
    double power_factor = 0.95;
    double utility_weight = 0.05;
    bool include_p_star = false;

    BinningSpec binning() const;
    PowerVar power_var_enum() const;
    BinMode bin_mode_enum() const;
};

RunConfig load_config(const std::string& path);
RunConfig config_from_text(const std::string& text, const std::string& origin);

// Canonical dump; parsing it back yields an identical config.
std::string dump_config(const RunConfig& cfg);

// FNV-1a over the canonical dump; recorded in trace metadata.
std::string config_hash(const RunConfig& cfg);

}  // namespace emc
