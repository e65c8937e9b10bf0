#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emc/mdp.hpp"
#include "emc/mp.hpp"
#include "emc/occupancy.hpp"
#include "emc/scenario.hpp"
#include "emc/schedule.hpp"
#include "emc/thermal.hpp"

// File formats. All JSON payloads carry a schema_version field; all CSV
// columns are fixed-order with a header row. Doubles are written with 17
// significant digits, so identical data produces identical bytes.
namespace emc::io {

inline constexpr int kSchemaVersion = 1;

std::string format_double(double v);  // %.17g

// --- building model JSON ---------------------------------------------------
// Matrices are row-major nested arrays. Unknown fields are rejected; schema
// violations name the offending field, parse errors carry line/column.
BuildingModel load_building(const std::string& path);
BuildingModel building_from_json_text(const std::string& text, const std::string& origin);
void save_building(const BuildingModel& model, const std::string& path);

// --- trace CSV + metadata sidecar -------------------------------------------
// Columns: step,presence,d_h,p_hp,p_a,p_hp_sh,p_hp_hw,p_a_sh,p_a_hw,
//          q_sh_<zone>...,t_sh_<state>...,t_hw
void save_trace_csv(const SimulationTrace& trace, const std::string& path);
SimulationTrace load_trace_csv(const std::string& path);

struct TraceMeta {
    std::string building_id;
    uint64_t profile_seed = 0;
    int profile_index = 0;
    double dt_hours = 0.25;
    std::string config_hash;
    std::vector<int> relaxed_windows;
    std::string created_utc;  // timestamps live only here, never in payloads
};
void save_trace_meta(const TraceMeta& meta, const std::string& path);
TraceMeta load_trace_meta(const std::string& path);

// --- transition matrix JSON --------------------------------------------------
// probs/counts are row-major with entry [alpha][beta] = P(alpha <- beta).
void save_matrix(const TransitionMatrix& tm, const std::string& path);
TransitionMatrix load_matrix(const std::string& path);
void export_probs_csv(const TransitionMatrix& tm, const std::string& path);

void save_report(const ValidationReport& report, const std::string& path);
std::string report_to_text(const ValidationReport& report);

// --- MDP solution JSON -------------------------------------------------------
void save_solution(const MdpSolution& sol, const std::string& path, bool include_p_star = false);
MdpSolution load_solution(const std::string& path);

// --- small CSVs --------------------------------------------------------------
// price CSV: step,price
std::vector<double> load_prices_csv(const std::string& path);
void save_prices_csv(const std::vector<double>& prices, const std::string& path);

// occupancy CSV: step_index,presence
void save_profile_csv(const OccupancyProfile& profile, const std::string& path);
OccupancyProfile load_profile_csv(const std::string& path, double dt_hours, uint64_t seed);

// weather/gains CSV: step,E_1..E_n,ambient,hw_draw
void save_exogenous_csv(const ExogenousSeries& exo, const std::string& path);
ExogenousSeries load_exogenous_csv(const std::string& path, double dt_hours);

}  // namespace emc::io
