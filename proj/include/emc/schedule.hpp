#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "emc/lp.hpp"
#include "emc/occupancy.hpp"
#include "emc/thermal.hpp"

namespace emc {

// Everything needed to simulate one building against one occupancy profile.
struct ScenarioConfig {
    BuildingModel building;
    GainSchedule gains;
    ComfortSchedule comfort;
    OccupancyProfile profile;
    int horizon_steps = 0;
    int window_steps = 96;     // one day at 15-minute steps
    int lookahead_steps = 32;  // extra bound lookahead appended to each window
    ThermalState initial_state;
    bool allow_relaxation = true;
    double relax_penalty = 1e6;  // per degC-step of lower-bound slack

    void validate() const;
};

// Optimal-schedule time series for one profile. Column-per-quantity layout;
// one entry per step of the horizon.
struct SimulationTrace {
    std::string building_id;
    uint64_t profile_seed = 0;
    double dt_hours = 0.25;

    std::vector<double> d_h;       // total electrical demand, kW
    std::vector<double> p_hp;      // heat pump electrical, kW
    std::vector<double> p_a;       // auxiliary heater electrical, kW
    std::vector<double> p_hp_sh, p_hp_hw, p_a_sh, p_a_hw;
    Eigen::MatrixXd q_sh;          // n_steps x n_zones, thermal kW
    Eigen::MatrixXd t_sh;          // n_steps x n_states, degC
    std::vector<double> t_hw;      // degC
    std::vector<uint8_t> presence;
    std::vector<int> relaxed_windows;  // window indices where elastic bounds fired

    int n_steps() const { return static_cast<int>(d_h.size()); }
    // Power-balance and capacity invariants; throws on violation.
    void check_invariants(const BuildingModel& building) const;
};

// A window LP plus the variable layout needed to read solutions back.
// Per-step variables, in index order:
//   p_hp, p_a, p_hp_sh, p_hp_hw, p_a_sh, p_a_hw, q_sh[zone...], t_sh[state...], t_hw
// (9 + n_states variables per step with two zones). The total demand d_h is
// not a variable: the power balance makes it p_hp + p_a, which is exactly the
// objective term for the step. Relaxed windows append one lower-bound slack
// per (bounded state, step) and per tank step.
struct WindowLp {
    LpInstance lp;
    int start_step = 0;   // first horizon step covered
    int n_steps = 0;
    int n_states = 0;
    int n_zones = 0;
    bool relaxed = false;
    int vars_per_step = 0;
    int slack_base = 0;   // first slack variable index (relaxed mode)

    int var_p_hp(int k) const { return k * vars_per_step + 0; }
    int var_p_a(int k) const { return k * vars_per_step + 1; }
    int var_p_hp_sh(int k) const { return k * vars_per_step + 2; }
    int var_p_hp_hw(int k) const { return k * vars_per_step + 3; }
    int var_p_a_sh(int k) const { return k * vars_per_step + 4; }
    int var_p_a_hw(int k) const { return k * vars_per_step + 5; }
    int var_q_sh(int k, int z) const { return k * vars_per_step + 6 + z; }
    int var_t_sh(int k, int p) const { return k * vars_per_step + 6 + n_zones + p; }
    int var_t_hw(int k) const { return k * vars_per_step + 6 + n_zones + n_states; }
};

// Assembles the window LP over horizon steps [start, start + n_steps) from
// initial state x0. Equalities: power splits, heat production, envelope
// dynamics, tank recursion. Bounds: capacities, comfort, tank band.
WindowLp build_window_lp(const ScenarioConfig& cfg, int start_step, int n_steps,
                         const ThermalState& x0, bool relaxed = false);

// Chains daily windows over the horizon, passing each window's terminal
// thermal state to the next. Windows see lookahead_steps of future bounds but
// only commit window_steps. Infeasible windows are re-solved with elastic
// lower bounds and recorded in relaxed_windows.
SimulationTrace simulate_horizon(const ScenarioConfig& cfg);

struct EnsembleFailure {
    int profile_index = 0;
    uint64_t seed = 0;
    std::string message;
};

struct EnsembleResult {
    std::vector<SimulationTrace> traces;      // successful profiles, in index order
    std::vector<EnsembleFailure> failures;
};

}  // namespace emc
