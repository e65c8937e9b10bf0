#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace emc {

// Marks thermal states that carry no comfort bound (wall/floor masses).
inline constexpr int kInteriorState = -1;

// Hot water storage tank.
struct TankParams {
    double G = 0.0;        // thermal conductance to surroundings, kW/degC
    double C = 0.0;        // thermal capacity of tank and contents, kWh/degC
    double T_env = 15.0;   // temperature of the tank surroundings, degC
    double volume_l = 0.0; // liters, metadata only

    void validate() const;
};

// Discrete-time building envelope plus heating system parameters.
// Dynamics per step: t_sh' = A * t_sh + B * q_sh + E, with q_sh the thermal
// power (kW) injected per zone and E the exogenous gain vector (degC per step).
struct BuildingModel {
    std::string id;
    int n_states = 0;
    int n_zones = 0;
    Eigen::MatrixXd A;           // n_states x n_states, dimensionless per step
    Eigen::MatrixXd B;           // n_states x n_zones, degC per kW-step
    std::vector<double> cop_sh;  // space-heating COP; size 1 = constant schedule
    double cop_hw = 1.0;         // hot-water COP
    double p_hp_max = 0.0;       // heat pump electrical capacity, kW
    double p_a_max = 0.0;        // auxiliary heater electrical capacity, kW
    TankParams tank;
    std::vector<int> zone_of_state;  // zone per state, kInteriorState if unbounded

    // Exogenous coupling columns (degC per step per unit input), used when
    // assembling gain schedules: [ambient degC, solar kW, internal kW].
    // Optional; empty when gains are supplied fully precomputed.
    Eigen::MatrixXd exog;  // n_states x 3

    double cop_sh_at(int step) const;
    void validate() const;
};

// Per-step exogenous inputs to the thermal model over a horizon.
struct GainSchedule {
    Eigen::MatrixXd E;            // n_steps x n_states, degC per step
    std::vector<double> hw_draw;  // thermal power drawn from the tank, kW
    std::vector<double> ambient;  // outdoor temperature, degC (metadata for COP models)
    double dt_hours = 0.25;

    int n_steps() const { return static_cast<int>(hw_draw.size()); }
    void validate(int n_states) const;
};

struct ThermalState {
    Eigen::VectorXd t_sh;  // envelope state temperatures, degC
    double t_hw = 0.0;     // tank temperature, degC
};

// One step of the envelope dynamics: A*x + B*q_sh + gains.
Eigen::VectorXd step_thermal(const BuildingModel& model, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& q_sh, const Eigen::VectorXd& gains);

// One step of the tank recursion. The loss term references the new temperature,
// so the update is solved implicitly:
//   t' = (t + dt*G/C * T_env + dt/C * (cop_hw*p_hp_hw + p_a_hw - draw)) / (1 + dt*G/C)
double step_tank(const TankParams& tank, double t_prev, double p_hp_hw, double p_a_hw,
                 double draw, double cop_hw, double dt_hours);

// Thermal power per zone required to hold the zone air states at `setpoints`
// in steady state under constant exogenous gains `gains_row` (one row of E).
// Used for design-load sizing.
Eigen::VectorXd steady_state_heat_demand(const BuildingModel& model,
                                         const Eigen::VectorXd& setpoints,
                                         const Eigen::VectorXd& gains_row);

// Synthetic 4-state, 2-zone low-energy building (2R2C per zone: air + floor
// mass, floor heating into the mass node) with a 200 l tank. The real
// nine-state envelope matrices are not public data, so this stands in for
// them; matrices for actual buildings load from JSON (see io.hpp).
BuildingModel default_building();

// Continuous-time RC parameters behind default_building(), exposed so tests
// and sizing can rederive the discrete matrices independently.
struct DefaultBuildingRc {
    // [day air, day mass, night air, night mass]
    double c_air_day = 0.60, c_mass_day = 3.6;    // kWh/degC (50 mm screed)
    double c_air_night = 0.65, c_mass_night = 3.9;
    double ua_day = 0.16, ua_night = 0.15;        // kW/degC to ambient
    double h_am_day = 1.10, h_am_night = 1.00;    // air-mass coupling, kW/degC
    double h_zz = 0.25;                           // day-night air coupling, kW/degC
    double solar_frac[4] = {0.5, 0.2, 0.3, 0.0};  // split of solar gain, per state
    double internal_frac[4] = {0.8, 0.0, 0.2, 0.0};
    double dt_hours = 0.25;
    int substeps = 16;  // forward-Euler substeps per dt
};

// Discretizes the RC network above into (A, B, exog) with sub-stepped Euler.
void discretize_rc(const DefaultBuildingRc& rc, Eigen::MatrixXd& A, Eigen::MatrixXd& B,
                   Eigen::MatrixXd& exog);

}  // namespace emc
