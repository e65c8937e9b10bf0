#pragma once

#include <cstdint>
#include <vector>

#include "emc/occupancy.hpp"
#include "emc/schedule.hpp"
#include "emc/thermal.hpp"

namespace emc {

// Ambient temperature and solar gain series shared by all ensemble profiles.
struct WeatherSeries {
    std::vector<double> ambient;   // degC
    std::vector<double> solar_kw;  // global solar gain entering the envelope, kW
    double dt_hours = 0.25;

    int n_steps() const { return static_cast<int>(ambient.size()); }
};

struct WeatherParams {
    double base_degc = 3.0;       // winter mean
    double daily_amp = 2.5;       // peak at 14:00
    double synoptic_amp = 3.5;    // slow multi-day swing
    double synoptic_days = 9.0;
    double noise_sigma = 0.6;     // AR(1) innovation, phi 0.95
    double clamp_lo = -10.0, clamp_hi = 12.0;
    double solar_peak_kw = 1.2;   // clear-sky midwinter envelope gain
};

// Seeded synthetic winter weather; stands in for metered data. Deterministic
// for a fixed seed.
WeatherSeries synth_weather(uint64_t seed, int n_steps, double dt_hours,
                            const WeatherParams& params = {});

// Weather in the (step, E_1..E_n, ambient, hw_draw) CSV layout (see io.hpp).
struct ExogenousSeries {
    Eigen::MatrixXd E;            // occupancy-independent gains, n_steps x n_states
    std::vector<double> ambient;
    std::vector<double> hw_draw;  // base draw, scaled by presence at assembly
    double dt_hours = 0.25;
};

struct InternalGainParams {
    double present_kw = 0.3;  // occupants plus appliances while present
};

// Profile-independent scenario inputs; combined with one occupancy profile by
// make_scenario().
struct ScenarioSpec {
    BuildingModel building;
    ExogenousSeries exogenous;
    ComfortDefaults comfort;
    DrawTemplate draw;
    OccupancyParams occupancy;
    InternalGainParams internal_gains;
    ThermalState initial_state;
    int horizon_steps = 0;
    double dt_hours = 0.25;
    int window_steps = 96;
    int lookahead_steps = 32;
    bool allow_relaxation = true;
    double relax_penalty = 1e6;
    bool draw_from_template = true;  // false: use exogenous.hw_draw as-is
};

// Builds the occupancy-independent part of the gains from weather and the
// building's exogenous coupling columns: E = exog * [ambient, solar, 0]'.
ExogenousSeries exogenous_from_weather(const BuildingModel& building,
                                       const WeatherSeries& weather);

// Completes a ScenarioConfig for one profile: adds presence-scaled internal
// gains to E, derives comfort bounds, and picks the hot-water draw.
ScenarioConfig make_scenario(const ScenarioSpec& spec, const OccupancyProfile& profile);

// Simulates n_profiles occupancy variants of the scenario, profiles seeded
// from master_seed. Profiles run in parallel on up to n_threads workers;
// per-profile failures are reported and do not stop the rest.
EnsembleResult run_ensemble(const ScenarioSpec& spec, int n_profiles,
                            uint64_t master_seed, int n_threads = 0);

// Four-week, 15-minute default scenario around default_building(). All
// stochastic inputs derive from master_seed.
ScenarioSpec default_scenario(uint64_t master_seed);

inline constexpr uint64_t kDefaultMasterSeed = 20130101;
inline constexpr int kDefaultHorizonSteps = 2688;  // 4 weeks at 15 min

// Peak heat demand (kW thermal) of a scenario: the maximum over the horizon of
// the steady-state space-heating load at occupied setpoints plus the
// concurrent hot-water draw. This is the sizing basis for default_building():
//   p_hp_max = 0.8 * peak / cop_sh,  p_a_max = 0.2 * peak.
double peak_heat_demand(const BuildingModel& building, const ExogenousSeries& exogenous,
                        const ComfortDefaults& comfort, const DrawTemplate& draw);

// Optional affine ambient-dependent COP model (off by default to keep the LP
// linear in one pass): cop(t) = cop_ref + slope * (ambient_t - t_ref), floored
// at 1.
std::vector<double> cop_schedule_affine(const std::vector<double>& ambient,
                                        double cop_ref, double t_ref, double slope);

// Synthetic day-ahead price shape (EUR/MWh): cheap overnight, morning and
// evening peaks, with a pronounced late-horizon peak so that price-following
// control visibly concentrates the ensemble. Deterministic.
std::vector<double> synth_prices(int n_steps, double dt_hours);

}  // namespace emc
