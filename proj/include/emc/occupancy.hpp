#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace emc {

// Binary presence sequence from a seeded two-state Markov chain.
struct OccupancyProfile {
    uint64_t seed = 0;
    std::vector<uint8_t> presence;  // 0 = absent, 1 = present
    double dt_hours = 0.25;

    int n_steps() const { return static_cast<int>(presence.size()); }
};

// Time-varying comfort bounds derived from presence. Zone 0 = day, zone 1 = night.
struct ComfortSchedule {
    Eigen::MatrixXd t_lo;  // n_steps x n_zones, degC
    Eigen::MatrixXd t_hi;
    std::vector<double> hw_lo;  // tank bounds per step, degC
    std::vector<double> hw_hi;

    int n_steps() const { return static_cast<int>(hw_lo.size()); }
    void validate() const;
};

// Setpoint defaults: occupied day [20,22], night [18,20]; unoccupied lower
// bound drops to 16 with upper bounds unchanged. Tank held in [45,60].
struct ComfortDefaults {
    double day_lo = 20.0, day_hi = 22.0;
    double night_lo = 18.0, night_hi = 20.0;
    double away_lo = 16.0;
    double hw_lo = 45.0, hw_hi = 60.0;
};

// Two-state presence chain defaults: mean absence 8 h and mean presence 12 h
// at 15-minute steps, i.e. stationary occupancy 60%.
struct OccupancyParams {
    double p_arrive = 1.0 / 32.0;  // absent -> present, per step
    double p_leave = 1.0 / 48.0;   // present -> absent, per step
};

// Morning/evening hot-water pulse template (hours of day, thermal kW),
// scaled by presence at each step.
struct DrawTemplate {
    double morning_start_h = 7.0, morning_end_h = 8.0, morning_kw = 3.0;
    double evening_start_h = 18.0, evening_end_h = 20.0, evening_kw = 2.5;
};

// Samples the presence chain with a seeded splitmix64 stream. The initial
// state is drawn from the chain's stationary distribution. Identical seed,
// identical sequence.
OccupancyProfile generate_profile(uint64_t seed, int n_steps, double dt_hours,
                                  double p_arrive, double p_leave);

// Pointwise map from presence to comfort bounds; no smoothing or history.
ComfortSchedule comfort_bounds(const OccupancyProfile& profile,
                               const ComfortDefaults& defaults = {});

// Presence-scaled draw profile from the pulse template.
std::vector<double> hot_water_draw(const OccupancyProfile& profile,
                                   const DrawTemplate& tmpl = {});

// Per-profile seed for profile k of an ensemble, derived from the master seed.
uint64_t profile_seed(uint64_t master_seed, int profile_index);

}  // namespace emc
