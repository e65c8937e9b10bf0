#include "emc/occupancy.hpp"

#include <cmath>
#include <string>

#include "emc/errors.hpp"
#include "emc/rng.hpp"

namespace emc {

void ComfortSchedule::validate() const {
    const auto steps = hw_lo.size();
    if (steps == 0) fail(ErrorKind::config, "comfort schedule is empty");
    if (hw_hi.size() != steps || t_lo.rows() != static_cast<Eigen::Index>(steps) ||
        t_hi.rows() != static_cast<Eigen::Index>(steps) || t_lo.cols() != t_hi.cols())
        fail(ErrorKind::dimension, "comfort schedule series have inconsistent lengths");
    if (((t_hi - t_lo).array() < 0.0).any())
        fail(ErrorKind::config, "comfort bounds must satisfy t_lo <= t_hi");
    for (size_t t = 0; t < steps; ++t)
        if (hw_lo[t] > hw_hi[t]) fail(ErrorKind::config, "tank bounds must satisfy hw_lo <= hw_hi");
}

OccupancyProfile generate_profile(uint64_t seed, int n_steps, double dt_hours,
                                  double p_arrive, double p_leave) {
    if (n_steps <= 0) fail(ErrorKind::config, "n_steps must be positive");
    if (!(dt_hours > 0.0)) fail(ErrorKind::config, "dt_hours must be positive");
    if (p_arrive < 0.0 || p_arrive > 1.0 || p_leave < 0.0 || p_leave > 1.0)
        fail(ErrorKind::config, "transition probabilities must lie in [0,1]");

    OccupancyProfile profile;
    profile.seed = seed;
    profile.dt_hours = dt_hours;
    profile.presence.resize(n_steps);

    SplitMix64 rng(seed);
    // Initial state from the stationary distribution of the chain; for the
    // degenerate all-absorbing case fall back to "absent".
    const double denom = p_arrive + p_leave;
    const double p_occupied = denom > 0.0 ? p_arrive / denom : 0.0;
    uint8_t state = rng.uniform() < p_occupied ? 1 : 0;
    profile.presence[0] = state;
    for (int t = 1; t < n_steps; ++t) {
        const double u = rng.uniform();
        if (state == 0) {
            if (u < p_arrive) state = 1;
        } else {
            if (u < p_leave) state = 0;
        }
        profile.presence[t] = state;
    }
    return profile;
}

ComfortSchedule comfort_bounds(const OccupancyProfile& profile, const ComfortDefaults& d) {
    const int n = profile.n_steps();
    if (n == 0) fail(ErrorKind::config, "occupancy profile is empty");
    ComfortSchedule s;
    s.t_lo.resize(n, 2);
    s.t_hi.resize(n, 2);
    s.hw_lo.assign(n, d.hw_lo);
    s.hw_hi.assign(n, d.hw_hi);
    for (int t = 0; t < n; ++t) {
        const bool present = profile.presence[t] != 0;
        s.t_lo(t, 0) = present ? d.day_lo : d.away_lo;
        s.t_lo(t, 1) = present ? d.night_lo : d.away_lo;
        s.t_hi(t, 0) = d.day_hi;
        s.t_hi(t, 1) = d.night_hi;
    }
    s.validate();
    return s;
}

std::vector<double> hot_water_draw(const OccupancyProfile& profile, const DrawTemplate& tmpl) {
    const int n = profile.n_steps();
    std::vector<double> draw(n, 0.0);
    for (int t = 0; t < n; ++t) {
        if (!profile.presence[t]) continue;
        const double hod = std::fmod(t * profile.dt_hours, 24.0);
        if (hod >= tmpl.morning_start_h && hod < tmpl.morning_end_h)
            draw[t] = tmpl.morning_kw;
        else if (hod >= tmpl.evening_start_h && hod < tmpl.evening_end_h)
            draw[t] = tmpl.evening_kw;
    }
    return draw;
}

uint64_t profile_seed(uint64_t master_seed, int profile_index) {
    return derive_seed(derive_seed(master_seed, kStreamOccupancy),
                       static_cast<uint64_t>(profile_index) + 0x100);
}

}  // namespace emc
