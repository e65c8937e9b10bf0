#include "emc/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <thread>

#include "emc/errors.hpp"
#include "emc/rng.hpp"

namespace emc {

WeatherSeries synth_weather(uint64_t seed, int n_steps, double dt_hours,
                            const WeatherParams& params) {
    if (n_steps <= 0) fail(ErrorKind::config, "n_steps must be positive");
    WeatherSeries w;
    w.dt_hours = dt_hours;
    w.ambient.resize(n_steps);
    w.solar_kw.resize(n_steps);

    SplitMix64 rng(seed);
    const double phi = 0.95;
    const double innovation = params.noise_sigma * std::sqrt(1.0 - phi * phi);
    double ar1 = 0.0;
    double cloud = 0.25 + 0.75 * rng.uniform();
    int cloud_day = 0;

    for (int t = 0; t < n_steps; ++t) {
        const double hours = t * dt_hours;
        const double hod = std::fmod(hours, 24.0);
        const double day = hours / 24.0;
        ar1 = phi * ar1 + innovation * rng.normal();
        double temp = params.base_degc +
                      params.daily_amp * std::cos(2.0 * M_PI * (hod - 14.0) / 24.0) +
                      params.synoptic_amp *
                          std::sin(2.0 * M_PI * day / params.synoptic_days + 1.3) +
                      ar1;
        w.ambient[t] = std::clamp(temp, params.clamp_lo, params.clamp_hi);

        if (static_cast<int>(day) != cloud_day) {
            cloud_day = static_cast<int>(day);
            cloud = 0.25 + 0.75 * rng.uniform();
        }
        if (hod >= 8.5 && hod <= 16.5) {
            const double arc = std::sin(M_PI * (hod - 8.5) / 8.0);
            w.solar_kw[t] = params.solar_peak_kw * arc * arc * cloud;
        } else {
            w.solar_kw[t] = 0.0;
        }
    }
    return w;
}

ExogenousSeries exogenous_from_weather(const BuildingModel& building,
                                       const WeatherSeries& weather) {
    if (building.exog.size() == 0)
        fail(ErrorKind::config, "building has no exogenous coupling columns");
    const int n = weather.n_steps();
    ExogenousSeries exo;
    exo.dt_hours = weather.dt_hours;
    exo.ambient = weather.ambient;
    exo.hw_draw.assign(n, 0.0);
    exo.E.resize(n, building.n_states);
    for (int t = 0; t < n; ++t)
        exo.E.row(t) = building.exog.col(0) * weather.ambient[t] +
                       building.exog.col(1) * weather.solar_kw[t];
    return exo;
}

ScenarioConfig make_scenario(const ScenarioSpec& spec, const OccupancyProfile& profile) {
    if (profile.n_steps() < spec.horizon_steps)
        fail(ErrorKind::dimension, "profile shorter than the scenario horizon");
    if (spec.exogenous.E.rows() < spec.horizon_steps)
        fail(ErrorKind::dimension, "exogenous series shorter than the scenario horizon");

    ScenarioConfig cfg;
    cfg.building = spec.building;
    cfg.horizon_steps = spec.horizon_steps;
    cfg.window_steps = spec.window_steps;
    cfg.lookahead_steps = spec.lookahead_steps;
    cfg.initial_state = spec.initial_state;
    cfg.allow_relaxation = spec.allow_relaxation;
    cfg.relax_penalty = spec.relax_penalty;
    cfg.profile = profile;

    const int H = spec.horizon_steps;
    cfg.gains.dt_hours = spec.dt_hours;
    cfg.gains.ambient.assign(spec.exogenous.ambient.begin(),
                             spec.exogenous.ambient.begin() + H);
    cfg.gains.E = spec.exogenous.E.topRows(H);
    const bool have_internal = spec.building.exog.size() > 0;
    for (int t = 0; t < H; ++t) {
        if (profile.presence[t] && have_internal)
            cfg.gains.E.row(t) +=
                spec.building.exog.col(2) * spec.internal_gains.present_kw;
    }
    if (spec.draw_from_template) {
        cfg.gains.hw_draw = hot_water_draw(profile, spec.draw);
        cfg.gains.hw_draw.resize(H);
    } else {
        if (static_cast<int>(spec.exogenous.hw_draw.size()) < H)
            fail(ErrorKind::dimension, "exogenous hw_draw shorter than the horizon");
        cfg.gains.hw_draw.assign(spec.exogenous.hw_draw.begin(),
                                 spec.exogenous.hw_draw.begin() + H);
        for (int t = 0; t < H; ++t)
            if (!profile.presence[t]) cfg.gains.hw_draw[t] = 0.0;
    }
    cfg.comfort = comfort_bounds(profile, spec.comfort);
    return cfg;
}

EnsembleResult run_ensemble(const ScenarioSpec& spec, int n_profiles, uint64_t master_seed,
                            int n_threads) {
    if (n_profiles < 1) fail(ErrorKind::config, "n_profiles must be at least 1");
    if (n_threads <= 0) n_threads = static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::clamp(n_threads, 1, n_profiles);

    std::vector<std::optional<SimulationTrace>> slots(n_profiles);
    std::vector<EnsembleFailure> failures;
    std::mutex failures_mutex;
    std::atomic<int> next{0};

    auto worker = [&]() {
        while (true) {
            const int k = next.fetch_add(1);
            if (k >= n_profiles) return;
            const uint64_t seed = profile_seed(master_seed, k);
            try {
                OccupancyProfile profile =
                    generate_profile(seed, spec.horizon_steps, spec.dt_hours,
                                     spec.occupancy.p_arrive, spec.occupancy.p_leave);
                ScenarioConfig cfg = make_scenario(spec, profile);
                slots[k] = simulate_horizon(cfg);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failures_mutex);
                failures.push_back({k, seed, e.what()});
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::sort(failures.begin(), failures.end(),
              [](const EnsembleFailure& a, const EnsembleFailure& b) {
                  return a.profile_index < b.profile_index;
              });
    EnsembleResult result;
    result.failures = std::move(failures);
    for (auto& slot : slots)
        if (slot.has_value()) result.traces.push_back(std::move(*slot));
    return result;
}

double peak_heat_demand(const BuildingModel& building, const ExogenousSeries& exogenous,
                        const ComfortDefaults& comfort, const DrawTemplate& draw) {
    // Sizing load: steady-state heating that holds the occupied setpoints
    // under each step's exogenous gains, plus the concurrent full-occupancy
    // hot-water draw. Deliberately excludes internal gains.
    Eigen::VectorXd setpoints(2);
    setpoints << comfort.day_lo, comfort.night_lo;

    OccupancyProfile always_home;
    always_home.dt_hours = exogenous.dt_hours;
    always_home.presence.assign(exogenous.E.rows(), 1);
    const std::vector<double> full_draw = hot_water_draw(always_home, draw);

    double peak = 0.0;
    for (int t = 0; t < exogenous.E.rows(); ++t) {
        Eigen::VectorXd q = steady_state_heat_demand(building, setpoints, exogenous.E.row(t));
        const double total = q.cwiseMax(0.0).sum() + full_draw[t];
        peak = std::max(peak, total);
    }
    return peak;
}

std::vector<double> cop_schedule_affine(const std::vector<double>& ambient, double cop_ref,
                                        double t_ref, double slope) {
    std::vector<double> cop(ambient.size());
    for (size_t t = 0; t < ambient.size(); ++t)
        cop[t] = std::max(1.0, cop_ref + slope * (ambient[t] - t_ref));
    return cop;
}

std::vector<double> synth_prices(int n_steps, double dt_hours) {
    std::vector<double> prices(n_steps);
    for (int t = 0; t < n_steps; ++t) {
        const double hours = t * dt_hours;
        const double hod = std::fmod(hours, 24.0);
        const double day = hours / 24.0;
        const double morning = 20.0 * std::exp(-0.5 * std::pow((hod - 8.5) / 1.5, 2.0));
        const double evening = 45.0 * std::exp(-0.5 * std::pow((hod - 18.5) / 2.0, 2.0));
        prices[t] = 35.0 + morning + evening + 8.0 * std::sin(2.0 * M_PI * day / 7.0);
    }
    return prices;
}

ScenarioSpec default_scenario(uint64_t master_seed) {
    ScenarioSpec spec;
    spec.building = default_building();
    spec.horizon_steps = kDefaultHorizonSteps;
    spec.dt_hours = 0.25;
    WeatherSeries weather = synth_weather(derive_seed(master_seed, kStreamWeather),
                                          spec.horizon_steps, spec.dt_hours);
    spec.exogenous = exogenous_from_weather(spec.building, weather);
    // Floor slabs in a floor-heated building run a few degrees above the air;
    // starting them warm also gives day one the same preheat margin that the
    // lookahead gives every later morning.
    spec.initial_state.t_sh.resize(4);
    spec.initial_state.t_sh << 20.0, 22.5, 18.0, 20.5;
    spec.initial_state.t_hw = 50.0;
    return spec;
}

}  // namespace emc
