#include "emc/schedule.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <limits>
#include <string>

#include "emc/errors.hpp"

namespace emc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Structural crash basis for a strict window: per step the balance rows take
// p_hp, p_a and the first zone's q, and the dynamics rows take their own
// temperature variables. Ordered this way the basis is lower-triangular and
// never singular, which spares phase 1 from driving out artificials.
LpBasis natural_basis(const WindowLp& w) {
    LpBasis basis;
    const int rows_per_step = 4 + w.n_states;
    basis.basic.resize(w.n_steps * rows_per_step);
    basis.at_upper.assign(w.lp.n_vars() + w.lp.n_ub(), 0);
    for (int k = 0; k < w.n_steps; ++k) {
        int r = k * rows_per_step;
        basis.basic[r + 0] = w.var_p_hp(k);
        basis.basic[r + 1] = w.var_p_a(k);
        basis.basic[r + 2] = w.var_q_sh(k, 0);
        for (int p = 0; p < w.n_states; ++p) basis.basic[r + 3 + p] = w.var_t_sh(k, p);
        basis.basic[r + 3 + w.n_states] = w.var_t_hw(k);
    }
    return basis;
}

std::string var_label(const WindowLp& w, int var) {
    if (var >= 0 && var < static_cast<int>(w.lp.names.size())) return w.lp.names[var];
    return "variable " + std::to_string(var);
}

}  // namespace

void ScenarioConfig::validate() const {
    building.validate();
    gains.validate(building.n_states);
    comfort.validate();
    if (horizon_steps <= 0) fail(ErrorKind::config, "horizon_steps must be positive");
    if (window_steps <= 0 || window_steps > horizon_steps)
        fail(ErrorKind::config, "window_steps must lie in [1, horizon_steps]");
    if (lookahead_steps < 0) fail(ErrorKind::config, "lookahead_steps must be nonnegative");
    if (gains.n_steps() < horizon_steps)
        fail(ErrorKind::dimension, "gain schedule covers " + std::to_string(gains.n_steps()) +
                                       " steps, horizon needs " + std::to_string(horizon_steps));
    if (comfort.n_steps() < horizon_steps)
        fail(ErrorKind::dimension, "comfort schedule covers " + std::to_string(comfort.n_steps()) +
                                       " steps, horizon needs " + std::to_string(horizon_steps));
    if (profile.n_steps() < horizon_steps)
        fail(ErrorKind::dimension, "occupancy profile covers " + std::to_string(profile.n_steps()) +
                                       " steps, horizon needs " + std::to_string(horizon_steps));
    if (comfort.t_lo.cols() != building.n_zones)
        fail(ErrorKind::dimension, "comfort schedule has " + std::to_string(comfort.t_lo.cols()) +
                                       " zones, building has " + std::to_string(building.n_zones));
    if (initial_state.t_sh.size() != building.n_states)
        fail(ErrorKind::dimension, "initial state has " + std::to_string(initial_state.t_sh.size()) +
                                       " thermal states, building has " +
                                       std::to_string(building.n_states));
}

void SimulationTrace::check_invariants(const BuildingModel& building) const {
    const int n = n_steps();
    for (int t = 0; t < n; ++t) {
        if (std::abs(d_h[t] - p_hp[t] - p_a[t]) > 1e-9)
            fail(ErrorKind::solver, "power balance violated at step " + std::to_string(t));
        if (std::abs(p_hp[t] - p_hp_sh[t] - p_hp_hw[t]) > 1e-9 ||
            p_hp[t] > building.p_hp_max + 1e-7)
            fail(ErrorKind::solver, "heat pump capacity or split violated at step " + std::to_string(t));
        if (std::abs(p_a[t] - p_a_sh[t] - p_a_hw[t]) > 1e-9 || p_a[t] > building.p_a_max + 1e-7)
            fail(ErrorKind::solver, "auxiliary capacity or split violated at step " + std::to_string(t));
        const double least = std::min({p_hp_sh[t], p_hp_hw[t], p_a_sh[t], p_a_hw[t],
                                       q_sh.row(t).minCoeff()});
        if (least < -1e-9)
            fail(ErrorKind::solver, "negative power at step " + std::to_string(t));
    }
}

WindowLp build_window_lp(const ScenarioConfig& cfg, int start_step, int n_steps,
                         const ThermalState& x0, bool relaxed) {
    const BuildingModel& bm = cfg.building;
    const int N = bm.n_states;
    const int Z = bm.n_zones;
    if (start_step < 0 || n_steps <= 0 || start_step + n_steps > cfg.horizon_steps)
        fail(ErrorKind::config, "window [" + std::to_string(start_step) + ", " +
                                    std::to_string(start_step + n_steps) + ") outside horizon");
    if (!x0.t_sh.allFinite() || !std::isfinite(x0.t_hw))
        fail(ErrorKind::config, "window initial state must be finite");
    if (x0.t_sh.size() != N)
        fail(ErrorKind::dimension,
             "window initial state has " + std::to_string(x0.t_sh.size()) + " states, expected " +
                 std::to_string(N) + " (dynamics family)");

    WindowLp w;
    w.start_step = start_step;
    w.n_steps = n_steps;
    w.n_states = N;
    w.n_zones = Z;
    w.relaxed = relaxed;
    w.vars_per_step = 7 + Z + N;

    // bounded states get a lower-bound slack in relaxed mode, plus one for the tank
    std::vector<int> bounded_states;
    for (int p = 0; p < N; ++p)
        if (bm.zone_of_state[p] != kInteriorState) bounded_states.push_back(p);
    const int slacks_per_step = relaxed ? static_cast<int>(bounded_states.size()) + 1 : 0;

    const int n_core = n_steps * w.vars_per_step;
    const int n_vars = n_core + n_steps * slacks_per_step;
    w.slack_base = n_core;
    const int n_eq = n_steps * (4 + N);
    const int n_ub = relaxed ? n_steps * slacks_per_step : 0;

    LpInstance& lp = w.lp;
    lp.c = Eigen::VectorXd::Zero(n_vars);
    lp.A_eq = Eigen::MatrixXd::Zero(n_eq, n_vars);
    lp.b_eq = Eigen::VectorXd::Zero(n_eq);
    lp.A_ub = Eigen::MatrixXd::Zero(n_ub, n_vars);
    lp.b_ub = Eigen::VectorXd::Zero(n_ub);
    lp.lo = Eigen::VectorXd::Constant(n_vars, -kInf);
    lp.hi = Eigen::VectorXd::Constant(n_vars, kInf);
    lp.names.resize(n_vars);

    const double dt = cfg.gains.dt_hours;
    const double tank_loss = dt * bm.tank.G / bm.tank.C;
    const double tank_gain = dt / bm.tank.C;

    // In relaxed mode the slack costs are 1 and the energy costs
    // 1/relax_penalty, preserving the penalty ratio while keeping the
    // objective O(1); penalty-sized coefficients destroy the reduced-cost
    // tolerances.
    const double energy_cost = relaxed ? 1.0 / cfg.relax_penalty : 1.0;

    for (int k = 0; k < n_steps; ++k) {
        const int t = start_step + k;
        const std::string st = "[" + std::to_string(t) + "]";
        const int row0 = k * (4 + N);

        // objective: electrical demand d_h = p_hp + p_a per step
        lp.c[w.var_p_hp(k)] = energy_cost;
        lp.c[w.var_p_a(k)] = energy_cost;

        // power split balances
        lp.A_eq(row0 + 0, w.var_p_hp(k)) = 1.0;
        lp.A_eq(row0 + 0, w.var_p_hp_sh(k)) = -1.0;
        lp.A_eq(row0 + 0, w.var_p_hp_hw(k)) = -1.0;
        lp.A_eq(row0 + 1, w.var_p_a(k)) = 1.0;
        lp.A_eq(row0 + 1, w.var_p_a_sh(k)) = -1.0;
        lp.A_eq(row0 + 1, w.var_p_a_hw(k)) = -1.0;

        // heat production: sum_z q_z = cop_sh * p_hp_sh + p_a_sh
        for (int z = 0; z < Z; ++z) lp.A_eq(row0 + 2, w.var_q_sh(k, z)) = 1.0;
        lp.A_eq(row0 + 2, w.var_p_hp_sh(k)) = -bm.cop_sh_at(t);
        lp.A_eq(row0 + 2, w.var_p_a_sh(k)) = -1.0;

        // envelope dynamics: t_sh(k) - A t_sh(k-1) - B q(k) = E(t)
        for (int p = 0; p < N; ++p) {
            const int row = row0 + 3 + p;
            lp.A_eq(row, w.var_t_sh(k, p)) = 1.0;
            for (int z = 0; z < Z; ++z) lp.A_eq(row, w.var_q_sh(k, z)) = -bm.B(p, z);
            lp.b_eq[row] = cfg.gains.E(t, p);
            if (k == 0) {
                lp.b_eq[row] += bm.A.row(p).dot(x0.t_sh);
            } else {
                for (int pp = 0; pp < N; ++pp)
                    lp.A_eq(row, w.var_t_sh(k - 1, pp)) = -bm.A(p, pp);
            }
        }

        // tank recursion in implicit form:
        // (1 + loss) t_hw(k) - t_hw(k-1) - dt/C (cop_hw p_hp_hw + p_a_hw)
        //   = loss T_env - dt/C draw
        const int tank_row = row0 + 3 + N;
        lp.A_eq(tank_row, w.var_t_hw(k)) = 1.0 + tank_loss;
        lp.A_eq(tank_row, w.var_p_hp_hw(k)) = -tank_gain * bm.cop_hw;
        lp.A_eq(tank_row, w.var_p_a_hw(k)) = -tank_gain;
        lp.b_eq[tank_row] = tank_loss * bm.tank.T_env - tank_gain * cfg.gains.hw_draw[t];
        if (k == 0)
            lp.b_eq[tank_row] += x0.t_hw;
        else
            lp.A_eq(tank_row, w.var_t_hw(k - 1)) = -1.0;

        // bounds
        lp.lo[w.var_p_hp(k)] = 0.0;
        lp.hi[w.var_p_hp(k)] = bm.p_hp_max;
        lp.lo[w.var_p_a(k)] = 0.0;
        lp.hi[w.var_p_a(k)] = bm.p_a_max;
        for (int v : {w.var_p_hp_sh(k), w.var_p_hp_hw(k), w.var_p_a_sh(k), w.var_p_a_hw(k)})
            lp.lo[v] = 0.0;
        for (int z = 0; z < Z; ++z) lp.lo[w.var_q_sh(k, z)] = 0.0;
        for (int p = 0; p < N; ++p) {
            const int z = bm.zone_of_state[p];
            if (z == kInteriorState) continue;
            if (!relaxed) lp.lo[w.var_t_sh(k, p)] = cfg.comfort.t_lo(t, z);
            lp.hi[w.var_t_sh(k, p)] = cfg.comfort.t_hi(t, z);
        }
        if (!relaxed) lp.lo[w.var_t_hw(k)] = cfg.comfort.hw_lo[t];
        lp.hi[w.var_t_hw(k)] = cfg.comfort.hw_hi[t];

        lp.names[w.var_p_hp(k)] = "p_hp" + st;
        lp.names[w.var_p_a(k)] = "p_a" + st;
        lp.names[w.var_p_hp_sh(k)] = "p_hp_sh" + st;
        lp.names[w.var_p_hp_hw(k)] = "p_hp_hw" + st;
        lp.names[w.var_p_a_sh(k)] = "p_a_sh" + st;
        lp.names[w.var_p_a_hw(k)] = "p_a_hw" + st;
        for (int z = 0; z < Z; ++z)
            lp.names[w.var_q_sh(k, z)] = "q_sh" + st + "[zone " + std::to_string(z) + "]";
        for (int p = 0; p < N; ++p)
            lp.names[w.var_t_sh(k, p)] = "t_sh" + st + "[state " + std::to_string(p) + "]";
        lp.names[w.var_t_hw(k)] = "t_hw" + st;

        // elastic lower bounds: t + s >= t_lo as -t - s <= -t_lo
        if (relaxed) {
            const int nb = static_cast<int>(bounded_states.size());
            for (int b = 0; b <= nb; ++b) {
                const int svar = w.slack_base + k * slacks_per_step + b;
                const int srow = k * slacks_per_step + b;
                lp.lo[svar] = 0.0;
                lp.c[svar] = 1.0;
                lp.A_ub(srow, svar) = -1.0;
                if (b < nb) {
                    const int p = bounded_states[b];
                    lp.A_ub(srow, w.var_t_sh(k, p)) = -1.0;
                    lp.b_ub[srow] = -cfg.comfort.t_lo(t, bm.zone_of_state[p]);
                    lp.names[svar] = "comfort_slack" + st + "[state " + std::to_string(p) + "]";
                } else {
                    lp.A_ub(srow, w.var_t_hw(k)) = -1.0;
                    lp.b_ub[srow] = -cfg.comfort.hw_lo[t];
                    lp.names[svar] = "tank_slack" + st;
                }
            }
        }
    }
    return w;
}

SimulationTrace simulate_horizon(const ScenarioConfig& cfg) {
    cfg.validate();
    const int H = cfg.horizon_steps;
    const BuildingModel& bm = cfg.building;
    const int N = bm.n_states;
    const int Z = bm.n_zones;

    SimulationTrace trace;
    trace.building_id = bm.id;
    trace.profile_seed = cfg.profile.seed;
    trace.dt_hours = cfg.gains.dt_hours;
    trace.d_h.resize(H);
    trace.p_hp.resize(H);
    trace.p_a.resize(H);
    trace.p_hp_sh.resize(H);
    trace.p_hp_hw.resize(H);
    trace.p_a_sh.resize(H);
    trace.p_a_hw.resize(H);
    trace.t_hw.resize(H);
    trace.q_sh.resize(H, Z);
    trace.t_sh.resize(H, N);
    trace.presence.resize(H);

    ThermalState x = cfg.initial_state;
    LpBasis prev_basis;
    int prev_len = -1;
    int window_index = 0;

    for (int start = 0; start < H; start += cfg.window_steps, ++window_index) {
        const int commit = std::min(cfg.window_steps, H - start);
        const int solve_len = std::min(commit + cfg.lookahead_steps, H - start);

        WindowLp w = build_window_lp(cfg, start, solve_len, x, false);
        LpOptions opts;
        LpBasis crash = natural_basis(w);
        opts.warm = (solve_len == prev_len && !prev_basis.empty()) ? &prev_basis : &crash;
        LpSolution sol = solve_lp(w.lp, opts);

        if (sol.status == LpStatus::iteration_limit)
            fail(ErrorKind::solver, "window at step " + std::to_string(start) +
                                        " hit the simplex iteration limit");
        if (sol.status == LpStatus::unbounded)
            fail(ErrorKind::solver, "window at step " + std::to_string(start) + " is unbounded");

        if (sol.status == LpStatus::infeasible) {
            if (!cfg.allow_relaxation)
                fail(ErrorKind::infeasible,
                     "window at step " + std::to_string(start) + " infeasible near " +
                         var_label(w, sol.worst_var) + " (relaxation disabled)");
            WindowLp relaxed = build_window_lp(cfg, start, solve_len, x, true);
            LpSolution rsol = solve_lp(relaxed.lp);
            if (rsol.status != LpStatus::optimal) {
                if (const char* dump_path = std::getenv("EMC_LP_DUMP")) {
                    std::FILE* f = std::fopen(dump_path, "w");
                    if (f) {
                        const std::string text = relaxed.lp.dump();
                        std::fwrite(text.data(), 1, text.size(), f);
                        std::fclose(f);
                    }
                    std::fprintf(stderr,
                                 "relaxed window: status %s iters %d max_inf %.6g worst %d\n",
                                 to_string(rsol.status), rsol.iterations,
                                 rsol.max_infeasibility, rsol.worst_var);
                }
                fail(ErrorKind::infeasible,
                     "window at step " + std::to_string(start) +
                         " infeasible even with elastic lower bounds, near " +
                         var_label(relaxed, rsol.worst_var));
            }
            trace.relaxed_windows.push_back(window_index);
            w = std::move(relaxed);
            sol = std::move(rsol);
            prev_basis = LpBasis{};  // relaxed basis has a different shape
            prev_len = -1;
        } else {
            prev_basis = sol.basis;
            prev_len = solve_len;
        }

        for (int k = 0; k < commit; ++k) {
            const int t = start + k;
            const Eigen::VectorXd& xv = sol.x;
            trace.p_hp[t] = xv[w.var_p_hp(k)];
            trace.p_a[t] = xv[w.var_p_a(k)];
            trace.d_h[t] = trace.p_hp[t] + trace.p_a[t];
            trace.p_hp_sh[t] = xv[w.var_p_hp_sh(k)];
            trace.p_hp_hw[t] = xv[w.var_p_hp_hw(k)];
            trace.p_a_sh[t] = xv[w.var_p_a_sh(k)];
            trace.p_a_hw[t] = xv[w.var_p_a_hw(k)];
            for (int z = 0; z < Z; ++z) trace.q_sh(t, z) = xv[w.var_q_sh(k, z)];
            for (int p = 0; p < N; ++p) trace.t_sh(t, p) = xv[w.var_t_sh(k, p)];
            trace.t_hw[t] = xv[w.var_t_hw(k)];
            trace.presence[t] = cfg.profile.presence[t];
        }

        // terminal committed state seeds the next window exactly
        x.t_sh = trace.t_sh.row(start + commit - 1);
        x.t_hw = trace.t_hw[start + commit - 1];
    }

    trace.check_invariants(bm);
    return trace;
}

}  // namespace emc
