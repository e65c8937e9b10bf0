#include "emc/thermal.hpp"

#include <cmath>
#include <sstream>

#include "emc/errors.hpp"

namespace emc {

namespace {

void require_finite(const Eigen::MatrixXd& m, const std::string& field) {
    if (!m.allFinite()) fail(ErrorKind::dimension, "non-finite values in " + field);
}

double spectral_radius(const Eigen::MatrixXd& A) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

void TankParams::validate() const {
    if (!(C > 0.0)) fail(ErrorKind::config, "tank.C must be positive, got " + std::to_string(C));
    if (G < 0.0) fail(ErrorKind::config, "tank.G must be nonnegative, got " + std::to_string(G));
    if (!std::isfinite(T_env)) fail(ErrorKind::config, "tank.T_env must be finite");
}

double BuildingModel::cop_sh_at(int step) const {
    if (cop_sh.empty()) fail(ErrorKind::config, "cop_sh schedule is empty");
    if (cop_sh.size() == 1) return cop_sh[0];
    if (step < 0 || step >= static_cast<int>(cop_sh.size()))
        fail(ErrorKind::dimension,
             "cop_sh schedule has " + std::to_string(cop_sh.size()) + " steps, asked for step " +
                 std::to_string(step));
    return cop_sh[step];
}

void BuildingModel::validate() const {
    if (n_states <= 0) fail(ErrorKind::config, "n_states must be positive");
    if (n_zones <= 0) fail(ErrorKind::config, "n_zones must be positive");
    if (A.rows() != n_states || A.cols() != n_states)
        fail(ErrorKind::dimension, "A must be " + std::to_string(n_states) + "x" +
                                       std::to_string(n_states) + ", got " +
                                       std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
    if (B.rows() != n_states || B.cols() != n_zones)
        fail(ErrorKind::dimension, "B must be " + std::to_string(n_states) + "x" +
                                       std::to_string(n_zones) + ", got " +
                                       std::to_string(B.rows()) + "x" + std::to_string(B.cols()));
    require_finite(A, "A");
    require_finite(B, "B");
    if (cop_sh.empty()) fail(ErrorKind::config, "cop_sh must have at least one entry");
    for (double c : cop_sh)
        if (!(c >= 1.0)) fail(ErrorKind::config, "cop_sh must be >= 1, got " + std::to_string(c));
    if (!(cop_hw >= 1.0)) fail(ErrorKind::config, "cop_hw must be >= 1, got " + std::to_string(cop_hw));
    if (!(p_hp_max > 0.0)) fail(ErrorKind::config, "p_hp_max must be positive");
    if (p_a_max < 0.0) fail(ErrorKind::config, "p_a_max must be nonnegative");
    tank.validate();
    if (static_cast<int>(zone_of_state.size()) != n_states)
        fail(ErrorKind::dimension, "zone_of_state must have n_states entries, got " +
                                       std::to_string(zone_of_state.size()));
    for (int z : zone_of_state)
        if (z != kInteriorState && (z < 0 || z >= n_zones))
            fail(ErrorKind::config, "zone_of_state entry " + std::to_string(z) + " out of range");
    if (exog.size() != 0 && (exog.rows() != n_states || exog.cols() != 3))
        fail(ErrorKind::dimension, "exog must be n_states x 3 when present");
    double rho = spectral_radius(A);
    if (!(rho < 1.0 + 1e-9))
        fail(ErrorKind::config,
             "unstable envelope: spectral radius of A is " + std::to_string(rho));
}

void GainSchedule::validate(int n_states) const {
    const auto steps = hw_draw.size();
    if (steps == 0) fail(ErrorKind::config, "gain schedule is empty");
    if (ambient.size() != steps)
        fail(ErrorKind::dimension, "ambient series length " + std::to_string(ambient.size()) +
                                       " != hw_draw length " + std::to_string(steps));
    if (E.rows() != static_cast<Eigen::Index>(steps) || E.cols() != n_states)
        fail(ErrorKind::dimension, "E must be " + std::to_string(steps) + "x" +
                                       std::to_string(n_states) + ", got " + std::to_string(E.rows()) +
                                       "x" + std::to_string(E.cols()));
    if (!(dt_hours > 0.0)) fail(ErrorKind::config, "dt_hours must be positive");
    for (double d : hw_draw)
        if (d < 0.0) fail(ErrorKind::config, "hw_draw must be nonnegative");
    require_finite(E, "E");
}

Eigen::VectorXd step_thermal(const BuildingModel& model, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& q_sh, const Eigen::VectorXd& gains) {
    if (x.size() != model.n_states)
        fail(ErrorKind::dimension, "state vector t_sh has " + std::to_string(x.size()) +
                                       " entries, model expects " + std::to_string(model.n_states));
    if (q_sh.size() != model.n_zones)
        fail(ErrorKind::dimension, "q_sh has " + std::to_string(q_sh.size()) +
                                       " entries, model expects " + std::to_string(model.n_zones));
    if (gains.size() != model.n_states)
        fail(ErrorKind::dimension, "gains row has " + std::to_string(gains.size()) +
                                       " entries, model expects " + std::to_string(model.n_states));
    if (q_sh.minCoeff() < 0.0) fail(ErrorKind::config, "q_sh must be nonnegative");
    return model.A * x + model.B * q_sh + gains;
}

double step_tank(const TankParams& tank, double t_prev, double p_hp_hw, double p_a_hw,
                 double draw, double cop_hw, double dt_hours) {
    tank.validate();
    if (!(dt_hours > 0.0)) fail(ErrorKind::config, "dt_hours must be positive");
    if (!std::isfinite(t_prev) || !std::isfinite(p_hp_hw) || !std::isfinite(p_a_hw) ||
        !std::isfinite(draw))
        fail(ErrorKind::config, "step_tank inputs must be finite");
    const double loss = dt_hours * tank.G / tank.C;
    const double inject = dt_hours / tank.C * (cop_hw * p_hp_hw + p_a_hw - draw);
    return (t_prev + loss * tank.T_env + inject) / (1.0 + loss);
}

Eigen::VectorXd steady_state_heat_demand(const BuildingModel& model,
                                         const Eigen::VectorXd& setpoints,
                                         const Eigen::VectorXd& gains_row) {
    if (setpoints.size() != model.n_zones)
        fail(ErrorKind::dimension, "setpoints must have one entry per zone");
    if (gains_row.size() != model.n_states)
        fail(ErrorKind::dimension, "gains row must have n_states entries");

    // Solve (I - A) x = B q + E with the zone air states pinned at their
    // setpoints; unknowns are the interior temperatures and q per zone.
    const int n = model.n_states;
    const int nz = model.n_zones;
    Eigen::MatrixXd ImA = Eigen::MatrixXd::Identity(n, n) - model.A;

    std::vector<int> interior;
    for (int p = 0; p < n; ++p)
        if (model.zone_of_state[p] == kInteriorState) interior.push_back(p);
    const int ni = static_cast<int>(interior.size());
    if (ni + nz != n)
        fail(ErrorKind::config, "steady-state sizing expects one pinned state per zone");

    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd rhs = gains_row;
    for (int i = 0; i < ni; ++i) M.col(i) = ImA.col(interior[i]);
    M.rightCols(nz) = -model.B;
    for (int p = 0; p < n; ++p) {
        int z = model.zone_of_state[p];
        if (z != kInteriorState) rhs -= ImA.col(p) * setpoints[z];
    }
    Eigen::VectorXd u = Eigen::FullPivLU<Eigen::MatrixXd>(M).solve(rhs);
    return u.tail(nz);
}

void discretize_rc(const DefaultBuildingRc& rc, Eigen::MatrixXd& A, Eigen::MatrixXd& B,
                   Eigen::MatrixXd& exog) {
    // Continuous balance per state (temperatures degC, powers kW, C kWh/degC):
    //   C_ad Tad' = ua_d (Tamb - Tad) + h_d (Tmd - Tad) + h_zz (Tan - Tad) + gains
    //   C_md Tmd' = h_d (Tad - Tmd) + q_day + solar share
    // and symmetrically for the night zone.
    Eigen::Matrix4d Ac = Eigen::Matrix4d::Zero();
    Eigen::Matrix<double, 4, 2> Bc = Eigen::Matrix<double, 4, 2>::Zero();
    Eigen::Matrix<double, 4, 3> Fc = Eigen::Matrix<double, 4, 3>::Zero();
    const double cad = rc.c_air_day, cmd = rc.c_mass_day;
    const double can = rc.c_air_night, cmn = rc.c_mass_night;

    Ac(0, 0) = -(rc.ua_day + rc.h_am_day + rc.h_zz) / cad;
    Ac(0, 1) = rc.h_am_day / cad;
    Ac(0, 2) = rc.h_zz / cad;
    Ac(1, 0) = rc.h_am_day / cmd;
    Ac(1, 1) = -rc.h_am_day / cmd;
    Ac(2, 2) = -(rc.ua_night + rc.h_am_night + rc.h_zz) / can;
    Ac(2, 3) = rc.h_am_night / can;
    Ac(2, 0) = rc.h_zz / can;
    Ac(3, 2) = rc.h_am_night / cmn;
    Ac(3, 3) = -rc.h_am_night / cmn;

    Bc(1, 0) = 1.0 / cmd;  // floor heating into the mass nodes
    Bc(3, 1) = 1.0 / cmn;

    Fc(0, 0) = rc.ua_day / cad;  // ambient coupling
    Fc(2, 0) = rc.ua_night / can;
    const double caps[4] = {cad, cmd, can, cmn};
    for (int p = 0; p < 4; ++p) {
        Fc(p, 1) = rc.solar_frac[p] / caps[p];
        Fc(p, 2) = rc.internal_frac[p] / caps[p];
    }

    // Sub-stepped forward Euler over dt: A = (I + hAc)^k, and inputs held
    // constant across the step accumulate the geometric sum of the powers.
    const double h = rc.dt_hours / rc.substeps;
    Eigen::Matrix4d step = Eigen::Matrix4d::Identity() + h * Ac;
    Eigen::Matrix4d power = Eigen::Matrix4d::Identity();
    Eigen::Matrix4d sum = Eigen::Matrix4d::Zero();
    for (int j = 0; j < rc.substeps; ++j) {
        sum += power;
        power = step * power;
    }
    A = power;
    B = sum * (h * Bc);
    exog = sum * (h * Fc);
}

BuildingModel default_building() {
    DefaultBuildingRc rc;
    BuildingModel m;
    m.id = "synthetic-lowenergy-2zone-200l";
    m.n_states = 4;
    m.n_zones = 2;
    discretize_rc(rc, m.A, m.B, m.exog);
    m.zone_of_state = {0, kInteriorState, 1, kInteriorState};
    m.cop_sh = {3.5};  // nominal floor-heating supply of 35 degC
    m.cop_hw = 2.8;

    // Sized against the reference four-week scenario's peak heat demand of
    // 9.3012666108 kW thermal (steady-state load at occupied setpoints plus
    // the concurrent hot-water draw; see peak_heat_demand): the heat pump
    // covers 80% of the peak, the resistance heater the remaining 20%.
    m.p_hp_max = 2.1260037967;  // 0.8 * peak / cop_sh
    m.p_a_max = 1.8602533222;   // 0.2 * peak

    m.tank.volume_l = 200.0;
    m.tank.C = 0.2326;  // 200 l of water, kWh/degC
    m.tank.G = 0.0025;
    m.tank.T_env = 15.0;
    m.validate();
    return m;
}

}  // namespace emc
