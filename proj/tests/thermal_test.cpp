#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "emc/errors.hpp"
#include "emc/rng.hpp"
#include "emc/thermal.hpp"

using namespace emc;

namespace {

BuildingModel toy_model(int n_states, int n_zones) {
    BuildingModel m;
    m.id = "toy";
    m.n_states = n_states;
    m.n_zones = n_zones;
    m.A = Eigen::MatrixXd::Identity(n_states, n_states) * 0.5;
    m.B = Eigen::MatrixXd::Constant(n_states, n_zones, 0.1);
    m.cop_sh = {3.0};
    m.cop_hw = 2.0;
    m.p_hp_max = 1.0;
    m.p_a_max = 0.5;
    m.tank = {0.01, 0.2, 15.0, 200.0};
    m.zone_of_state.assign(n_states, kInteriorState);
    for (int z = 0; z < n_zones && z < n_states; ++z) m.zone_of_state[z] = z;
    return m;
}

}  // namespace

TEST_CASE("step_thermal identity dynamics") {
    BuildingModel m = toy_model(2, 2);
    m.A = Eigen::MatrixXd::Identity(2, 2);
    m.B = Eigen::MatrixXd::Zero(2, 2);
    Eigen::VectorXd x(2), q = Eigen::VectorXd::Zero(2), e = Eigen::VectorXd::Zero(2);
    x << 20.0, 18.0;
    Eigen::VectorXd next = step_thermal(m, x, q, e);
    CHECK(next(0) == 20.0);
    CHECK(next(1) == 18.0);
}

TEST_CASE("step_thermal pure forcing") {
    BuildingModel m = toy_model(2, 2);
    m.A = Eigen::MatrixXd::Zero(2, 2);
    m.B = Eigen::MatrixXd::Zero(2, 2);
    Eigen::VectorXd x(2), q = Eigen::VectorXd::Zero(2), e(2);
    x << 3.0, -7.0;
    e << 21.0, 19.0;
    Eigen::VectorXd next = step_thermal(m, x, q, e);
    CHECK(next(0) == 21.0);
    CHECK(next(1) == 19.0);
}

TEST_CASE("step_thermal one-state direct evaluation") {
    BuildingModel m = toy_model(1, 1);
    m.A = Eigen::MatrixXd::Constant(1, 1, 0.9);
    m.B = Eigen::MatrixXd::Constant(1, 1, 0.1);
    Eigen::VectorXd x(1), q(1), e(1);
    x << 20.0;
    q << 1.0;
    e << 0.5;
    Eigen::VectorXd next = step_thermal(m, x, q, e);
    CHECK(next(0) == doctest::Approx(18.6).epsilon(1e-12));
}

TEST_CASE("step_thermal rejects mismatched dimensions with the field name") {
    BuildingModel m = toy_model(3, 2);
    Eigen::VectorXd x(2), q(2), e(3);
    x.setZero();
    q.setZero();
    e.setZero();
    CHECK_THROWS_WITH_AS(step_thermal(m, x, q, e),
                         doctest::Contains("t_sh"), Error);
    Eigen::VectorXd x3 = Eigen::VectorXd::Zero(3), q1 = Eigen::VectorXd::Zero(1);
    CHECK_THROWS_WITH_AS(step_thermal(m, x3, q1, e), doctest::Contains("q_sh"), Error);
    Eigen::VectorXd e2 = Eigen::VectorXd::Zero(2);
    Eigen::VectorXd q2 = Eigen::VectorXd::Zero(2);
    CHECK_THROWS_WITH_AS(step_thermal(m, x3, q2, e2), doctest::Contains("gains"), Error);
}

TEST_CASE("step_thermal is affine in (x, q, E)") {
    // step(a*x1 + b*x2, ...) = a*step(x1,...) + b*step(x2,...) for a + b = 1.
    BuildingModel m = toy_model(3, 2);
    SplitMix64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd x1(3), x2(3), q1(2), q2(2), e1(3), e2(3);
        for (int i = 0; i < 3; ++i) {
            x1(i) = rng.uniform() * 30.0;
            x2(i) = rng.uniform() * 30.0;
            e1(i) = rng.uniform();
            e2(i) = rng.uniform();
        }
        for (int i = 0; i < 2; ++i) {
            q1(i) = rng.uniform();
            q2(i) = rng.uniform();
        }
        const double a = rng.uniform() * 2.0 - 0.5;
        const double b = 1.0 - a;
        // affine combinations can make q negative; keep them valid
        Eigen::VectorXd qc = (a * q1 + b * q2).cwiseMax(0.0);
        Eigen::VectorXd lhs = step_thermal(m, a * x1 + b * x2, qc, a * e1 + b * e2);
        Eigen::VectorXd rhs = a * step_thermal(m, x1, qc, e1) + b * step_thermal(m, x2, qc, e2);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("step_tank lossless unforced holds temperature") {
    TankParams tank{0.0, 0.2, 15.0, 200.0};
    CHECK(step_tank(tank, 55.0, 0.0, 0.0, 0.0, 2.5, 0.25) == 55.0);
}

TEST_CASE("step_tank ambient is a fixed point") {
    for (double g : {0.0, 0.01, 0.5, 3.0}) {
        TankParams tank{g, 0.2, 15.0, 200.0};
        CHECK(step_tank(tank, 15.0, 0.0, 0.0, 0.0, 2.5, 0.25) ==
              doctest::Approx(15.0).epsilon(1e-15));
    }
}

TEST_CASE("step_tank matches independent evaluation of the implicit update") {
    // Loss term uses the new temperature, so:
    //   t' = (t + dt*G/C*T_env + dt/C*(cop*p_hp + p_a - draw)) / (1 + dt*G/C)
    const double G = 0.02, C = 0.233, T_env = 15.0, dt = 0.25;
    const double cop = 3.0, p_hp = 1.0, p_a = 0.0, draw = 0.0, t_prev = 50.0;
    const double loss = dt * G / C;
    const double expect = (t_prev + loss * T_env + dt / C * (cop * p_hp + p_a - draw)) / (1.0 + loss);
    TankParams tank{G, C, T_env, 200.0};
    CHECK(step_tank(tank, t_prev, p_hp, p_a, draw, cop, dt) ==
          doctest::Approx(expect).epsilon(1e-15));
    CHECK(expect == doctest::Approx(52.41596638655462).epsilon(1e-12));
}

TEST_CASE("step_tank rejects nonpositive capacity") {
    TankParams tank{0.01, 0.0, 15.0, 200.0};
    CHECK_THROWS_AS(step_tank(tank, 50.0, 0.0, 0.0, 0.0, 2.5, 0.25), Error);
}

TEST_CASE("step_tank monotonicity") {
    TankParams tank{0.05, 0.2326, 15.0, 200.0};
    SplitMix64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const double t = 30.0 + rng.uniform() * 30.0;
        const double p = rng.uniform();
        const double d = rng.uniform();
        const double base = step_tank(tank, t, p, 0.1, d, 2.8, 0.25);
        CHECK(step_tank(tank, t + 1.0, p, 0.1, d, 2.8, 0.25) > base);
        CHECK(step_tank(tank, t, p + 0.2, 0.1, d, 2.8, 0.25) > base);
        CHECK(step_tank(tank, t, p, 0.1, d + 0.3, 2.8, 0.25) < base);
    }
}

TEST_CASE("unforced tank converges to ambient geometrically") {
    TankParams tank{0.04, 0.2, 15.0, 200.0};
    const double dt = 0.25;
    const double ratio = 1.0 / (1.0 + dt * tank.G / tank.C);
    double t = 60.0;
    for (int k = 0; k < 200; ++k) {
        const double next = step_tank(tank, t, 0.0, 0.0, 0.0, 2.5, dt);
        CHECK(next - tank.T_env == doctest::Approx((t - tank.T_env) * ratio).epsilon(1e-12));
        t = next;
    }
    CHECK(std::abs(t - tank.T_env) < (60.0 - 15.0) * std::pow(ratio, 200) + 1e-9);
}

TEST_CASE("default building satisfies its invariants and is deterministic") {
    BuildingModel a = default_building();
    BuildingModel b = default_building();
    a.validate();
    CHECK(a.n_states == 4);
    CHECK(a.n_zones == 2);
    CHECK(a.A == b.A);
    CHECK(a.B == b.B);
    CHECK(a.p_hp_max == b.p_hp_max);
    CHECK(a.tank.volume_l == 200.0);
    CHECK(a.tank.T_env == 15.0);
    // 60 degC supply cap leaves room above the default tank band
    CHECK(a.cop_hw >= 1.0);
}

TEST_CASE("default building responds to heat and cools toward ambient") {
    BuildingModel m = default_building();
    Eigen::VectorXd x = Eigen::VectorXd::Constant(4, 20.0);
    Eigen::VectorXd gains = m.exog.col(0) * 0.0;  // 0 degC ambient
    Eigen::VectorXd q = Eigen::VectorXd::Zero(2);
    Eigen::VectorXd cooled = step_thermal(m, x, q, gains);
    CHECK(cooled(0) < 20.0);
    q << 5.0, 5.0;
    Eigen::VectorXd heated = step_thermal(m, x, q, gains);
    CHECK(heated(1) > cooled(1));
    CHECK(heated(3) > cooled(3));
}

TEST_CASE("steady-state heat demand matches a hand-built solve") {
    BuildingModel m = default_building();
    Eigen::VectorXd setpoints(2);
    setpoints << 20.0, 18.0;
    Eigen::VectorXd gains = m.exog.col(0) * (-8.0);  // design ambient
    Eigen::VectorXd q = steady_state_heat_demand(m, setpoints, gains);
    REQUIRE(q.size() == 2);
    CHECK(q.minCoeff() > 0.0);

    // Independent check: plug the implied steady state back into the dynamics.
    Eigen::MatrixXd ImA = Eigen::MatrixXd::Identity(4, 4) - m.A;
    // Recover interior temperatures from the mass rows (states 1 and 3).
    Eigen::VectorXd x(4);
    x(0) = setpoints(0);
    x(2) = setpoints(1);
    Eigen::MatrixXd sub(2, 2);
    sub << ImA(1, 1), ImA(1, 3), ImA(3, 1), ImA(3, 3);
    Eigen::VectorXd rhs(2);
    rhs << m.B.row(1).dot(q) + gains(1) - ImA(1, 0) * x(0) - ImA(1, 2) * x(2),
        m.B.row(3).dot(q) + gains(3) - ImA(3, 0) * x(0) - ImA(3, 2) * x(2);
    Eigen::VectorXd interior = sub.fullPivLu().solve(rhs);
    x(1) = interior(0);
    x(3) = interior(1);
    Eigen::VectorXd next = step_thermal(m, x, q, gains);
    CHECK((next - x).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("model validation catches bad inputs") {
    BuildingModel m = toy_model(2, 1);
    m.A(0, 0) = 1.5;  // unstable
    m.A(1, 1) = 1.5;
    CHECK_THROWS_WITH_AS(m.validate(), doctest::Contains("spectral"), Error);

    BuildingModel bad_dims = toy_model(2, 1);
    bad_dims.B = Eigen::MatrixXd::Zero(3, 1);
    CHECK_THROWS_WITH_AS(bad_dims.validate(), doctest::Contains("B must be"), Error);

    BuildingModel bad_cop = toy_model(2, 1);
    bad_cop.cop_sh = {0.5};
    CHECK_THROWS_AS(bad_cop.validate(), Error);
}
