#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "emc/errors.hpp"
#include "emc/lp.hpp"
#include "emc/rng.hpp"

using namespace emc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LpInstance box_lp(int n) {
    LpInstance inst;
    inst.c = Eigen::VectorXd::Zero(n);
    inst.lo = Eigen::VectorXd::Zero(n);
    inst.hi = Eigen::VectorXd::Constant(n, kInf);
    return inst;
}

// Exhaustive basic-solution enumeration for min c'x, A_ub x <= b_ub,
// lo <= x <= hi (all bounds finite): every vertex has n active constraints
// drawn from rows and bounds. Independent of the simplex path.
double vertex_enumeration_optimum(const LpInstance& inst) {
    const int n = inst.n_vars();
    const int k = inst.n_ub();
    const int total = k + 2 * n;
    std::vector<int> pick(n, 0);
    double best = kInf;

    std::vector<int> comb(n);
    for (int i = 0; i < n; ++i) comb[i] = i;
    auto advance = [&]() {
        int i = n - 1;
        while (i >= 0 && comb[i] == total - n + i) --i;
        if (i < 0) return false;
        ++comb[i];
        for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
        return true;
    };

    do {
        Eigen::MatrixXd M(n, n);
        Eigen::VectorXd rhs(n);
        for (int r = 0; r < n; ++r) {
            const int a = comb[r];
            if (a < k) {
                M.row(r) = inst.A_ub.row(a);
                rhs(r) = inst.b_ub(a);
            } else if (a < k + n) {
                M.row(r).setZero();
                M(r, a - k) = 1.0;
                rhs(r) = inst.lo(a - k);
            } else {
                M.row(r).setZero();
                M(r, a - k - n) = 1.0;
                rhs(r) = inst.hi(a - k - n);
            }
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        if (lu.rank() < n) continue;
        Eigen::VectorXd x = lu.solve(rhs);
        bool ok = true;
        for (int j = 0; j < n && ok; ++j)
            ok = x(j) >= inst.lo(j) - 1e-9 && x(j) <= inst.hi(j) + 1e-9;
        for (int r = 0; r < k && ok; ++r)
            ok = inst.A_ub.row(r).dot(x) <= inst.b_ub(r) + 1e-9;
        if (ok) best = std::min(best, inst.c.dot(x));
    } while (advance());
    (void)pick;
    return best;
}

LpInstance random_instance(uint64_t seed) {
    SplitMix64 rng(seed);
    const int n = 6, k = 4;
    LpInstance inst;
    inst.c.resize(n);
    inst.lo = Eigen::VectorXd::Zero(n);
    inst.hi.resize(n);
    inst.A_ub.resize(k, n);
    inst.b_ub.resize(k);
    for (int j = 0; j < n; ++j) {
        inst.c(j) = rng.uniform() * 2.0 - 1.0;
        inst.hi(j) = 0.5 + rng.uniform();
    }
    Eigen::VectorXd x0(n);
    for (int j = 0; j < n; ++j) x0(j) = rng.uniform() * inst.hi(j);
    for (int r = 0; r < k; ++r) {
        for (int j = 0; j < n; ++j) inst.A_ub(r, j) = rng.uniform() * 4.0 - 2.0;
        inst.b_ub(r) = inst.A_ub.row(r).dot(x0) + 0.1 + rng.uniform();  // keeps x0 interior
    }
    return inst;
}

}  // namespace

TEST_CASE("single lower bound") {
    LpInstance inst = box_lp(1);
    inst.c(0) = 1.0;
    inst.lo(0) = 1.0;
    LpSolution sol = solve_lp(inst);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.x(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("textbook facet vertex") {
    LpInstance inst = box_lp(2);
    inst.c << -1.0, -1.0;
    inst.A_ub.resize(1, 2);
    inst.A_ub << 1.0, 1.0;
    inst.b_ub.resize(1);
    inst.b_ub << 1.0;
    LpSolution sol = solve_lp(inst);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(sol.x(0) + sol.x(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("equality-constrained diet") {
    // min 2x + 3y s.t. x + y = 4, x <= 3, y <= 3
    LpInstance inst = box_lp(2);
    inst.c << 2.0, 3.0;
    inst.hi << 3.0, 3.0;
    inst.A_eq.resize(1, 2);
    inst.A_eq << 1.0, 1.0;
    inst.b_eq.resize(1);
    inst.b_eq << 4.0;
    LpSolution sol = solve_lp(inst);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.x(0) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(sol.x(1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sol.objective == doctest::Approx(9.0).epsilon(1e-10));
}

TEST_CASE("random instances match vertex enumeration") {
    for (uint64_t seed = 1; seed <= 25; ++seed) {
        LpInstance inst = random_instance(seed);
        LpSolution sol = solve_lp(inst);
        REQUIRE(sol.status == LpStatus::optimal);
        const double oracle = vertex_enumeration_optimum(inst);
        CHECK(sol.objective == doctest::Approx(oracle).epsilon(0).scale(1).epsilon(1e-8));
        // primal feasibility at the returned point
        for (int j = 0; j < inst.n_vars(); ++j) {
            CHECK(sol.x(j) >= inst.lo(j) - 1e-7);
            CHECK(sol.x(j) <= inst.hi(j) + 1e-7);
        }
        for (int r = 0; r < inst.n_ub(); ++r)
            CHECK(inst.A_ub.row(r).dot(sol.x) <= inst.b_ub(r) + 1e-7);
    }
}

TEST_CASE("strong duality holds on optimal exits") {
    for (uint64_t seed = 30; seed <= 45; ++seed) {
        LpInstance inst = random_instance(seed);
        LpSolution sol = solve_lp(inst);
        REQUIRE(sol.status == LpStatus::optimal);
        REQUIRE(sol.y.size() == inst.n_ub());
        // dual of min c'x, Ax <= b, lo <= x <= hi:
        //   max y'b + sum_j min(d_j*lo_j, d_j*hi_j) with y <= 0, d = c - A'y
        double dual = sol.y.dot(inst.b_ub);
        for (int j = 0; j < inst.n_vars(); ++j) {
            const double dj = sol.reduced_costs(j);
            dual += dj > 0.0 ? dj * inst.lo(j) : dj * inst.hi(j);
        }
        for (int r = 0; r < inst.n_ub(); ++r) CHECK(sol.y(r) <= 1e-7);
        CHECK(dual == doctest::Approx(sol.objective).epsilon(1e-6));
    }
}

TEST_CASE("scaling the objective leaves the argmin unchanged") {
    for (uint64_t seed = 50; seed <= 60; ++seed) {
        LpInstance inst = random_instance(seed);
        LpSolution base = solve_lp(inst);
        REQUIRE(base.status == LpStatus::optimal);
        LpInstance scaled = inst;
        scaled.c *= 7.5;
        LpSolution s = solve_lp(scaled);
        REQUIRE(s.status == LpStatus::optimal);
        CHECK((s.x - base.x).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(s.objective == doctest::Approx(7.5 * base.objective).epsilon(1e-9));
    }
}

TEST_CASE("Beale's cycling example terminates at the known optimum") {
    // Degenerate LP that cycles under naive most-negative pricing.
    LpInstance inst = box_lp(4);
    inst.c << -0.75, 150.0, -0.02, 6.0;
    inst.A_ub.resize(3, 4);
    inst.A_ub << 0.25, -60.0, -0.04, 9.0,
                 0.5, -90.0, -0.02, 3.0,
                 0.0, 0.0, 1.0, 0.0;
    inst.b_ub.resize(3);
    inst.b_ub << 0.0, 0.0, 1.0;
    LpSolution sol = solve_lp(inst);
    REQUIRE(sol.status == LpStatus::optimal);
    CHECK(sol.objective == doctest::Approx(-0.05).epsilon(1e-10));
}

TEST_CASE("infeasible and unbounded are reported as statuses") {
    LpInstance inf = box_lp(1);
    inf.c(0) = 1.0;
    inf.A_ub.resize(1, 1);
    inf.A_ub << 1.0;
    inf.b_ub.resize(1);
    inf.b_ub << -1.0;  // x <= -1 with x >= 0
    CHECK(solve_lp(inf).status == LpStatus::infeasible);

    LpInstance unb = box_lp(1);
    unb.c(0) = -1.0;
    CHECK(solve_lp(unb).status == LpStatus::unbounded);
}

TEST_CASE("iteration limit is a status, not a crash") {
    LpInstance inst = random_instance(99);
    LpOptions opts;
    opts.max_iter = 1;
    LpSolution sol = solve_lp(inst, opts);
    CHECK(sol.status == LpStatus::iteration_limit);
    CHECK(sol.iterations <= 1);
}

TEST_CASE("warm start reproduces the cold optimum in fewer iterations") {
    LpInstance inst = random_instance(7);
    LpSolution cold = solve_lp(inst);
    REQUIRE(cold.status == LpStatus::optimal);

    LpInstance nudged = inst;
    nudged.b_ub.array() += 0.01;
    LpSolution cold2 = solve_lp(nudged);
    LpOptions opts;
    opts.warm = &cold.basis;
    LpSolution warm = solve_lp(nudged, opts);
    REQUIRE(warm.status == LpStatus::optimal);
    CHECK(warm.objective == doctest::Approx(cold2.objective).epsilon(1e-9));
    CHECK(warm.iterations <= cold2.iterations);
}

TEST_CASE("validation rejects malformed instances") {
    LpInstance inst = box_lp(2);
    inst.c(0) = std::nan("");
    CHECK_THROWS_AS(solve_lp(inst), Error);

    LpInstance bad_bounds = box_lp(2);
    bad_bounds.lo(1) = 2.0;
    bad_bounds.hi(1) = 1.0;
    CHECK_THROWS_WITH_AS(solve_lp(bad_bounds), doctest::Contains("lo > hi"), Error);

    LpInstance bad_dims = box_lp(2);
    bad_dims.A_eq.resize(1, 3);
    bad_dims.A_eq.setZero();
    bad_dims.b_eq.resize(1);
    bad_dims.b_eq.setZero();
    CHECK_THROWS_AS(solve_lp(bad_dims), Error);
}

TEST_CASE("dump emits every block") {
    LpInstance inst = box_lp(2);
    inst.c << 1.0, 0.0;
    inst.names = {"power", "temp"};
    inst.A_eq.resize(1, 2);
    inst.A_eq << 1.0, -1.0;
    inst.b_eq.resize(1);
    inst.b_eq << 0.5;
    const std::string text = inst.dump();
    CHECK(text.find("lp 2 vars 1 eq 0 ub") != std::string::npos);
    CHECK(text.find("power") != std::string::npos);
    CHECK(text.find("= 0.5") != std::string::npos);
}
