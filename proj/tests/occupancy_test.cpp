#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "emc/errors.hpp"
#include "emc/occupancy.hpp"

using namespace emc;

TEST_CASE("absorbing absent chain stays absent") {
    OccupancyProfile p = generate_profile(123, 200, 0.25, 0.0, 0.0);
    // p_arrive = 0 makes "absent" absorbing; the stationary draw lands there too
    for (uint8_t v : p.presence) CHECK(v == 0);
}

TEST_CASE("forced arrival is present from step 1 on") {
    OccupancyProfile p = generate_profile(9, 50, 0.25, 1.0, 0.0);
    for (int t = 1; t < 50; ++t) CHECK(p.presence[t] == 1);
}

TEST_CASE("symmetric chain visits both states half the time") {
    OccupancyProfile p = generate_profile(2024, 100000, 0.25, 0.1, 0.1);
    const double occupied =
        std::accumulate(p.presence.begin(), p.presence.end(), 0.0) / p.n_steps();
    CHECK(occupied == doctest::Approx(0.5).epsilon(0.04));  // +-0.02 absolute
    CHECK(std::abs(occupied - 0.5) < 0.02);
}

TEST_CASE("default parameters give about 60% occupancy") {
    OccupancyParams params;
    OccupancyProfile p =
        generate_profile(77, 200000, 0.25, params.p_arrive, params.p_leave);
    const double occupied =
        std::accumulate(p.presence.begin(), p.presence.end(), 0.0) / p.n_steps();
    CHECK(occupied == doctest::Approx(0.6).epsilon(0.05));
}

TEST_CASE("identical seeds give identical sequences") {
    OccupancyProfile a = generate_profile(5150, 5000, 0.25, 0.03, 0.02);
    OccupancyProfile b = generate_profile(5150, 5000, 0.25, 0.03, 0.02);
    CHECK(a.presence == b.presence);
    OccupancyProfile c = generate_profile(5151, 5000, 0.25, 0.03, 0.02);
    CHECK(a.presence != c.presence);
}

TEST_CASE("empty or invalid profile requests fail") {
    CHECK_THROWS_AS(generate_profile(1, 0, 0.25, 0.1, 0.1), Error);
    CHECK_THROWS_AS(generate_profile(1, 10, 0.25, -0.1, 0.1), Error);
    CHECK_THROWS_AS(generate_profile(1, 10, 0.25, 0.1, 1.5), Error);
}

TEST_CASE("comfort bounds follow the occupied setpoints") {
    OccupancyProfile p;
    p.presence = {1};
    p.dt_hours = 0.25;
    ComfortSchedule s = comfort_bounds(p);
    CHECK(s.t_lo(0, 0) == 20.0);
    CHECK(s.t_hi(0, 0) == 22.0);
    CHECK(s.t_lo(0, 1) == 18.0);
    CHECK(s.t_hi(0, 1) == 20.0);
    CHECK(s.hw_lo[0] == 45.0);
    CHECK(s.hw_hi[0] == 60.0);
}

TEST_CASE("unoccupied steps drop the lower bound to 16") {
    OccupancyProfile p;
    p.presence = {0};
    ComfortSchedule s = comfort_bounds(p);
    CHECK(s.t_lo(0, 0) == 16.0);
    CHECK(s.t_hi(0, 0) == 22.0);
    CHECK(s.t_lo(0, 1) == 16.0);
    CHECK(s.t_hi(0, 1) == 20.0);
}

TEST_CASE("alternating presence alternates bounds pointwise") {
    OccupancyProfile p;
    p.presence = {1, 0, 1, 0, 1, 0};
    ComfortSchedule s = comfort_bounds(p);
    for (int t = 0; t < 6; ++t) {
        const double expect_day = t % 2 == 0 ? 20.0 : 16.0;
        CHECK(s.t_lo(t, 0) == expect_day);
        CHECK(s.t_hi(t, 0) == 22.0);
    }
}

TEST_CASE("comfort bounds are a pointwise map of presence") {
    // Same presence value at a step implies the same bounds at that step,
    // regardless of surrounding history.
    OccupancyProfile hist1, hist2;
    hist1.presence = {1, 1, 1, 0, 1};
    hist2.presence = {0, 0, 0, 0, 1};
    ComfortSchedule s1 = comfort_bounds(hist1);
    ComfortSchedule s2 = comfort_bounds(hist2);
    CHECK(s1.t_lo(3, 0) == s2.t_lo(3, 0));
    CHECK(s1.t_lo(4, 1) == s2.t_lo(4, 1));
    CHECK(s1.t_hi(4, 0) == s2.t_hi(4, 0));
}

TEST_CASE("ensemble profiles are reproducible from the master seed") {
    const uint64_t master = 99;
    for (int k : {0, 1, 17, 51}) {
        const uint64_t s1 = profile_seed(master, k);
        const uint64_t s2 = profile_seed(master, k);
        CHECK(s1 == s2);
    }
    CHECK(profile_seed(master, 0) != profile_seed(master, 1));
    CHECK(profile_seed(master, 0) != profile_seed(master + 1, 0));
}

TEST_CASE("hot water draw pulses only while present") {
    OccupancyProfile p;
    p.dt_hours = 0.25;
    p.presence.assign(96, 1);
    std::vector<double> draw = hot_water_draw(p);
    // morning pulse 07:00-08:00 at 15-minute steps -> steps 28..31
    CHECK(draw[27] == 0.0);
    CHECK(draw[28] == 3.0);
    CHECK(draw[31] == 3.0);
    CHECK(draw[32] == 0.0);
    // evening pulse 18:00-20:00 -> steps 72..79
    CHECK(draw[72] == 2.5);
    CHECK(draw[79] == 2.5);
    CHECK(draw[80] == 0.0);

    p.presence.assign(96, 0);
    for (double d : hot_water_draw(p)) CHECK(d == 0.0);
}
