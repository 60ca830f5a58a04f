#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lake/vvl.hpp"

using namespace lake;

namespace {
SolverConfig small_scenario() {
    SolverConfig cfg;
    cfg.n_r = 24;
    cfg.n_theta = 48;
    cfg.a = 2.0;
    cfg.epsilon = 1e-2;
    cfg.initial.type = "gaussian";
    cfg.initial.sigma = 0.15;
    cfg.t_end = 0.2;
    cfg.snapshot_dt = 0.1;
    return cfg;
}
}  // namespace

TEST_CASE("osgood bound") {
    auto identity = [](double r) { return r; };
    auto rate_c = [](double) { return 0.5; };

    SUBCASE("zero initial bound collapses") {
        CHECK(osgood_bound(0.0, identity, rate_c, 3.0) == 0.0);
    }
    SUBCASE("t = 0 returns the constant exactly") {
        CHECK(osgood_bound(0.37, identity, rate_c, 0.0) == 0.37);
    }
    SUBCASE("linear modulus reproduces the exponential bound") {
        for (double a : {1e-4, 0.01, 0.5}) {
            for (double t : {0.5, 1.0, 2.0}) {
                const double got = osgood_bound(a, identity, rate_c, t);
                const double want = a * std::exp(0.5 * t);
                CHECK(std::abs(got - want) / want < 1e-10);
            }
        }
    }
    SUBCASE("non-positive modulus rejected") {
        auto bad = [](double) { return 0.0; };
        CHECK_THROWS_AS(osgood_bound(0.1, bad, rate_c, 1.0), std::invalid_argument);
    }
}

TEST_CASE("rate envelope") {
    SUBCASE("t = 0 with C = 1 returns gamma0") {
        CHECK(rate_envelope(0.01, 0.5, 0.0, 2.0, 1.0, 1.0) == doctest::Approx(0.01));
    }
    SUBCASE("zero base stays zero") {
        CHECK(rate_envelope(0.0, 0.0, 3.0, 2.0, 1.0, 1.0) == 0.0);
    }
    SUBCASE("worked value: M=2, Ctilde=1, t=ln 2") {
        const double got = rate_envelope(0.01, 0.0, std::log(2.0), 2.0, 1.0, 1.0);
        CHECK(got == doctest::Approx(0.2).epsilon(1e-12));
    }
    SUBCASE("monotone in each argument") {
        const double base = rate_envelope(0.01, 0.1, 0.5, 2.0, 1.0, 1.0);
        CHECK(rate_envelope(0.02, 0.1, 0.5, 2.0, 1.0, 1.0) > base);
        CHECK(rate_envelope(0.01, 0.2, 0.5, 2.0, 1.0, 1.0) > base);
        CHECK(rate_envelope(0.01, 0.1, 0.8, 2.0, 1.0, 1.0) > base);
    }
    SUBCASE("long-time limit is C M^2") {
        CHECK(rate_envelope(0.25, 0.0, 1e3, 2.0, 1.0, 1.5) ==
              doctest::Approx(6.0).epsilon(1e-12));
    }
    SUBCASE("domain guard") {
        CHECK_THROWS_AS(rate_envelope(3.9, 0.2, 1.0, 2.0, 1.0, 1.0), std::domain_error);
        CHECK_THROWS_AS(rate_envelope(0.1, 0.0, 1.0, 0.9, 1.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("sweep") {
    SUBCASE("plan validation") {
        SweepPlan plan;
        plan.base = small_scenario();
        plan.comparison_times = {0.1};
        plan.mu_list = {};
        CHECK_THROWS_AS(sweep(plan), std::invalid_argument);
        plan.mu_list = {1e-3, 1e-2};
        CHECK_THROWS_AS(sweep(plan), std::invalid_argument);
        plan.mu_list = {1e-2};
        plan.comparison_times = {5.0};
        CHECK_THROWS_AS(sweep(plan), std::invalid_argument);
    }

    SUBCASE("duplicated viscosity gives identical columns") {
        SweepPlan plan;
        plan.base = small_scenario();
        plan.mu_list = {5e-3, 5e-3};
        plan.comparison_times = {0.1, 0.2};
        RateReport rep = sweep(plan);
        for (std::size_t ti = 0; ti < rep.times.size(); ++ti)
            CHECK(rep.D[ti][0] == rep.D[ti][1]);
    }

    SUBCASE("single-viscosity smoke run is dominated by its envelope") {
        SweepPlan plan;
        plan.base = small_scenario();
        plan.base.initial.type = "radial_bump";
        plan.mu_list = {1e-2};
        plan.comparison_times = {0.1, 0.2};
        RateReport rep = sweep(plan);
        CHECK(rep.D[0][0] > 0.0);
        CHECK(rep.D[0][0] < 1.0);
        CHECK(rep.envelope_ok);
        for (std::size_t ti = 0; ti < rep.times.size(); ++ti)
            CHECK(rep.D[ti][0] <= rep.envelope[ti][0] * 1.05);
    }
}

TEST_CASE("regularization continuation") {
    SolverConfig cfg = small_scenario();
    cfg.initial.type = "radial_bump";
    cfg.mu = 0.0;
    cfg.t_end = 0.1;

    SUBCASE("schedule validation") {
        CHECK_THROWS_AS(epsilon_continuation(cfg, {}), std::invalid_argument);
        CHECK_THROWS_AS(epsilon_continuation(cfg, {1e-2, 3e-2}), std::invalid_argument);
        CHECK_THROWS_AS(epsilon_continuation(cfg, {1e-2, -1.0}), std::invalid_argument);
    }
    SUBCASE("identical levels give zero difference") {
        auto rows = epsilon_continuation(cfg, {1e-1, 1e-1});
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].diff == 0.0);
    }
    SUBCASE("single level gives an empty table") {
        CHECK(epsilon_continuation(cfg, {1e-1}).empty());
    }
    SUBCASE("consecutive differences shrink") {
        auto rows = epsilon_continuation(cfg, {1e-1, 3e-2, 1e-2, 3e-3});
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].diff > rows[1].diff);
        CHECK(rows[1].diff > rows[2].diff);
    }
}

TEST_CASE("uniqueness shadow") {
    SolverConfig cfg = small_scenario();
    cfg.mu = 0.0;
    cfg.t_end = 0.2;
    EnvelopeFit fit{2.0, 1.5, 1.0};

    SUBCASE("zero perturbation stays identically zero") {
        UniquenessReport rep = uniqueness_check(cfg, 0.0, fit);
        CHECK(rep.initial_diff == 0.0);
        for (double d : rep.diff) CHECK(d == 0.0);
    }
    SUBCASE("tolerance-scale perturbation stays below the envelope") {
        UniquenessReport rep = uniqueness_check(cfg, 1e-10, fit);
        CHECK(rep.initial_diff > 0.0);
        CHECK(rep.below_envelope);
    }
    SUBCASE("viscous configs rejected") {
        SolverConfig bad = cfg;
        bad.mu = 1e-3;
        CHECK_THROWS_AS(uniqueness_check(bad, 1e-12, fit), std::invalid_argument);
    }
}
