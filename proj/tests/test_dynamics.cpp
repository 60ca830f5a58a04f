#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lake/dynamics.hpp"
#include "lake/errors.hpp"
#include "lake/rng.hpp"
#include "lake/runner.hpp"

using namespace lake;

namespace {

std::shared_ptr<const Grid> make_grid(int nr, int nt) {
    return std::make_shared<const Grid>(build_grid(nr, nt));
}

VectorField rigid_rotation(const Grid& g) {
    VectorField u(g);
    for (int j = 0; j < g.levels(); ++j)
        for (int i = 0; i < g.n_theta; ++i) {
            const auto k = g.index(j, i);
            u.x[k] = -g.r_nodes[j] * g.sin_theta[i];
            u.y[k] = g.r_nodes[j] * g.cos_theta[i];
        }
    return u;
}

// Value of the source term for the rigid rotation at r = 1/2, a = 2,
// eps = 1/10, from the symbolic derivation: -409600/148877.
constexpr double kGRigidHalf = -409600.0 / 148877.0;

}  // namespace

TEST_CASE("source term G") {
    SUBCASE("zero velocity gives zero") {
        auto grid = make_grid(16, 16);
        auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 0.1));
        VorticityDynamics dyn(bath, SchemeConfig{});
        VectorField u(*grid);
        CHECK(max_abs(dyn.compute_G(u)) == 0.0);
    }
    SUBCASE("constant depth degenerates to zero for any velocity") {
        auto grid = make_grid(16, 32);
        auto flat = std::make_shared<const Bathymetry>(constant_bathymetry(grid, 2.0));
        VorticityDynamics dyn(flat, SchemeConfig{});
        VectorField u = rigid_rotation(*grid);
        for (std::size_t k = 0; k < u.size(); ++k) u.x[k] += 0.3 * u.y[k] * u.y[k];
        CHECK(max_abs(dyn.compute_G(u)) < 1e-12);
    }
    SUBCASE("rigid rotation matches the symbolic value at r = 1/2") {
        auto grid = make_grid(64, 32);  // n_r = 64 puts a node exactly near r = 0.4921875
        auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 0.1));
        VorticityDynamics dyn(bath, SchemeConfig{});
        ScalarField G = dyn.compute_G(rigid_rotation(*grid));
        // evaluate the same closed form at the node radius actually hit
        int j = 0;
        while (grid->r_nodes[j] < 0.5) ++j;
        const double r = grid->r_nodes[j];
        const double b = std::pow(1 - r * r, 2.0), be = b + 0.1;
        const double db = -4 * r * (1 - r * r);
        const double lapb = 16 * r * r - 8;
        const double lam = db / be;
        const double exact = (lapb / be + lam * lam) * (2.0 / be);
        for (int i = 0; i < grid->n_theta; i += 7)
            CHECK(G(j, i) == doctest::Approx(exact).epsilon(1e-10));
        // and the frozen constant at exactly r = 1/2 via a grid that hits it:
        // n_r = 50 has nodes at (j+1/2)/50, j = 24 -> r = 0.49; use analytic check
        const double bhalf = 0.5625, behalf = 0.6625;
        const double Ghalf = ((-4.0) / behalf + std::pow(-1.5 / behalf, 2)) * (2.0 / behalf);
        CHECK(Ghalf == doctest::Approx(kGRigidHalf).epsilon(1e-14));
        (void)bhalf;
    }
    SUBCASE("linear in the velocity") {
        auto grid = make_grid(24, 32);
        auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 0.05));
        VorticityDynamics dyn(bath, SchemeConfig{});
        VectorField u1 = rigid_rotation(*grid);
        VectorField u2(*grid);
        SplitMix64 rng(5);
        for (std::size_t k = 0; k < u2.size(); ++k) {
            u2.x[k] = rng.uniform(-1, 1);
            u2.y[k] = rng.uniform(-1, 1);
        }
        VectorField combo(*grid);
        for (std::size_t k = 0; k < combo.size(); ++k) {
            combo.x[k] = 2.0 * u1.x[k] - 0.5 * u2.x[k];
            combo.y[k] = 2.0 * u1.y[k] - 0.5 * u2.y[k];
        }
        ScalarField g1 = dyn.compute_G(u1), g2 = dyn.compute_G(u2),
                    gc = dyn.compute_G(combo);
        double worst = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < gc.v.size(); ++k) {
            worst = std::max(worst, std::abs(gc.v[k] - 2.0 * g1.v[k] + 0.5 * g2.v[k]));
            scale = std::max(scale, std::abs(gc.v[k]));
        }
        CHECK(worst <= 1e-12 * std::max(scale, 1.0));
    }
    SUBCASE("rejects the unregularized degenerate profile") {
        auto grid = make_grid(16, 16);
        auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 0.0));
        SchemeConfig sc;
        CHECK_THROWS_AS(VorticityDynamics(bath, sc), std::invalid_argument);
    }
}

TEST_CASE("rhs") {
    SUBCASE("radial state matches a plain finite-difference oracle") {
        auto grid = make_grid(64, 32);
        auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 1e-2));
        VorticityDynamics dyn(bath, SchemeConfig{});
        InitialData init;
        init.type = "radial_bump";
        SimState s = dyn.make_state(initial_vorticity(*grid, init), 0.01);

        ScalarField out = dyn.rhs(s);

        // Independent evaluation: centered differences on the sampled fields.
        // The state is azimuthal, so every term reduces to radial stencils:
        // the strain combination entering G is u_theta' - u_theta/r and the
        // radial-velocity term vanishes.
        ScalarField ur, ut;
        dyn.ops().to_polar(s.u, ur, ut);
        SplitMix64 rng(23);
        const Bathymetry& b = *bath;
        for (int probe = 0; probe < 10; ++probe) {
            const int j = 2 + int(rng.uniform() * (grid->n_r * 0.8));
            const int i = int(rng.uniform() * grid->n_theta);
            const double r = grid->r_nodes[j];
            auto w = [&](int jj) { return s.omega(jj, i); };
            const double drw = (w(j + 1) - w(j - 1)) / (2 * grid->dr);
            const double lap = (w(j + 1) - 2 * w(j) + w(j - 1)) / (grid->dr * grid->dr) +
                               drw / r;
            const double adv = ur(j, i) * drw;
            auto rut = [&](int jj) { return grid->r_nodes[jj] * ut(jj, i); };
            const double zeta = (rut(j + 1) - rut(j - 1)) / (2 * grid->dr * r);
            const double om_u = zeta / b.b_eps_r[j];
            const double coef0 = b.lap_b_r[j] / b.b_eps_r[j] + b.lam_r[j] * b.lam_r[j];
            const double shear =
                (ut(j + 1, i) - ut(j - 1, i)) / (2 * grid->dr) - ut(j, i) / r;
            const double hess = (b.dlam_r[j] - b.lam_r[j] / r) / b.b_eps_r[j];
            const double G = coef0 * om_u + hess * shear;
            const double expect = -adv + s.mu * (lap + 3 * b.lam_r[j] * drw + G);
            CHECK(out(j, i) == doctest::Approx(expect).epsilon(1e-8));
        }
    }

    SUBCASE("zero state stays zero") {
        auto grid = make_grid(16, 16);
        auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 1e-2));
        VorticityDynamics dyn(bath, SchemeConfig{});
        SimState s = dyn.make_state(ScalarField(*grid), 0.05);
        CHECK(max_abs(dyn.rhs(s)) == 0.0);
    }
}

TEST_CASE("cfl step control") {
    SUBCASE("formula examples") {
        const double big = 1e9;
        CHECK(cfl_dt_formula(2.0, 0.01, 0.5, 0.0, 0.5, 1.0, big) ==
              doctest::Approx(0.0025).epsilon(1e-14));
        // no constraint active: the cap wins
        CHECK(cfl_dt_formula(0.0, 0.01, 0.5, 0.0, 0.5, 1.0, 0.05) == 0.05);
        // doubling mu halves the diffusive bound
        const double d1 = cfl_dt_formula(0.0, 0.01, 0.5, 0.01, 0.5, 1.0, big);
        const double d2 = cfl_dt_formula(0.0, 0.01, 0.5, 0.02, 0.5, 1.0, big);
        CHECK(d1 == doctest::Approx(2 * d2).epsilon(1e-14));
        CHECK_THROWS_AS(
            cfl_dt_formula(std::numeric_limits<double>::quiet_NaN(), 0.01, 0.5, 0, 0.5, 1, 1),
            NumericError);
    }
    SUBCASE("still state returns the cap") {
        auto grid = make_grid(16, 16);
        auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 1e-2));
        VorticityDynamics dyn(bath, SchemeConfig{});
        SimState s = dyn.make_state(ScalarField(*grid), 0.0);
        CHECK(dyn.cfl_dt(s) == dyn.scheme().dt_max);
    }
}

TEST_CASE("stepping") {
    SUBCASE("zero solution persists") {
        auto grid = make_grid(16, 16);
        auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 1e-2));
        VorticityDynamics dyn(bath, SchemeConfig{});
        SimState s = dyn.make_state(ScalarField(*grid), 0.01);
        for (int k = 0; k < 5; ++k) s = dyn.step(s, 1e-3);
        CHECK(max_abs(s.omega) == 0.0);
        CHECK(s.t == doctest::Approx(5e-3));
    }

    SUBCASE("radial data is steady under pure transport") {
        auto grid = make_grid(32, 64);
        auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 1e-2));
        VorticityDynamics dyn(bath, SchemeConfig{});
        InitialData init;
        init.type = "radial_bump";
        SimState s = dyn.make_state(initial_vorticity(*grid, init), 0.0);
        ScalarField w0 = s.omega;
        for (int k = 0; k < 20; ++k) s = dyn.step(s, dyn.cfl_dt(s));
        double worst = 0.0;
        for (std::size_t k = 0; k < w0.v.size(); ++k)
            worst = std::max(worst, std::abs(s.omega.v[k] - w0.v[k]));
        CHECK(worst < 1e-10 * max_abs(w0));
    }

    SUBCASE("step halving shows third order") {
        auto grid = make_grid(32, 64);
        auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 1e-2));
        VorticityDynamics dyn(bath, SchemeConfig{});
        InitialData init;
        init.type = "gaussian";
        SimState s0 = dyn.make_state(initial_vorticity(*grid, init), 1e-3);

        auto advance = [&](double dt, int n) {
            SimState s = s0;
            for (int k = 0; k < n; ++k) s = dyn.step(s, dt);
            return s.omega;
        };
        auto diff_norm = [&](const ScalarField& a, const ScalarField& b) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.v.size(); ++k)
                acc = std::max(acc, std::abs(a.v[k] - b.v[k]));
            return acc;
        };
        const double dt = 4e-3;
        const double e1 = diff_norm(advance(dt, 1), advance(dt / 2, 2));
        const double e2 = diff_norm(advance(dt / 2, 1), advance(dt / 4, 2));
        const double order = std::log2(e1 / e2);
        CHECK(order >= 2.9);
    }

    SUBCASE("blow-up guard trips loudly") {
        auto grid = make_grid(16, 32);
        auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 1e-3));
        VorticityDynamics dyn(bath, SchemeConfig{});
        InitialData init;
        init.type = "gaussian";
        init.amplitude = 50.0;
        SimState s = dyn.make_state(initial_vorticity(*grid, init), 0.0);
        // grossly unstable step
        CHECK_THROWS_AS(
            [&] {
                for (int k = 0; k < 50; ++k) s = dyn.step(s, 0.5);
            }(),
            NumericError);
    }
}

TEST_CASE("run pipeline") {
    SUBCASE("T = 0 returns the initial state only") {
        SolverConfig cfg;
        cfg.n_r = 16;
        cfg.n_theta = 16;
        cfg.t_end = 0.0;
        cfg.epsilon = 1e-2;
        RunResult res = run(cfg);
        REQUIRE(res.snapshots.size() == 1);
        CHECK(res.snapshots[0].t == 0.0);
    }

    SUBCASE("radial steady state holds to T = 1") {
        SolverConfig cfg;
        cfg.n_r = 64;
        cfg.n_theta = 64;
        cfg.mu = 0.0;
        cfg.epsilon = 1e-3;
        cfg.initial.type = "radial_bump";
        cfg.t_end = 1.0;
        cfg.snapshot_dt = 0.5;
        RunResult res = run(cfg);
        const ScalarField& w0 = res.snapshots.front().omega;
        const ScalarField& wT = res.snapshots.back().omega;
        ScalarField d = wT;
        for (std::size_t k = 0; k < d.v.size(); ++k) d.v[k] -= w0.v[k];
        const auto& bath = *res.snapshots.back().bath;
        const double rel =
            weighted_norm(d, bath, 2.0, 0.0) / weighted_norm(w0, bath, 2.0, 0.0);
        CHECK(rel < 1e-3);
    }

    SUBCASE("reruns are bit-identical") {
        SolverConfig cfg;
        cfg.n_r = 24;
        cfg.n_theta = 48;
        cfg.mu = 5e-3;
        cfg.epsilon = 1e-2;
        cfg.initial.type = "gaussian";
        cfg.t_end = 0.05;
        cfg.snapshot_dt = 0.025;
        RunResult a = run(cfg);
        RunResult b = run(cfg);
        REQUIRE(a.snapshots.size() == b.snapshots.size());
        for (std::size_t s = 0; s < a.snapshots.size(); ++s)
            for (std::size_t k = 0; k < a.snapshots[s].omega.v.size(); ++k) {
                CHECK(a.snapshots[s].omega.v[k] == b.snapshots[s].omega.v[k]);
                CHECK(a.snapshots[s].u.x[k] == b.snapshots[s].u.x[k]);
            }
    }

    SUBCASE("viscous run requires regularization") {
        SolverConfig cfg;
        cfg.mu = 0.01;
        cfg.epsilon = 0.0;
        CHECK_THROWS_AS(run(cfg), ConfigError);
    }
}
