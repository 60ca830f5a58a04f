#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lake/diagnostics.hpp"
#include "lake/runner.hpp"

using namespace lake;
namespace {
constexpr double kPi = std::numbers::pi;

std::shared_ptr<const Grid> make_grid(int nr, int nt) {
    return std::make_shared<const Grid>(build_grid(nr, nt));
}

SimState state_with_velocity(std::shared_ptr<const Bathymetry> bath, VectorField u) {
    SimState s;
    s.bath = std::move(bath);
    s.u = std::move(u);
    s.omega = ScalarField(*s.bath->grid);
    s.psi = ScalarField(*s.bath->grid);
    return s;
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

}  // namespace

TEST_CASE("energy integrals") {
    auto grid = make_grid(48, 64);

    SUBCASE("zero velocity") {
        auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 0.0));
        SimState s = state_with_velocity(bath, VectorField(*grid));
        CHECK(energy(s) == 0.0);
    }
    SUBCASE("rigid rotation on the flat fixture: int r^2 dA = pi/2") {
        auto flat = std::make_shared<const Bathymetry>(constant_bathymetry(grid, 1.0));
        SimState s = state_with_velocity(flat, rigid_rotation(*grid));
        CHECK(energy(s) == doctest::Approx(kPi / 2).epsilon(1e-12));
    }
    SUBCASE("uniform stream over the degenerate profile: int (1-r^2)^2 dA = pi/3") {
        auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 0.0));
        SimState s = state_with_velocity(bath, VectorField(*grid, 1.0, 0.0));
        CHECK(energy_true_b(s) == doctest::Approx(kPi / 3).epsilon(1e-12));
        CHECK(energy(s) == doctest::Approx(kPi / 3).epsilon(1e-12));  // eps = 0
    }
}

TEST_CASE("drag identity residual") {
    auto grid = make_grid(64, 64);
    auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 0.0));
    Operators ops(*grid);

    SUBCASE("zero velocity") {
        VectorField u(*grid);
        CHECK(navier_identity_residual(u, *bath, ops) == 0.0);
    }
    SUBCASE("rigid rotation satisfies the identity exactly") {
        // D = 0, u.tau = 1, curl = 2, kappa = 1: 0 + 1 - 1 = 0, and every
        // stencil is exact on this linear field.
        CHECK(navier_identity_residual(rigid_rotation(*grid), *bath, ops) < 1e-11);
    }
    SUBCASE("plane shear violates it by |cos 2 theta|, max 1") {
        VectorField u(*grid);
        for (int j = 0; j < grid->levels(); ++j)
            for (int i = 0; i < grid->n_theta; ++i)
                u.x[grid->index(j, i)] = grid->r_nodes[j] * grid->sin_theta[i];  // u = (y, 0)
        CHECK(navier_identity_residual(u, *bath, ops) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("tangential trig fields sit at the rounding floor") {
        // The discrete combination cancels every radial-derivative slot, so
        // what remains is the spectral tangential derivative of u_r on the
        // ring: exact for band-limited fields.
        auto g = make_grid(32, 64);
        auto b = std::make_shared<const Bathymetry>(eval_bathymetry(g, 2.0, 0.0));
        Operators o(*g);
        VectorField u(*g);
        for (int j = 0; j < g->levels(); ++j)
            for (int i = 0; i < g->n_theta; ++i) {
                const double r = g->r_nodes[j];
                const double th = g->theta_nodes[i];
                const double ur = -2 * r * (1 - r * r) * std::cos(2 * th);
                const double ut = (2 * r - 4 * r * r * r) * std::sin(2 * th);
                u.x[g->index(j, i)] = ur * g->cos_theta[i] - ut * g->sin_theta[i];
                u.y[g->index(j, i)] = ur * g->sin_theta[i] + ut * g->cos_theta[i];
            }
        CHECK(navier_identity_residual(u, *b, o) < 1e-10);
    }
    SUBCASE("fields with full angular spectra converge under refinement") {
        auto residual_at = [](int nr) {
            auto g = make_grid(nr, nr);
            auto b = std::make_shared<const Bathymetry>(eval_bathymetry(g, 2.0, 0.0));
            Operators o(*g);
            VectorField u(*g);
            for (int j = 0; j < g->levels(); ++j)
                for (int i = 0; i < g->n_theta; ++i) {
                    const double r = g->r_nodes[j];
                    const double th = g->theta_nodes[i];
                    const double ur = r * std::exp(std::cos(th)) / 3.0;  // u.n != 0
                    const double ut = r * std::sin(th);
                    u.x[g->index(j, i)] = ur * g->cos_theta[i] - ut * g->sin_theta[i];
                    u.y[g->index(j, i)] = ur * g->sin_theta[i] + ut * g->cos_theta[i];
                }
            // exact violation |d/dth (exp(cos th))/3 + trig terms| has a
            // closed form; measure the error against a very fine grid instead
            return navier_identity_residual(u, *b, o);
        };
        const double ref = residual_at(256);
        const double e1 = std::abs(residual_at(8) - ref);
        const double e2 = std::abs(residual_at(16) - ref);
        CHECK(e1 > e2);
        CHECK(std::log2(e1 / e2) > 1.0);
    }
}

TEST_CASE("yudovich functional") {
    auto grid = make_grid(48, 64);
    auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 0.0));
    Operators ops(*grid);

    SUBCASE("zero velocity") {
        CHECK(yudovich_L(VectorField(*grid), *bath, ops) == 0.0);
    }
    SUBCASE("rigid rotation: max of (sqrt2/p) pi^{1/p} at p = 3") {
        const double got = yudovich_L(rigid_rotation(*grid), *bath, ops);
        const double want = std::sqrt(2.0) / 3.0 * std::pow(kPi, 1.0 / 3.0);
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
    SUBCASE("homogeneous of degree one") {
        VectorField u = rigid_rotation(*grid);
        const double l1 = yudovich_L(u, *bath, ops);
        for (std::size_t k = 0; k < u.size(); ++k) {
            u.x[k] *= 2.0;
            u.y[k] *= 2.0;
        }
        CHECK(yudovich_L(u, *bath, ops) == doctest::Approx(2 * l1).epsilon(1e-12));
    }
}

TEST_CASE("energy balance residual") {
    SUBCASE("zero trajectory") {
        auto grid = make_grid(16, 16);
        auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 1e-2));
        Operators ops(*grid);
        std::vector<SimState> w;
        for (int k = 0; k < 3; ++k) {
            SimState s = state_with_velocity(bath, VectorField(*grid));
            s.t = 0.1 * k;
            w.push_back(std::move(s));
        }
        CHECK(energy_balance_residual(w, 1e-2, ops) == 0.0);
    }
    SUBCASE("window validation") {
        auto grid = make_grid(16, 16);
        auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 1e-2));
        Operators ops(*grid);
        std::vector<SimState> w(2, state_with_velocity(bath, VectorField(*grid)));
        CHECK_THROWS_AS(energy_balance_residual(w, 1e-2, ops), std::invalid_argument);
    }
    SUBCASE("inviscid steady state gives a near-zero residual") {
        SolverConfig cfg;
        cfg.n_r = 32;
        cfg.n_theta = 32;
        cfg.mu = 0.0;
        cfg.epsilon = 1e-2;
        cfg.initial.type = "radial_bump";
        cfg.t_end = 0.3;
        cfg.snapshot_dt = 0.1;
        RunResult res = run(cfg);
        REQUIRE(res.diag.balance_residual.size() >= 1);
        for (double r : res.diag.balance_residual) CHECK(r < 1e-8);
    }
}

TEST_CASE("weighted enstrophy uses the true depth") {
    auto grid = make_grid(32, 32);
    auto bath = std::make_shared<const Bathymetry>(eval_bathymetry(grid, 2.0, 0.5));
    SimState s;
    s.bath = bath;
    s.omega = ScalarField(*grid, 1.0);
    s.u = VectorField(*grid);
    s.psi = ScalarField(*grid);
    // ||b^{1/2} * 1||_2 = sqrt(int (1-r^2)^2) = sqrt(pi/3), independent of eps
    CHECK(weighted_enstrophy(s, 2.0) == doctest::Approx(std::sqrt(kPi / 3)).epsilon(1e-12));
}
