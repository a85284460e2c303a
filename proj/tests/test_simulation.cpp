#include <doctest.h>

#include <cmath>
#include <vector>

#include "surfhps/core.hpp"
#include "surfhps/evolution.hpp"
#include "surfhps/hps.hpp"
#include "surfhps/simulation.hpp"
#include "surfhps/sph_harm.hpp"
#include "surfhps/surface_mesh.hpp"
#include "support/test_support.hpp"

using namespace surfhps;

namespace {

SurfaceMesh sphere_mesh() {
    return project_mesh_vertices(octahedron_mesh(), sphere_projector());
}

ReactionSystem linear_growth_system() {
    ReactionSystem sys;
    sys.diffusion = {1.0};
    sys.rhs = [](const std::vector<VecX>& u, std::vector<VecX>& f) { f = u; };
    return sys;
}

}  // namespace

TEST_CASE("random initial conditions are reproducible and in range") {
    const auto a = random_initial_conditions(2, 100, 42);
    const auto b = random_initial_conditions(2, 100, 42);
    const auto c = random_initial_conditions(2, 100, 43);
    REQUIRE(a.size() == 2);
    CHECK((a[0] - b[0]).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a[1] - b[1]).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a[0] - c[0]).cwiseAbs().maxCoeff() > 0.0);
    for (const auto& v : a) {
        CHECK(v.minCoeff() >= -0.5);
        CHECK(v.maxCoeff() <= 0.5);
    }
    CHECK(std::abs(a[0].mean()) < 0.1);
}

TEST_CASE("static runs factor each implicit operator exactly once") {
    const SurfaceMesh mesh = sphere_mesh();
    SimulationConfig cfg;
    cfg.scheme_order = 2;
    cfg.dt = 0.01;
    cfg.seed = 5;

    cfg.t_end = 0.05;  // 5 steps
    const auto short_run = run_simulation(mesh, 4, sphere_projector(), heat_system(), cfg);
    cfg.t_end = 0.5;  // 50 steps
    cfg.snapshot_every = 10;
    const auto long_run = run_simulation(mesh, 4, sphere_projector(), heat_system(), cfg);

    // Ramp start uses scheme orders 1 and 2 -> two factorizations, independent
    // of the number of steps.
    CHECK(short_run.hps_builds == 2);
    CHECK(long_run.hps_builds == 2);
    CHECK(short_run.geometry_rebuilds == 0);
    CHECK(short_run.steps == 5);
    CHECK(long_run.steps == 50);
    CHECK(long_run.final_time == doctest::Approx(0.5).epsilon(1e-12));

    // Snapshot cadence: initial + every 10th -> steps 0,10,20,30,40,50.
    REQUIRE(long_run.snapshots.size() == 6);
    CHECK(long_run.snapshots.front().step == 0);
    CHECK(long_run.snapshots.back().step == 50);
    CHECK(short_run.snapshots.size() == 2);  // cadence 0: initial + final only

    // Snapshot bookkeeping is self-consistent.
    const Snapshot& snap = long_run.snapshots[2];
    REQUIRE(snap.species.size() == 1);
    CHECK(snap.stats[0].mean == doctest::Approx(snap.species[0].mean()).epsilon(1e-14));
    CHECK(snap.stats[0].max == snap.species[0].maxCoeff());
    CHECK(snap.coords.rows() == snap.species[0].size());

    // Two distinct diffusion coefficients double the operator count.
    SimulationConfig cfg2 = cfg;
    cfg2.t_end = 0.05;
    const auto turing = run_simulation(mesh, 4, sphere_projector(),
                                       turing_system(TuringParams{}), cfg2);
    CHECK(turing.hps_builds == 4);
}

TEST_CASE("driver reproduces the multistep order on the constant eigenmode") {
    // Spatially constant data: the surface Laplacian term vanishes identically,
    // so the run reduces to the scalar ODE u' = u and the measured error is the
    // pure time-integration error of the wired-up tableau/history machinery.
    const SurfaceMesh mesh = sphere_mesh();
    HpsSolver probe(mesh, 4, sphere_projector());
    const int nn = probe.nodes().num_global;

    auto final_error = [&](int m, double dt) {
        SimulationConfig cfg;
        cfg.scheme_order = m;
        cfg.dt = dt;
        cfg.t_end = 1.0;
        cfg.bootstrap = BootstrapMode::ExactHistory;
        cfg.exact_history = [&](double t) {
            return std::vector<VecX>{VecX::Constant(nn, std::exp(t))};
        };
        const auto res =
            run_simulation(mesh, 4, sphere_projector(), linear_growth_system(), cfg);
        const VecX& u = res.snapshots.back().species[0];
        return (u.array() - std::exp(1.0)).abs().maxCoeff();
    };

    for (int m : {2, 3}) {
        CAPTURE(m);
        const double e1 = final_error(m, 0.05);
        const double e2 = final_error(m, 0.025);
        const double order = std::log2(e1 / e2);
        CHECK(order > m - 0.3);
        CHECK(order < m + 0.9);
    }
}

TEST_CASE("heat flow with reaction tracks a separable exact solution") {
    // u_t = lap u + u with u = Y_1^0 exp(-t) on the unit sphere (eigenvalue 2).
    const SurfaceMesh mesh = refine_loop(sphere_mesh());
    const SurfaceMesh snapped = project_mesh_vertices(mesh, sphere_projector());
    HpsSolver probe(snapped, 6, sphere_projector());
    const VecX y10 = sample_global(probe.nodes(), sph_harm_fn(1, 0));

    SimulationConfig cfg;
    cfg.scheme_order = 3;
    cfg.dt = 2.5e-3;
    cfg.t_end = 0.05;
    cfg.bootstrap = BootstrapMode::ExactHistory;
    cfg.exact_history = [&](double t) {
        return std::vector<VecX>{VecX(y10 * std::exp(-t))};
    };
    const auto res =
        run_simulation(snapped, 6, sphere_projector(), linear_growth_system(), cfg);
    const VecX expect = y10 * std::exp(-cfg.t_end);
    CHECK((res.snapshots.back().species[0] - expect).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("identical seeds give bit-identical trajectories; different seeds differ") {
    const SurfaceMesh mesh = sphere_mesh();
    SimulationConfig cfg;
    cfg.scheme_order = 2;
    cfg.dt = 0.1;
    cfg.t_end = 1.0;
    cfg.seed = 7;
    const auto sys = turing_system(TuringParams{});
    const auto r1 = run_simulation(mesh, 4, sphere_projector(), sys, cfg);
    const auto r2 = run_simulation(mesh, 4, sphere_projector(), sys, cfg);
    cfg.seed = 8;
    const auto r3 = run_simulation(mesh, 4, sphere_projector(), sys, cfg);
    for (int s = 0; s < 2; ++s) {
        CHECK((r1.snapshots.back().species[s] - r2.snapshots.back().species[s])
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
    }
    CHECK((r1.snapshots.back().species[0] - r3.snapshots.back().species[0])
              .cwiseAbs()
              .maxCoeff() > 0.0);
}

TEST_CASE("quadratic growth is reported as divergence, not garbage output") {
    const SurfaceMesh mesh = sphere_mesh();
    HpsSolver probe(mesh, 4, sphere_projector());
    ReactionSystem sys;
    sys.diffusion = {1.0};
    sys.rhs = [](const std::vector<VecX>& u, std::vector<VecX>& f) {
        f.resize(1);
        f[0] = u[0].cwiseProduct(u[0]);
    };
    SimulationConfig cfg;
    cfg.scheme_order = 1;
    cfg.dt = 0.5;
    cfg.t_end = 20.0;
    cfg.initial = {VecX::Constant(probe.nodes().num_global, 3.0)};
    try {
        run_simulation(mesh, 4, sphere_projector(), sys, cfg);
        FAIL("expected divergence");
    } catch (const SolverError& e) {
        CHECK(e.code() == ErrorCode::Diverged);
    }
}

TEST_CASE("evolving driver with the identity law matches the static driver") {
    const SurfaceMesh mesh = sphere_mesh();
    SimulationConfig cfg;
    cfg.scheme_order = 2;
    cfg.dt = 0.1;
    cfg.t_end = 0.5;
    cfg.seed = 3;
    const auto sys = turing_system(TuringParams{});
    const auto fixed = run_simulation(mesh, 4, sphere_projector(), sys, cfg);
    const auto moving = run_evolving(mesh, 4, sphere_projector(),
                                     EvolutionLaw::static_surface(), sys, cfg);
    CHECK(moving.geometry_rebuilds == 0);
    for (int s = 0; s < 2; ++s)
        CHECK((fixed.snapshots.back().species[s] - moving.snapshots.back().species[s])
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
}

TEST_CASE("logistic growth: rebuild cadence and tracked surface area") {
    const SurfaceMesh mesh = sphere_mesh();
    const EvolutionLaw law = EvolutionLaw::isotropic_logistic(0.1, 1.5, 1.0);
    SimulationConfig cfg;
    cfg.scheme_order = 1;
    cfg.dt = 0.1;
    cfg.t_end = 1.0;
    cfg.seed = 1;

    const auto every = run_evolving(mesh, 6, sphere_projector(), law, heat_system(), cfg);
    CHECK(every.geometry_rebuilds == 10);
    CHECK(every.hps_builds == 10);  // each rebuild invalidates the one operator

    cfg.rebuild_every = 2;
    const auto alternate = run_evolving(mesh, 6, sphere_projector(), law, heat_system(), cfg);
    CHECK(alternate.geometry_rebuilds == 5);
    CHECK(alternate.hps_builds == 5);

    // Final snapshot area ~ 4*pi*eta(T)^2 for the logistic radius factor.
    const double g = 0.1, k = 1.5, t = 1.0;
    const double eta = k * std::exp(g * t) / (k + std::exp(g * t) - 1.0);
    const double expect = 4.0 * M_PI * eta * eta;
    CHECK(std::abs(every.snapshots.back().area - expect) / expect < 1e-3);
    CHECK(every.snapshots.front().area ==
          doctest::Approx(4.0 * M_PI).epsilon(1e-3));  // starts on the unit sphere
    CHECK(every.snapshots.back().area > every.snapshots.front().area);
}

TEST_CASE("local maxima counter sees one bump per actual bump") {
    const SurfaceMesh mesh = sphere_mesh();
    HpsSolver probe(mesh, 5, sphere_projector());
    const int nn = probe.nodes().num_global;

    CHECK(count_local_maxima(probe, VecX::Constant(nn, 2.5)) == 0);

    const VecX pole = sample_global(probe.nodes(), [](const Vec3& p) { return p[2]; });
    CHECK(count_local_maxima(probe, pole) == 1);

    const VecX two_bumps = sample_global(probe.nodes(), [](const Vec3& p) {
        const double d1 = (p - Vec3(1, 0, 0)).squaredNorm();
        const double d2 = (p + Vec3(1, 0, 0)).squaredNorm();
        return std::exp(-4.0 * d1) + std::exp(-4.0 * d2);
    });
    CHECK(count_local_maxima(probe, two_bumps) == 2);

    CHECK_THROWS_AS(count_local_maxima(probe, VecX::Ones(3)), SolverError);
}

TEST_CASE("configuration errors are rejected up front") {
    const SurfaceMesh open_mesh = hemisphere_octant_mesh();
    const SurfaceMesh mesh = sphere_mesh();
    SimulationConfig ok;
    ok.dt = 0.1;
    ok.t_end = 0.2;

    CHECK_THROWS_AS(run_simulation(open_mesh, 4, sphere_projector(), heat_system(), ok),
                    SolverError);

    SimulationConfig bad = ok;
    bad.dt = 0.0;
    CHECK_THROWS_AS(run_simulation(mesh, 4, sphere_projector(), heat_system(), bad),
                    SolverError);
    bad = ok;
    bad.scheme_order = 5;
    CHECK_THROWS_AS(run_simulation(mesh, 4, sphere_projector(), heat_system(), bad),
                    SolverError);
    bad = ok;
    bad.rebuild_every = 0;
    CHECK_THROWS_AS(run_simulation(mesh, 4, sphere_projector(), heat_system(), bad),
                    SolverError);
    bad = ok;
    bad.scheme_order = 3;
    bad.bootstrap = BootstrapMode::ExactHistory;  // no exact_history callable
    CHECK_THROWS_AS(run_simulation(mesh, 4, sphere_projector(), heat_system(), bad),
                    SolverError);

    ReactionSystem negative;
    negative.diffusion = {-1.0};
    CHECK_THROWS_AS(run_simulation(mesh, 4, sphere_projector(), negative, ok), SolverError);
}
