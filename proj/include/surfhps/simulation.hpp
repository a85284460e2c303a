#pragma once

// IMEX-BDF time integration of reaction-diffusion systems on static and
// evolving surfaces.  Each implicit step solves
//
//   (I - omega*dt*delta_s*lap) u_s^{n+1} = sum_i a_i u_s^{n-i} + dt sum_i b_i F_s^{n-i}
//
// per species with the hierarchical direct solver; on static geometry each
// distinct (scheme order, diffusion) operator is factored exactly once no
// matter how many steps run.  Evolving runs move the chart nodes with the
// material (connectivity fixed), refresh geometry every `rebuild_every`
// steps, and refactor on the updated surface.

#include <cstdint>
#include <functional>
#include <vector>

#include "surfhps/core.hpp"
#include "surfhps/evolution.hpp"
#include "surfhps/hps.hpp"
#include "surfhps/kinetics.hpp"

namespace surfhps {

// Multi-step start-up strategy. Ramp raises the scheme order 1..M over the
// first steps (self-starting, but the first-order start caps the observable
// temporal order near 2). ExactHistory seeds the M history states from a
// user-supplied time->state callable (full order M; used in benchmarks with
// known solutions).
enum class BootstrapMode { Ramp, ExactHistory };

struct ReactionSystem {
    std::vector<double> diffusion;  // per-species diffusion coefficients (> 0)
    // Kinetic terms F(u); null means pure diffusion (F = 0).
    std::function<void(const std::vector<VecX>&, std::vector<VecX>&)> rhs;
    int species() const { return static_cast<int>(diffusion.size()); }
};

ReactionSystem turing_system(const TuringParams& p);
ReactionSystem coupled_system(const CoupledParams& p);
ReactionSystem heat_system(double diffusion = 1.0);

struct SimulationConfig {
    int scheme_order = 1;  // IMEX-BDF order M in {1,2,3,4}
    double dt = 0.1;
    double t_end = 200.0;
    int snapshot_every = 0;  // record every k steps (0: initial + final only)
    std::uint64_t seed = 0;  // drives the random initial conditions
    BootstrapMode bootstrap = BootstrapMode::Ramp;
    std::function<std::vector<VecX>(double)> exact_history;  // ExactHistory only
    std::vector<VecX> initial;  // explicit initial state; empty -> random
    int rebuild_every = 1;      // evolving runs: geometry refresh cadence
    HpsOptions hps{};
};

struct SpeciesStats {
    double min = 0, max = 0, mean = 0, stddev = 0;
};

struct Snapshot {
    int step = 0;
    double time = 0;
    double area = 0;                  // surface area at snapshot time
    std::vector<VecX> species;        // nodal values per species
    std::vector<SpeciesStats> stats;  // per species
    MatX coords;                      // global node coordinates at snapshot time
};

struct SimulationResult {
    std::vector<Snapshot> snapshots;  // always contains initial and final state
    int steps = 0;
    double final_time = 0;
    int hps_builds = 0;         // elliptic factorizations performed
    int geometry_rebuilds = 0;  // chart refreshes (evolving runs)
};

// Uniform [-0.5, 0.5] nodal values per species from a fixed-seed generator;
// bit-reproducible across runs and platforms.
std::vector<VecX> random_initial_conditions(int num_species, int num_nodes, std::uint64_t seed);

// Reaction-diffusion on a fixed closed surface.
SimulationResult run_simulation(const SurfaceMesh& mesh, int order, const Projector& projector,
                                const ReactionSystem& system, const SimulationConfig& config);

// Reaction-diffusion on a surface evolving under `law`; the projector places
// the initial mesh on the t = 0 surface, after which chart nodes move with
// the material points.
SimulationResult run_evolving(const SurfaceMesh& mesh, int order, const Projector& projector,
                              const EvolutionLaw& law, const ReactionSystem& system,
                              const SimulationConfig& config);

// Count strict local maxima of a nodal field over the element-shared node
// graph (used to compare pattern counts between runs).
int count_local_maxima(const HpsSolver& solver, const VecX& nodal);

}  // namespace surfhps
