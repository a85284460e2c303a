#include "surfhps/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <memory>
#include <random>

#include "surfhps/imex.hpp"

namespace surfhps {

ReactionSystem turing_system(const TuringParams& p) {
    ReactionSystem sys;
    sys.diffusion = turing_diffusions(p);
    sys.rhs = [p](const std::vector<VecX>& u, std::vector<VecX>& f) {
        f.resize(2);
        turing_rhs(p, u[0], u[1], f[0], f[1]);
    };
    return sys;
}

ReactionSystem coupled_system(const CoupledParams& p) {
    ReactionSystem sys;
    sys.diffusion = coupled_diffusions(p);
    sys.rhs = [p](const std::vector<VecX>& u, std::vector<VecX>& f) { coupled_rhs(p, u, f); };
    return sys;
}

ReactionSystem heat_system(double diffusion) {
    ReactionSystem sys;
    sys.diffusion = {diffusion};
    sys.rhs = nullptr;
    return sys;
}

std::vector<VecX> random_initial_conditions(int num_species, int num_nodes, std::uint64_t seed) {
    // One fixed-order stream; doubles drawn by the 53-bit shift construction so
    // the sequence does not depend on the standard library's distribution.
    std::mt19937_64 rng(seed);
    std::vector<VecX> out(num_species);
    for (int s = 0; s < num_species; ++s) {
        out[s].resize(num_nodes);
        for (int i = 0; i < num_nodes; ++i) {
            const double u01 = double(rng() >> 11) * 0x1.0p-53;
            out[s][i] = u01 - 0.5;
        }
    }
    return out;
}

namespace {

SpeciesStats field_stats(const VecX& v) {
    SpeciesStats st;
    st.min = v.minCoeff();
    st.max = v.maxCoeff();
    st.mean = v.mean();
    st.stddev = std::sqrt((v.array() - st.mean).square().mean());
    return st;
}

// Shared implementation of the static and evolving drivers. Solvers are keyed
// by (scheme order, diffusion): the implicit operator depends on both through
// omega(M)*dt*delta, and each is factored lazily on first use, then reused
// until the geometry changes.
class Driver {
  public:
    Driver(const SurfaceMesh& mesh, int order, const Projector& projector,
           const EvolutionLaw* law, const ReactionSystem& system, const SimulationConfig& config)
        : order_(order), law_(law), sys_(system), cfg_(config) {
        require(sys_.species() > 0, ErrorCode::InvalidArgument,
                "reaction system has no species");
        for (double d : sys_.diffusion)
            require(d > 0.0, ErrorCode::InvalidArgument,
                    "diffusion coefficients must be positive");
        require(cfg_.scheme_order >= 1 && cfg_.scheme_order <= 4, ErrorCode::InvalidArgument,
                "IMEX-BDF order must be between 1 and 4");
        require(cfg_.dt > 0.0, ErrorCode::InvalidArgument, "time step must be positive");
        require(cfg_.rebuild_every >= 1, ErrorCode::InvalidArgument,
                "geometry rebuild cadence must be >= 1");

        base_ = std::make_unique<HpsSolver>(mesh, order, projector, cfg_.hps);
        require(base_->closed(), ErrorCode::InvalidArgument,
                "time stepping requires a closed surface (no exterior boundary)");
        charts_ = base_->charts();
        if (law_) {
            charts0_ = charts_;  // material configuration at t = 0
        }
    }

    SimulationResult run() {
        const int num_species = sys_.species();
        const int num_nodes = base_->nodes().num_global;
        const int steps_total = static_cast<int>(std::llround(cfg_.t_end / cfg_.dt));
        require(steps_total >= 0, ErrorCode::InvalidArgument, "negative time horizon");

        std::vector<std::deque<VecX>> hist_u(num_species), hist_f(num_species);
        auto push_state = [&](const std::vector<VecX>& state) {
            std::vector<VecX> f;
            if (sys_.rhs) {
                sys_.rhs(state, f);
                require(static_cast<int>(f.size()) == num_species, ErrorCode::InvalidArgument,
                        "kinetics returned wrong species count");
            }
            for (int s = 0; s < num_species; ++s) {
                hist_u[s].push_front(state[s]);
                if (sys_.rhs) hist_f[s].push_front(f[s]);
                while (static_cast<int>(hist_u[s].size()) > cfg_.scheme_order) {
                    hist_u[s].pop_back();
                    if (sys_.rhs) hist_f[s].pop_back();
                }
            }
        };

        SimulationResult result;
        int first_step = 0;
        if (cfg_.bootstrap == BootstrapMode::ExactHistory && cfg_.scheme_order > 1) {
            require(static_cast<bool>(cfg_.exact_history), ErrorCode::InvalidArgument,
                    "ExactHistory bootstrap needs an exact_history callable");
            require(steps_total >= cfg_.scheme_order, ErrorCode::InvalidArgument,
                    "time horizon shorter than the multistep history");
            for (int i = 0; i < cfg_.scheme_order; ++i) {
                std::vector<VecX> state = cfg_.exact_history(i * cfg_.dt);
                validate_state(state, num_species, num_nodes);
                push_state(state);
                record(result, i, i * cfg_.dt, hist_u, steps_total);
            }
            first_step = cfg_.scheme_order - 1;
        } else {
            std::vector<VecX> state = cfg_.initial;
            if (state.empty())
                state = random_initial_conditions(num_species, num_nodes, cfg_.seed);
            validate_state(state, num_species, num_nodes);
            push_state(state);
            record(result, 0, 0.0, hist_u, steps_total);
        }

        for (int step = first_step + 1; step <= steps_total; ++step) {
            const double t_new = step * cfg_.dt;
            if (law_ && (step - first_step - 1) % cfg_.rebuild_every == 0) {
                refresh_geometry(t_new);
                ++result.geometry_rebuilds;
            }

            const int m = (cfg_.bootstrap == BootstrapMode::Ramp)
                              ? std::min<int>(step, cfg_.scheme_order)
                              : cfg_.scheme_order;
            const ImexBdfTableau tab = imex_bdf_tableau(m);

            std::vector<VecX> state(num_species);
            for (int s = 0; s < num_species; ++s) {
                VecX rhs = VecX::Zero(num_nodes);
                for (int i = 0; i < m; ++i) {
                    rhs += tab.a[i] * hist_u[s][i];
                    if (sys_.rhs) rhs += cfg_.dt * tab.b[i] * hist_f[s][i];
                }
                HpsSolver& solver = solver_for(m, sys_.diffusion[s], tab.omega);
                try {
                    state[s] = solver.solve(rhs);
                } catch (const SolverError& e) {
                    if (e.code() == ErrorCode::Diverged)
                        fail(ErrorCode::Diverged,
                             "solution blew up at step " + std::to_string(step) +
                                 " (t = " + std::to_string(t_new) + ") in species " +
                                 std::to_string(s + 1));
                    throw;
                }
                if (!state[s].allFinite())
                    fail(ErrorCode::Diverged,
                         "solution blew up at step " + std::to_string(step) +
                             " (t = " + std::to_string(t_new) + ") in species " +
                             std::to_string(s + 1));
            }
            push_state(state);
            record(result, step, t_new, hist_u, steps_total);
        }

        result.steps = steps_total;
        result.final_time = steps_total * cfg_.dt;
        result.hps_builds = hps_builds_;
        return result;
    }

    const HpsSolver& base_solver() const { return *base_; }

  private:
    static void validate_state(const std::vector<VecX>& state, int num_species, int num_nodes) {
        require(static_cast<int>(state.size()) == num_species, ErrorCode::InvalidArgument,
                "state has wrong species count");
        for (const VecX& v : state)
            require(v.size() == num_nodes, ErrorCode::InvalidArgument,
                    "state vector length does not match the global node count");
    }

    void record(SimulationResult& result, int step, double time,
                const std::vector<std::deque<VecX>>& hist_u, int steps_total) {
        const bool wanted = step == 0 || step == steps_total ||
                            (cfg_.snapshot_every > 0 && step % cfg_.snapshot_every == 0);
        if (!wanted) return;
        Snapshot snap;
        snap.step = step;
        snap.time = time;
        snap.area = current_area();
        snap.coords = base_->nodes().coords;
        for (const auto& h : hist_u) {
            snap.species.push_back(h.front());
            snap.stats.push_back(field_stats(h.front()));
        }
        result.snapshots.push_back(std::move(snap));
    }

    double current_area() {
        if (!law_) {
            if (static_area_ < 0.0) static_area_ = surface_area(charts_, base_->basis());
            return static_area_;
        }
        return surface_area(charts_, base_->basis());
    }

    // Move the material chart nodes to time t and invalidate factorizations.
    void refresh_geometry(double t) {
        const ReferenceBasis& basis = base_->basis();
        for (std::size_t e = 0; e < charts0_.size(); ++e) {
            MatX x_t = evolve_nodes(*law_, charts0_[e].x, t);
            charts_[e] = chart_from_nodes(charts0_[e].elem, x_t, basis);
        }
        base_->update_charts(charts_);
        for (auto& [key, solver] : solvers_)
            solver->update_charts(charts_);
    }

    HpsSolver& solver_for(int scheme_order, double delta, double omega) {
        const auto key = std::make_pair(scheme_order, delta);
        auto it = solvers_.find(key);
        if (it == solvers_.end()) {
            auto solver = std::make_unique<HpsSolver>(base_->mesh(), order_, charts_, cfg_.hps);
            it = solvers_.emplace(key, std::move(solver)).first;
        }
        if (!it->second->factored()) {
            it->second->factor(implicit_step_operator(omega * cfg_.dt * delta, 1.0));
            ++hps_builds_;
        }
        return *it->second;
    }

    int order_;
    const EvolutionLaw* law_;
    const ReactionSystem& sys_;
    SimulationConfig cfg_;

    std::unique_ptr<HpsSolver> base_;  // geometry/topology reference (never factored)
    std::map<std::pair<int, double>, std::unique_ptr<HpsSolver>> solvers_;
    std::vector<ChartedElement> charts_;   // current geometry
    std::vector<ChartedElement> charts0_;  // material configuration (evolving)
    double static_area_ = -1.0;
    int hps_builds_ = 0;
};

}  // namespace

SimulationResult run_simulation(const SurfaceMesh& mesh, int order, const Projector& projector,
                                const ReactionSystem& system, const SimulationConfig& config) {
    Driver driver(mesh, order, projector, nullptr, system, config);
    return driver.run();
}

SimulationResult run_evolving(const SurfaceMesh& mesh, int order, const Projector& projector,
                              const EvolutionLaw& law, const ReactionSystem& system,
                              const SimulationConfig& config) {
    if (law.kind == EvolutionLaw::Kind::Static) {
        // Identity law: defer to the static driver so no rebuilds happen.
        Driver driver(mesh, order, projector, nullptr, system, config);
        return driver.run();
    }
    Driver driver(mesh, order, projector, &law, system, config);
    return driver.run();
}

int count_local_maxima(const HpsSolver& solver, const VecX& nodal) {
    const GlobalNodeTable& table = solver.nodes();
    require(nodal.size() == table.num_global, ErrorCode::InvalidArgument,
            "field length does not match the global node count");
    std::vector<std::vector<int>> adj(table.num_global);
    for (const auto& l2g : table.local_to_global)
        for (int a : l2g)
            for (int b : l2g)
                if (a != b) adj[a].push_back(b);
    int count = 0;
    for (int i = 0; i < table.num_global; ++i) {
        auto& nb = adj[i];
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        if (nb.empty()) continue;
        bool is_max = true;
        for (int j : nb)
            if (nodal[i] <= nodal[j]) {
                is_max = false;
                break;
            }
        count += is_max ? 1 : 0;
    }
    return count;
}

}  // namespace surfhps
