#include "surfhps/cli_app.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfhps/core.hpp"
#include "surfhps/evolution.hpp"
#include "surfhps/hps.hpp"
#include "surfhps/io.hpp"
#include "surfhps/kinetics.hpp"
#include "surfhps/pde.hpp"
#include "surfhps/presets.hpp"
#include "surfhps/projector.hpp"
#include "surfhps/simulation.hpp"
#include "surfhps/sph_harm.hpp"
#include "surfhps/surface_mesh.hpp"

namespace surfhps {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Config assembly: preset defaults < config file < --set overrides < shortcut
// flags. Everything downstream reads the merged key=value map only.

struct CommonArgs {
    std::string preset;
    std::string config_path;
    std::string out;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;
};

void attach_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-p,--preset", args.preset, "named preset supplying config defaults");
    cmd->add_option("-c,--config", args.config_path, "key=value config file");
    cmd->add_option("--set", args.overrides, "config override key=value (repeatable)")
        ->take_all();
    cmd->add_option("-o,--out", args.out, "output directory (default: out)");
    cmd->add_option("--seed", args.seed, "seed for the random initial conditions");
    cmd->add_option("--threads", args.threads, "worker threads (recorded; execution is serial)");
}

KeyValueConfig assemble_config(const CommonArgs& args) {
    KeyValueConfig cfg;
    if (!args.preset.empty()) {
        const Preset* p = find_preset(args.preset);
        require(p != nullptr, ErrorCode::InvalidArgument,
                "unknown preset '" + args.preset + "' (run `surfhps presets` for the list)");
        for (const auto& [k, v] : p->defaults) cfg.set(k, v);
        cfg.set("preset", p->name);
    }
    if (!args.config_path.empty()) {
        const KeyValueConfig file = KeyValueConfig::from_file(args.config_path);
        for (const auto& [k, v] : file.values()) cfg.set(k, v);
    }
    for (const auto& kv : args.overrides) cfg.apply(kv);
    if (!args.out.empty()) cfg.set("out", args.out);
    if (args.seed) cfg.set("seed", std::to_string(*args.seed));
    if (args.threads) cfg.set("threads", std::to_string(*args.threads));
    if (!cfg.has("out")) cfg.set("out", "out");
    return cfg;
}

// ---------------------------------------------------------------------------
// Geometry resolution

struct ResolvedGeometry {
    SurfaceMesh mesh;
    Projector projector;
    std::string description;
};

bool is_builtin_mesh(const std::string& key) {
    return key == "icosahedron" || key == "octahedron" || key == "tetrahedron" ||
           key == "hemisphere";
}

SurfaceMesh base_mesh_from_key(const std::string& key) {
    if (key == "icosahedron") return icosahedron_mesh();
    if (key == "octahedron") return octahedron_mesh();
    if (key == "tetrahedron") return tetrahedron_mesh();
    if (key == "hemisphere") return hemisphere_octant_mesh();
    return load_off(key);  // anything else is a file path
}

void project_vertices(SurfaceMesh& mesh, const Projector& proj) {
    for (Vec3& v : mesh.vertices) v = proj.project(v);
}

void refine_and_project(SurfaceMesh& mesh, const Projector& proj, int refine) {
    project_vertices(mesh, proj);
    for (int i = 0; i < refine; ++i) {
        mesh = refine_loop(mesh);
        project_vertices(mesh, proj);
    }
}

// Hollow-cube-with-tunnels surface: sum of squared pairwise cylinder/slab
// deviations minus 15.
Projector swiss_cheese_projector() {
    auto sq = [](double t) { return t * t; };
    auto d = [sq](const Vec3& p) {
        const double x = p[0], y = p[1], z = p[2];
        return sq(x * x + y * y - 4) + sq(z * z - 1) + sq(y * y + z * z - 4) + sq(x * x - 1) +
               sq(z * z + x * x - 4) + sq(y * y - 1) - 15.0;
    };
    auto grad = [](const Vec3& p) {
        const double x = p[0], y = p[1], z = p[2];
        return Vec3(4 * x * ((x * x + y * y - 4) + (x * x - 1) + (z * z + x * x - 4)),
                    4 * y * ((x * x + y * y - 4) + (y * y + z * z - 4) + (y * y - 1)),
                    4 * z * ((z * z - 1) + (y * y + z * z - 4) + (z * z + x * x - 4)));
    };
    return Projector::implicit(d, grad, 5.0, "swiss-cheese");
}

// Torus with azimuthally varying tube radius (Cassini-style quartic).
Projector asym_torus_projector() {
    constexpr double a = 2.0, b = 1.9, d0 = 1.0;
    constexpr double c2 = a * a - b * b;
    auto d = [](const Vec3& p) {
        const double x = p[0], y = p[1], z = p[2];
        const double q = x * x + y * y + z * z - d0 * d0 + b * b;
        const double lin = a * x + c2 * d0;
        return q * q - 4 * lin * lin - 4 * b * b * y * y;
    };
    auto grad = [](const Vec3& p) {
        const double x = p[0], y = p[1], z = p[2];
        const double q = x * x + y * y + z * z - d0 * d0 + b * b;
        return Vec3(4 * q * x - 8 * a * (a * x + c2 * d0), 4 * q * y - 8 * b * b * y, 4 * q * z);
    };
    return Projector::implicit(d, grad, 4.0, "asym-torus");
}

ResolvedGeometry resolve_geometry(const KeyValueConfig& cfg) {
    const std::string geom = cfg.get("geometry", cfg.has("mesh") ? "file" : "");
    require(!geom.empty(), ErrorCode::InvalidArgument,
            "no geometry: set geometry=... or mesh=PATH (or start from a preset)");
    const int refine = cfg.get_int("mesh_refine", 0);
    require(refine >= 0 && refine <= 10, ErrorCode::InvalidArgument,
            "mesh_refine must be in [0, 10]");

    ResolvedGeometry g;
    g.description = geom;
    if (geom == "sphere" || geom == "hemisphere") {
        const double radius = geom == "sphere" ? cfg.get_double("radius", 1.0) : 1.0;
        require(radius > 0, ErrorCode::InvalidArgument, "radius must be positive");
        g.projector = sphere_projector(radius);
        g.mesh = base_mesh_from_key(
            cfg.get("mesh", geom == "hemisphere" ? "hemisphere" : "icosahedron"));
        refine_and_project(g.mesh, g.projector, refine);
    } else if (geom == "dumbbell") {
        // Seed from a refined sphere mesh, then drop each vertex along its ray
        // onto the initial surface of revolution; the implicit projector then
        // owns the chart construction.
        g.mesh = base_mesh_from_key(cfg.get("mesh", "icosahedron"));
        refine_and_project(g.mesh, sphere_projector(1.0), refine);
        for (Vec3& v : g.mesh.vertices) v = dumbbell_surface_point(v);
        g.projector = EvolutionLaw::dumbbell().projector_at(0.0);
    } else if (geom == "swiss-cheese" || geom == "asym-torus") {
        const std::string mesh_key = cfg.get("mesh");
        require(!mesh_key.empty() && !is_builtin_mesh(mesh_key), ErrorCode::InvalidArgument,
                "geometry '" + geom + "' needs a user-supplied triangulation: set mesh=PATH "
                "(OFF format, vertices near the surface)");
        g.mesh = load_off(mesh_key);
        g.projector = geom == "swiss-cheese" ? swiss_cheese_projector() : asym_torus_projector();
        refine_and_project(g.mesh, g.projector, refine);
    } else if (geom == "file") {
        require(cfg.has("mesh"), ErrorCode::InvalidArgument, "geometry=file needs mesh=PATH");
        g.mesh = base_mesh_from_key(cfg.get("mesh"));
        g.projector = Projector::identity();
        for (int i = 0; i < refine; ++i) g.mesh = refine_loop(g.mesh);
    } else {
        fail(ErrorCode::InvalidArgument,
             "unknown geometry '" + geom +
                 "' (sphere|hemisphere|dumbbell|swiss-cheese|asym-torus|file)");
    }

    const std::string element = cfg.get("element", "tri");
    if (element == "quad-from-rhombus") {
        require(g.mesh.kind == MeshKind::Tri, ErrorCode::InvalidArgument,
                "element=quad-from-rhombus needs a triangle input mesh");
        g.mesh = rhombus_quadrilateralize(g.mesh);
        project_vertices(g.mesh, g.projector);  // centroids back onto the surface
    } else {
        require(element == "tri", ErrorCode::InvalidArgument,
                "unknown element '" + element + "' (tri|quad-from-rhombus)");
    }
    return g;
}

HpsOptions hps_options(const KeyValueConfig& cfg) {
    HpsOptions o;
    const std::string tree = cfg.get("tree", "balanced");
    if (tree == "sequential")
        o.tree_style = TreeStyle::Sequential;
    else
        require(tree == "balanced", ErrorCode::InvalidArgument,
                "unknown tree '" + tree + "' (balanced|sequential)");
    return o;
}

// ---------------------------------------------------------------------------
// Exact solutions and PDE selection

struct ExactSolution {
    std::function<double(const Vec3&)> u;
    double eigenvalue = 0;  // -lap u = eigenvalue * u on the unit sphere
    bool heat = false;      // u(x, t) = u(x) exp(-eigenvalue * t)
};

std::optional<ExactSolution> resolve_exact(const KeyValueConfig& cfg) {
    const std::string key = cfg.get("exact", "none");
    if (key.empty() || key == "none") return std::nullopt;
    auto harmonic = [](int l, int m, bool heat) {
        return ExactSolution{sph_harm_fn(l, m), sph_harm_eigenvalue(l), heat};
    };
    if (key == "Y43") return harmonic(4, 3, false);
    if (key == "Y20-10") return harmonic(20, 10, false);
    if (key == "Y32") return harmonic(3, 2, false);
    if (key == "heat-Y10") return harmonic(1, 0, true);
    fail(ErrorCode::InvalidArgument,
         "unknown exact solution '" + key + "' (Y43|Y20-10|Y32|heat-Y10|none)");
}

struct PdeSetup {
    PdeCoefficients pde;
    double shift = 0;
    std::string name;
};

PdeSetup resolve_pde(const KeyValueConfig& cfg) {
    const std::string key = cfg.get("pde", "poisson");
    if (key == "poisson") return {shifted_laplace_beltrami(0.0), 0.0, key};
    if (key == "shifted") {
        const double shift = cfg.get_double("shift", 1.0);
        return {shifted_laplace_beltrami(shift), shift, key};
    }
    fail(ErrorCode::InvalidArgument, "unknown pde '" + key + "' (poisson|shifted)");
}

// ---------------------------------------------------------------------------
// solve

int cmd_solve(const KeyValueConfig& cfg) {
    const std::string out = cfg.get("out");
    fs::create_directories(out);
    ResolvedGeometry geo = resolve_geometry(cfg);
    const int order = cfg.get_int("order", 8);
    const PdeSetup pde = resolve_pde(cfg);

    const auto t0 = Clock::now();
    HpsSolver solver(geo.mesh, order, geo.projector, hps_options(cfg));
    const double t_chart = seconds_since(t0);
    const auto t1 = Clock::now();
    solver.factor(pde.pde);
    const double t_factor = seconds_since(t1);

    std::printf("solve: %s, %d elements, order %d, %d nodes%s\n", geo.description.c_str(),
                geo.mesh.num_elems(), order, solver.nodes().num_global,
                solver.singular() ? " (mean-zero closed-surface solve)" : "");

    const auto exact = resolve_exact(cfg);
    std::vector<VtkField> fields;
    std::vector<std::pair<std::string, std::string>> extra;
    double t_solve = 0;
    if (exact) {
        require(!exact->heat, ErrorCode::InvalidArgument,
                "time-dependent exact solution: use the `evolve` subcommand");
        const double lam = exact->eigenvalue + pde.shift;
        const auto& uex = exact->u;
        const auto t2 = Clock::now();
        const VecX u = solver.solve([&](const Vec3& x) { return lam * uex(x); },
                                    [&](const Vec3& x) { return uex(x); });
        t_solve = seconds_since(t2);
        const VecX ue = sample_global(solver.nodes(), uex);
        const VecX err = (u - ue).cwiseAbs();
        const double linf = err.maxCoeff();
        const double rel = linf / ue.cwiseAbs().maxCoeff();
        std::printf("L_inf error %.6e (relative %.6e)\n", linf, rel);
        fields = {{"u", u}, {"exact", ue}, {"error", err}};
        write_csv(out + "/error.csv",
                  {"dofs", "elements", "order", "linf_error", "linf_relative"},
                  {{std::to_string(solver.nodes().num_global), std::to_string(geo.mesh.num_elems()),
                    std::to_string(order), format_number(linf), format_number(rel)}});
        extra.emplace_back("linf_error", format_number(linf));
        extra.emplace_back("linf_relative", format_number(rel));
    } else {
        const double fval = cfg.get_double("f_const", 1.0);
        const double hval = cfg.get_double("h_const", 0.0);
        const auto t2 = Clock::now();
        const VecX u = solver.solve([fval](const Vec3&) { return fval; },
                                    [hval](const Vec3&) { return hval; });
        t_solve = seconds_since(t2);
        std::printf("constant forcing f = %g: u in [%.6e, %.6e]\n", fval, u.minCoeff(),
                    u.maxCoeff());
        fields = {{"u", u}};
    }
    extra.emplace_back("dofs", std::to_string(solver.nodes().num_global));
    extra.emplace_back("elements", std::to_string(geo.mesh.num_elems()));
    extra.emplace_back("tree_depth", std::to_string(solver.tree_depth()));
    extra.emplace_back("mean_zero_solve", solver.singular() ? "true" : "false");

    write_vtk_surface(out + "/solution.vtk", solver.nodes(), solver.basis(), fields);
    write_csv(out + "/timings.csv", {"stage", "seconds"},
              {{"chart", format_number(t_chart)},
               {"factor", format_number(t_factor)},
               {"solve", format_number(t_solve)}});
    write_metadata(out, cfg.values(), extra);
    return 0;
}

// ---------------------------------------------------------------------------
// converge

struct SweepPoint {
    double value = 0;  // n or refinement level
    double h = 0;
    int dofs = 0;
    int elements = 0;
    double rel = 0;
    double abs = 0;
    double t_build = 0;
    double t_solve = 0;
};

SweepPoint run_point(const SurfaceMesh& mesh, int order, const Projector& proj,
                     const HpsOptions& opts, const PdeSetup& pde, const ExactSolution& exact) {
    SweepPoint pt;
    const auto t0 = Clock::now();
    HpsSolver solver(mesh, order, proj, opts);
    solver.factor(pde.pde);
    pt.t_build = seconds_since(t0);
    const double lam = exact.eigenvalue + pde.shift;
    const auto& uex = exact.u;
    const auto t1 = Clock::now();
    const VecX u = solver.solve([&](const Vec3& x) { return lam * uex(x); },
                                [&](const Vec3& x) { return uex(x); });
    pt.t_solve = seconds_since(t1);
    const VecX ue = sample_global(solver.nodes(), uex);
    pt.abs = (u - ue).cwiseAbs().maxCoeff();
    pt.rel = pt.abs / ue.cwiseAbs().maxCoeff();
    pt.dofs = solver.nodes().num_global;
    pt.elements = mesh.num_elems();
    pt.h = mesh_quality(mesh).h_max;
    return pt;
}

// Least-squares slope of y against x.
double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    return (n * sxy - sx * sy) / denom;
}

int cmd_converge(const KeyValueConfig& cfg) {
    const std::string out = cfg.get("out");
    fs::create_directories(out);
    const auto exact = resolve_exact(cfg);
    require(exact.has_value() && !exact->heat, ErrorCode::InvalidArgument,
            "converge needs a steady exact solution (exact=Y43|Y20-10|Y32)");
    const PdeSetup pde = resolve_pde(cfg);
    const HpsOptions opts = hps_options(cfg);
    const std::string sweep = cfg.get("sweep", "n");

    std::vector<SweepPoint> pts;
    if (sweep == "n") {
        const ResolvedGeometry geo = resolve_geometry(cfg);
        const int n0 = cfg.get_int("n_min", 4);
        const int n1 = cfg.get_int("n_max", 16);
        const int step = cfg.get_int("n_step", 1);
        require(n0 >= 2 && n1 >= n0 && step >= 1, ErrorCode::InvalidArgument,
                "need 2 <= n_min <= n_max and n_step >= 1");
        for (int n = n0; n <= n1; n += step) {
            SweepPoint pt = run_point(geo.mesh, n, geo.projector, opts, pde, *exact);
            pt.value = n;
            std::printf("n=%2d  dofs=%7d  L_inf=%.6e  rel=%.6e\n", n, pt.dofs, pt.abs, pt.rel);
            pts.push_back(pt);
        }
    } else if (sweep == "h") {
        require(sweep == "h", ErrorCode::InvalidArgument, "unknown sweep (n|h)");
        const int levels = cfg.get_int("levels", 3);
        require(levels >= 1 && levels <= 8, ErrorCode::InvalidArgument, "levels must be in [1, 8]");
        const int base_refine = cfg.get_int("mesh_refine", 0);
        const int order = cfg.get_int("order", 5);
        for (int lev = 0; lev < levels; ++lev) {
            KeyValueConfig level_cfg = cfg;
            level_cfg.set("mesh_refine", std::to_string(base_refine + lev));
            const ResolvedGeometry geo = resolve_geometry(level_cfg);
            SweepPoint pt = run_point(geo.mesh, order, geo.projector, opts, pde, *exact);
            pt.value = lev;
            std::printf("level=%d  h=%.4e  dofs=%7d  L_inf=%.6e  rel=%.6e\n", lev, pt.h, pt.dofs,
                        pt.abs, pt.rel);
            pts.push_back(pt);
        }
    } else {
        fail(ErrorCode::InvalidArgument, "unknown sweep '" + sweep + "' (n|h)");
    }

    // Fit on the decreasing stretch up to the smallest error; the tail past it
    // sits on the rounding floor and would bias the rate.
    size_t best = 0;
    for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i].rel < pts[best].rel) best = i;
    std::string rate_str;
    const std::string rate_kind = sweep == "n" ? "rho" : "order";
    if (best >= 1) {
        std::vector<double> xs, ys;
        for (size_t i = 0; i <= best; ++i) {
            xs.push_back(sweep == "n" ? pts[i].value : std::log(pts[i].h));
            ys.push_back(std::log(pts[i].rel));
        }
        const double slope = lsq_slope(xs, ys);
        const double rate = sweep == "n" ? std::exp(-slope) : slope;
        rate_str = format_number(rate);
        if (sweep == "n")
            std::printf("fitted error ~ rho^-n with rho = %.4f over %zu points\n", rate, best + 1);
        else
            std::printf("fitted error ~ h^p with p = %.3f over %zu points\n", rate, best + 1);
    } else {
        std::printf("not enough decreasing points to fit a rate\n");
    }

    std::vector<std::vector<std::string>> rows, timing_rows;
    for (const SweepPoint& pt : pts) {
        rows.push_back({sweep == "n" ? std::to_string(static_cast<int>(pt.value))
                                     : std::to_string(static_cast<int>(pt.value)),
                        format_number(pt.h), std::to_string(pt.dofs), std::to_string(pt.elements),
                        format_number(pt.abs), format_number(pt.rel)});
        timing_rows.push_back({std::to_string(static_cast<int>(pt.value)),
                               format_number(pt.t_build), format_number(pt.t_solve)});
    }
    write_csv(out + "/convergence.csv",
              {sweep == "n" ? "n" : "level", "h_max", "dofs", "elements", "linf_error",
               "linf_relative"},
              rows);
    write_csv(out + "/summary.csv", {"sweep", "points", "fit_points", "rate_kind", "rate"},
              {{sweep, std::to_string(pts.size()), std::to_string(best + 1), rate_kind, rate_str}});
    write_csv(out + "/timings.csv", {"value", "build_seconds", "solve_seconds"}, timing_rows);
    std::vector<std::pair<std::string, std::string>> extra{{"rate_kind", rate_kind},
                                                           {"rate", rate_str}};
    write_metadata(out, cfg.values(), extra);
    return 0;
}

// ---------------------------------------------------------------------------
// evolve

struct KineticsSetup {
    ReactionSystem system;
    std::vector<std::string> names;
    std::string kind;
};

TuringParams turing_from_config(const KeyValueConfig& cfg) {
    TuringParams p;
    p.alpha = cfg.get_double("alpha", p.alpha);
    p.beta = cfg.get_double("beta", p.beta);
    p.gamma = cfg.get_double("gamma", p.gamma);
    p.r1 = cfg.get_double("r1", p.r1);
    p.r2 = cfg.get_double("r2", p.r2);
    p.delta_u2 = cfg.get_double("delta_u2", p.delta_u2);
    p.delta_u1 = cfg.has("delta_u1") ? cfg.get_double("delta_u1", p.delta_u1)
                                     : cfg.get_double("delta_u1_ratio", 0.516) * p.delta_u2;
    return p;
}

KineticsSetup resolve_kinetics(const KeyValueConfig& cfg) {
    const std::string kind = cfg.get("kinetics", "turing");
    if (kind == "none")
        return {heat_system(cfg.get_double("diffusion", 1.0)), {"u"}, kind};
    if (kind == "turing") return {turing_system(turing_from_config(cfg)), {"u1", "u2"}, kind};
    if (kind == "coupled") {
        CoupledParams p;
        p.u = turing_from_config(cfg);
        p.v = p.u;
        p.v.alpha = cfg.get_double("alpha2", 0.398);
        p.v.beta = cfg.get_double("beta2", -0.41);
        p.v.gamma = cfg.get_double("gamma2", -0.398);
        p.v.delta_u2 = cfg.get_double("delta_v2", 5e-3);
        p.v.delta_u1 = cfg.has("delta_v1")
                           ? cfg.get_double("delta_v1", p.v.delta_u1)
                           : cfg.get_double("delta_v1_ratio", 0.122) * p.v.delta_u2;
        p.q1 = cfg.get_double("q1", 0);
        p.q2 = cfg.get_double("q2", 0);
        p.q3 = cfg.get_double("q3", 0);
        return {coupled_system(p), {"u1", "u2", "v1", "v2"}, kind};
    }
    fail(ErrorCode::InvalidArgument, "unknown kinetics '" + kind + "' (none|turing|coupled)");
}

EvolutionLaw resolve_law(const KeyValueConfig& cfg) {
    const std::string key = cfg.get("law", "static");
    if (key == "static") return EvolutionLaw::static_surface();
    if (key == "logistic")
        return EvolutionLaw::isotropic_logistic(cfg.get_double("g_rate", 0.1),
                                                cfg.get_double("cap", 1.5),
                                                cfg.get_double("radius", 1.0));
    if (key == "linear")
        return EvolutionLaw::isotropic_linear(cfg.get_double("g_rate", 0.02),
                                              cfg.get_double("radius", 3.0));
    if (key == "aniso") return EvolutionLaw::anisotropic_axis(cfg.get_double("g_rate", 0.04));
    if (key == "dumbbell") return EvolutionLaw::dumbbell();
    fail(ErrorCode::InvalidArgument,
         "unknown law '" + key + "' (static|logistic|linear|aniso|dumbbell)");
}

int cmd_evolve(const KeyValueConfig& cfg) {
    const std::string out = cfg.get("out");
    fs::create_directories(out);
    ResolvedGeometry geo = resolve_geometry(cfg);
    const int order = cfg.get_int("order", 6);
    KineticsSetup kin = resolve_kinetics(cfg);
    const EvolutionLaw law = resolve_law(cfg);

    SimulationConfig sim;
    sim.scheme_order = cfg.get_int("scheme_order", 1);
    sim.dt = cfg.get_double("dt", 0.1);
    sim.t_end = cfg.get_double("t_end", 200.0);
    sim.snapshot_every = cfg.get_int("snapshot_every", 0);
    sim.seed = cfg.get_u64("seed", 0);
    sim.rebuild_every = cfg.get_int("rebuild_every", 1);
    sim.hps = hps_options(cfg);

    // Charts the surface without factoring: supplies the node numbering and
    // coordinates for exact data and artifact output.
    HpsSolver probe(geo.mesh, order, geo.projector, sim.hps);

    const auto exact = resolve_exact(cfg);
    std::optional<VecX> exact_profile;
    double exact_lambda = 0;
    if (exact) {
        require(exact->heat && kin.kind == "none", ErrorCode::InvalidArgument,
                "evolve checks exact solutions for pure diffusion only "
                "(exact=heat-Y10 with kinetics=none)");
        exact_profile = sample_global(probe.nodes(), exact->u);
        exact_lambda = exact->eigenvalue;
        sim.initial = {*exact_profile};
    }
    const std::string boot = cfg.get("bootstrap", "ramp");
    if (boot == "exact") {
        require(exact_profile.has_value(), ErrorCode::InvalidArgument,
                "bootstrap=exact needs a known time-dependent solution (exact=heat-Y10)");
        sim.bootstrap = BootstrapMode::ExactHistory;
        const VecX profile = *exact_profile;
        const double lam = exact_lambda;
        sim.exact_history = [profile, lam](double t) {
            return std::vector<VecX>{(profile * std::exp(-lam * t)).eval()};
        };
    } else {
        require(boot == "ramp", ErrorCode::InvalidArgument,
                "unknown bootstrap '" + boot + "' (ramp|exact)");
    }

    const auto t0 = Clock::now();
    const SimulationResult res =
        law.kind == EvolutionLaw::Kind::Static
            ? run_simulation(geo.mesh, order, geo.projector, kin.system, sim)
            : run_evolving(geo.mesh, order, geo.projector, law, kin.system, sim);
    const double t_run = seconds_since(t0);

    std::vector<std::vector<std::string>> stat_rows;
    for (const Snapshot& s : res.snapshots)
        for (size_t sp = 0; sp < s.species.size(); ++sp)
            stat_rows.push_back({std::to_string(s.step), format_number(s.time),
                                 format_number(s.area), kin.names[sp],
                                 format_number(s.stats[sp].min), format_number(s.stats[sp].max),
                                 format_number(s.stats[sp].mean),
                                 format_number(s.stats[sp].stddev)});
    write_csv(out + "/stats.csv", {"step", "time", "area", "species", "min", "max", "mean", "stddev"},
              stat_rows);

    for (const Snapshot& s : res.snapshots) {
        std::vector<VtkField> fields;
        for (size_t sp = 0; sp < s.species.size(); ++sp)
            fields.push_back({kin.names[sp], s.species[sp]});
        char name[64];
        std::snprintf(name, sizeof name, "/snapshot_%06d.vtk", s.step);
        write_vtk_surface(out + name, probe.nodes(), probe.basis(), fields, &s.coords);
    }

    std::vector<std::pair<std::string, std::string>> extra;
    extra.emplace_back("steps", std::to_string(res.steps));
    extra.emplace_back("final_time", format_number(res.final_time));
    extra.emplace_back("hps_builds", std::to_string(res.hps_builds));
    extra.emplace_back("geometry_rebuilds", std::to_string(res.geometry_rebuilds));
    extra.emplace_back("area_initial", format_number(res.snapshots.front().area));
    extra.emplace_back("area_final", format_number(res.snapshots.back().area));

    std::printf("evolve: %d steps to t = %g; %d factorization(s), %d geometry rebuild(s)\n",
                res.steps, res.final_time, res.hps_builds, res.geometry_rebuilds);
    const Snapshot& last = res.snapshots.back();
    for (size_t sp = 0; sp < last.species.size(); ++sp)
        std::printf("  %s: min %.6e  max %.6e  mean %.6e  std %.6e\n", kin.names[sp].c_str(),
                    last.stats[sp].min, last.stats[sp].max, last.stats[sp].mean,
                    last.stats[sp].stddev);

    if (exact_profile) {
        const VecX ue = *exact_profile * std::exp(-exact_lambda * res.final_time);
        const double linf = (last.species[0] - ue).cwiseAbs().maxCoeff();
        std::printf("L_inf error at t = %g: %.6e\n", res.final_time, linf);
        write_csv(out + "/error.csv", {"time", "linf_error"},
                  {{format_number(res.final_time), format_number(linf)}});
        extra.emplace_back("linf_error", format_number(linf));
    }

    write_csv(out + "/timings.csv", {"stage", "seconds"}, {{"run", format_number(t_run)}});
    write_metadata(out, cfg.values(), extra);
    return 0;
}

// ---------------------------------------------------------------------------
// quadify / quality / presets

int cmd_quadify(const std::string& input, const std::string& output) {
    const SurfaceMesh tri = load_off(input);
    const EdgeTable edges = build_edge_table(tri);
    require(edges.closed(), ErrorCode::InvalidArgument,
            "quadify needs a closed triangle mesh (every edge shared by two triangles)");
    const SurfaceMesh quad = rhombus_quadrilateralize(tri);
    save_off(quad, output);
    std::printf("%d triangles -> %d quads (%d vertices)\n", tri.num_elems(), quad.num_elems(),
                quad.num_vertices());
    return 0;
}

int cmd_quality(const KeyValueConfig& cfg) {
    const ResolvedGeometry geo = resolve_geometry(cfg);
    const MeshQuality q = mesh_quality(geo.mesh);
    const EdgeTable edges = build_edge_table(geo.mesh);
    const std::string boundary =
        edges.closed() ? "closed"
                       : std::to_string(edges.num_boundary_edges) + " boundary edges";
    std::printf("%s mesh: %d elements, %d vertices, %zu edges (%s)\n",
                geo.mesh.kind == MeshKind::Tri ? "triangle" : "quad", geo.mesh.num_elems(),
                geo.mesh.num_vertices(), edges.edges.size(), boundary.c_str());
    std::printf("h_max %.6g, r_min %.6g, aspect %.6g, min angle %.3f deg\n", q.h_max, q.r_min,
                q.aspect, q.min_angle_deg);
    if (q.needle_warning) std::printf("warning: needle element (min angle below 5 degrees)\n");
    return 0;
}

int cmd_presets() {
    for (const Preset& p : all_presets()) std::printf("%-22s %s\n", p.name.c_str(), p.summary.c_str());
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"surfhps: high-order direct solver for elliptic and reaction-diffusion "
                 "equations on static and evolving triangulated surfaces"};
    app.require_subcommand(1);

    CommonArgs solve_args, conv_args, evolve_args, quality_args;
    CLI::App* solve_cmd =
        app.add_subcommand("solve", "solve one elliptic problem and write artifacts");
    attach_common(solve_cmd, solve_args);
    CLI::App* conv_cmd = app.add_subcommand("converge", "error sweep over order n or mesh size h");
    attach_common(conv_cmd, conv_args);
    CLI::App* evolve_cmd = app.add_subcommand("evolve", "time-step a reaction-diffusion system");
    attach_common(evolve_cmd, evolve_args);
    std::string quadify_in, quadify_out;
    CLI::App* quad_cmd =
        app.add_subcommand("quadify", "rhombus-quadrilateralize a closed triangle mesh");
    quad_cmd->add_option("input", quadify_in, "input OFF mesh")->required();
    quad_cmd->add_option("output", quadify_out, "output OFF mesh")->required();
    CLI::App* quality_cmd = app.add_subcommand("quality", "mesh quality report");
    attach_common(quality_cmd, quality_args);
    CLI::App* presets_cmd = app.add_subcommand("presets", "list the named presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(assemble_config(solve_args));
        if (conv_cmd->parsed()) return cmd_converge(assemble_config(conv_args));
        if (evolve_cmd->parsed()) return cmd_evolve(assemble_config(evolve_args));
        if (quad_cmd->parsed()) return cmd_quadify(quadify_in, quadify_out);
        if (quality_cmd->parsed()) return cmd_quality(assemble_config(quality_args));
        if (presets_cmd->parsed()) return cmd_presets();
    } catch (const SolverError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        switch (e.code()) {
            case ErrorCode::InvalidArgument:
            case ErrorCode::MeshFormat:
            case ErrorCode::Io:
                return 2;
            default:
                return 3;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}

}  // namespace surfhps
