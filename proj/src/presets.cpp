#include "surfhps/presets.hpp"

namespace surfhps {

namespace {

using Map = std::map<std::string, std::string>;

Map turing_spot_defaults() {
    return {
        {"kinetics", "turing"}, {"alpha", "0.899"},      {"beta", "-0.91"},
        {"gamma", "-0.899"},    {"r1", "0.02"},          {"r2", "0.2"},
        {"delta_u2", "5e-3"},   {"delta_u1_ratio", "0.516"},
        {"scheme_order", "1"},  {"dt", "0.1"},           {"t_end", "200"},
        {"snapshot_every", "200"},
    };
}

std::vector<Preset> build_presets() {
    std::vector<Preset> p;

    // --- elliptic benchmarks -------------------------------------------------
    p.push_back({"sphere-Y43",
                 "shifted Laplace-Beltrami -lap u + u = f on the unit sphere, exact solution "
                 "Y_4^3, rhombus-quadrilateralized 80-triangle mesh",
                 {{"geometry", "sphere"},
                  {"mesh", "icosahedron"},
                  {"mesh_refine", "1"},
                  {"element", "quad-from-rhombus"},
                  {"order", "8"},
                  {"pde", "shifted"},
                  {"shift", "1"},
                  {"exact", "Y43"}}});
    {
        Preset quad = p.back();
        quad.name = "sphere-Y43-quad";
        quad.summary += " (explicit quad alias)";
        p.push_back(quad);
    }
    p.push_back({"sphere-Y20-10",
                 "Laplace-Beltrami -lap u = f on the closed unit sphere (rank-deficient root "
                 "handled by the mean-zero solve), exact solution Y_20^10, triangles",
                 {{"geometry", "sphere"},
                  {"mesh", "icosahedron"},
                  {"mesh_refine", "2"},
                  {"element", "tri"},
                  {"order", "9"},
                  {"pde", "poisson"},
                  {"exact", "Y20-10"}}});
    p.push_back({"hemisphere-Y32",
                 "Laplace-Beltrami on the open upper hemisphere with Dirichlet data "
                 "0.25*sqrt(105/pi)*(x1^2-x2^2)*x3 on the equator, exact solution Y_3^2",
                 {{"geometry", "hemisphere"},
                  {"mesh", "hemisphere"},
                  {"mesh_refine", "1"},
                  {"element", "tri"},
                  {"order", "5"},
                  {"pde", "poisson"},
                  {"exact", "Y32"}}});

    // --- time-dependent benchmark -------------------------------------------
    p.push_back({"heat-Y10",
                 "surface diffusion u_t = lap u on the unit sphere, exact solution "
                 "Y_1^0 exp(-2t), IMEX-BDF4 with analytic history bootstrap",
                 {{"geometry", "sphere"},
                  {"mesh", "icosahedron"},
                  {"mesh_refine", "1"},
                  {"element", "tri"},
                  {"order", "10"},
                  {"kinetics", "none"},
                  {"diffusion", "1"},
                  {"exact", "heat-Y10"},
                  {"scheme_order", "4"},
                  {"bootstrap", "exact"},
                  {"dt", "1e-3"},
                  {"t_end", "1"},
                  {"snapshot_every", "0"},
                  {"law", "static"}}});

    // --- static Turing runs ---------------------------------------------------
    {
        Preset spots{"turing-spots",
                     "activator-inhibitor Turing system on the unit sphere, spot-forming "
                     "parameters, 2000 steps of dt = 0.1",
                     turing_spot_defaults()};
        spots.defaults.merge(Map{{"geometry", "sphere"},
                                 {"mesh", "icosahedron"},
                                 {"mesh_refine", "1"},
                                 {"element", "tri"},
                                 {"order", "6"},
                                 {"law", "static"}});
        p.push_back(spots);

        Preset stripes = spots;
        stripes.name = "turing-stripes";
        stripes.summary =
            "Turing system on the unit sphere, stripe-forming parameters (cubic coupling "
            "dominant), 2000 steps of dt = 0.1";
        stripes.defaults["alpha"] = "1.899";
        stripes.defaults["beta"] = "-0.95";
        stripes.defaults["gamma"] = "-1.899";
        stripes.defaults["r1"] = "1.5";
        stripes.defaults["r2"] = "0";
        p.push_back(stripes);
    }

    // --- coupled four-species runs -------------------------------------------
    for (int which = 1; which <= 3; ++which)
        for (int sign = +1; sign >= -1; sign -= 2) {
            const std::string qval = sign > 0 ? "0.55" : "-0.55";
            Preset c{"coupled-q" + std::to_string(which) + (sign > 0 ? "+0.55" : "-0.55"),
                     "coupled four-species Turing system, single " +
                         std::string(which == 1   ? "linear"
                                     : which == 2 ? "quadratic"
                                                  : "cubic") +
                         " coupling of strength " + qval,
                     turing_spot_defaults()};
            c.defaults.merge(Map{{"geometry", "sphere"},
                                 {"mesh", "icosahedron"},
                                 {"mesh_refine", "1"},
                                 {"element", "tri"},
                                 {"order", "6"},
                                 {"law", "static"},
                                 {"kinetics", "coupled"},
                                 {"alpha2", "0.398"},
                                 {"beta2", "-0.41"},
                                 {"gamma2", "-0.398"},
                                 {"delta_v2", "5e-3"},
                                 {"delta_v1_ratio", "0.122"},
                                 {"q1", "0"},
                                 {"q2", "0"},
                                 {"q3", "0"}});
            c.defaults["kinetics"] = "coupled";
            c.defaults["q" + std::to_string(which)] = qval;
            p.push_back(c);
        }

    // --- evolving-surface runs -----------------------------------------------
    {
        Preset logi{"logistic-sphere",
                    "Turing spots on a sphere growing by the logistic dilation "
                    "eta(t) = K e^(gt) / (K + e^(gt) - 1), g = 0.1, K = 1.5",
                    turing_spot_defaults()};
        logi.defaults.merge(Map{{"geometry", "sphere"},
                                {"mesh", "icosahedron"},
                                {"mesh_refine", "1"},
                                {"element", "tri"},
                                {"order", "6"},
                                {"law", "logistic"},
                                {"g_rate", "0.1"},
                                {"cap", "1.5"},
                                {"radius", "1"},
                                {"rebuild_every", "1"}});
        logi.defaults["r2"] = "0.15";
        logi.defaults["dt"] = "1e-2";
        logi.defaults["t_end"] = "50";
        logi.defaults["snapshot_every"] = "1000";
        p.push_back(logi);

        Preset contract = logi;
        contract.name = "contracting-sphere";
        contract.summary =
            "Turing spots on a linearly contracting sphere, eta(t) = 1 - 0.02 t from radius 3";
        contract.defaults["law"] = "linear";
        contract.defaults["g_rate"] = "0.02";
        contract.defaults["radius"] = "3";
        contract.defaults["dt"] = "0.1";
        contract.defaults["t_end"] = "48";
        contract.defaults["snapshot_every"] = "60";
        p.push_back(contract);

        Preset aniso = logi;
        aniso.name = "aniso-ellipsoid";
        aniso.summary =
            "Turing spots on a sphere stretched along x3 into the ellipsoid with "
            "semi-axis 1 + 0.04 t";
        aniso.defaults["law"] = "aniso";
        aniso.defaults["g_rate"] = "0.04";
        aniso.defaults["radius"] = "1";
        aniso.defaults["dt"] = "0.1";
        aniso.defaults["t_end"] = "60";
        aniso.defaults["snapshot_every"] = "100";
        p.push_back(aniso);

        Preset db = logi;
        db.name = "dumbbell";
        db.summary =
            "Turing spots on the pulsating dumbbell a(t) = 0.1 + 0.05 sin(2 pi t), "
            "b(s) = 200 s (s - 199/200), c(t) = 1 + 0.2 sin(4 pi t)";
        db.defaults["geometry"] = "dumbbell";
        db.defaults["mesh_refine"] = "2";
        db.defaults["law"] = "dumbbell";
        db.defaults.erase("g_rate");
        db.defaults.erase("cap");
        db.defaults.erase("radius");
        db.defaults["delta_u2"] = "4.5e-3";
        db.defaults["delta_u1_ratio"] = "0.5166";
        db.defaults["dt"] = "0.1";
        db.defaults["t_end"] = "60";
        db.defaults["snapshot_every"] = "200";
        p.push_back(db);

        Preset dbs = db;
        dbs.name = "dumbbell-stripes";
        dbs.summary = "stripe-forming parameters on the pulsating dumbbell";
        dbs.defaults["delta_u2"] = "5e-3";
        dbs.defaults["alpha"] = "1.899";
        dbs.defaults["beta"] = "-0.95";
        dbs.defaults["gamma"] = "-1.899";
        dbs.defaults["r1"] = "1.5";
        dbs.defaults["r2"] = "0";
        p.push_back(dbs);
    }

    // --- implicit-surface runs (user-supplied meshes) -------------------------
    {
        Preset swiss{"swiss-cheese",
                     "Turing spots on the swiss-cheese implicit surface "
                     "(x^2+y^2-4)^2 + (z^2-1)^2 + (y^2+z^2-4)^2 + (x^2-1)^2 + "
                     "(z^2+x^2-4)^2 + (y^2-1)^2 = 15; requires a user mesh (mesh=PATH)",
                     turing_spot_defaults()};
        swiss.defaults.merge(Map{{"geometry", "swiss-cheese"},
                                 {"element", "tri"},
                                 {"order", "6"},
                                 {"law", "static"}});
        p.push_back(swiss);

        Preset swiss_stripes = swiss;
        swiss_stripes.name = "swiss-cheese-stripes";
        swiss_stripes.summary =
            "stripe-forming run (r1 = 3.5, r2 = 0, T = 600) on the swiss-cheese surface; "
            "requires a user mesh (mesh=PATH)";
        swiss_stripes.defaults["r1"] = "3.5";
        swiss_stripes.defaults["r2"] = "0";
        swiss_stripes.defaults["t_end"] = "600";
        p.push_back(swiss_stripes);

        Preset torus = swiss;
        torus.name = "asym-torus";
        torus.summary =
            "Turing spots on the asymmetric torus (x^2+y^2+z^2-d^2+b^2)^2 = "
            "4(ax+c^2 d)^2 + 4 b^2 y^2 with a=2, b=1.9, d=1, c^2=a^2-b^2; requires a "
            "user mesh (mesh=PATH)";
        torus.defaults["geometry"] = "asym-torus";
        torus.defaults["order"] = "10";
        p.push_back(torus);
    }

    return p;
}

}  // namespace

const std::vector<Preset>& all_presets() {
    static const std::vector<Preset> presets = build_presets();
    return presets;
}

const Preset* find_preset(const std::string& name) {
    for (const Preset& p : all_presets())
        if (p.name == name) return &p;
    return nullptr;
}

}  // namespace surfhps
