#include <doctest.h>

#include <cmath>
#include <vector>

#include "surfhps/core.hpp"
#include "surfhps/kinetics.hpp"

using namespace surfhps;

namespace {
VecX one(double v) {
    VecX x(1);
    x[0] = v;
    return x;
}
}  // namespace

TEST_CASE("two-species reaction at hand-checked states") {
    TuringParams p;  // alpha=0.899, beta=-0.91, gamma=-0.899, r1=0.02, r2=0.2
    VecX f1(1), f2(1);

    SUBCASE("origin is an equilibrium of the kinetics") {
        turing_rhs(p, one(0.0), one(0.0), f1, f2);
        CHECK(f1[0] == 0.0);
        CHECK(f2[0] == 0.0);
    }
    SUBCASE("linear regime r1 = r2 = 0 at u = (1,1)") {
        p.r1 = 0.0;
        p.r2 = 0.0;
        turing_rhs(p, one(1.0), one(1.0), f1, f2);
        CHECK(f1[0] == doctest::Approx(1.899).epsilon(1e-14));    // alpha + 1
        CHECK(f2[0] == doctest::Approx(-1.809).epsilon(1e-14));   // beta + gamma
    }
    SUBCASE("full nonlinear terms at u = (0.7, -0.3)") {
        turing_rhs(p, one(0.7), one(-0.3), f1, f2);
        // f1 = 0.899*0.7*(1 - 0.02*0.09) + (-0.3)*(1 - 0.2*0.7)
        CHECK(f1[0] == doctest::Approx(0.37016726).epsilon(1e-12));
        // f2 = -0.91*(-0.3) + 0.899*0.02*0.7*0.09 + 0.7*(-0.899 - 0.06)
        CHECK(f2[0] == doctest::Approx(-0.39716726).epsilon(1e-12));
    }
}

TEST_CASE("reaction applies nodewise to vectors") {
    TuringParams p;
    VecX u1(3), u2(3);
    u1 << 0.0, 1.0, 0.7;
    u2 << 0.0, 1.0, -0.3;
    VecX f1, f2;
    turing_rhs(p, u1, u2, f1, f2);
    REQUIRE(f1.size() == 3);
    REQUIRE(f2.size() == 3);
    // Each node matches the scalar evaluation at that node.
    for (int i = 0; i < 3; ++i) {
        VecX g1(1), g2(1);
        turing_rhs(p, one(u1[i]), one(u2[i]), g1, g2);
        CHECK(f1[i] == g1[0]);
        CHECK(f2[i] == g2[0]);
    }
}

TEST_CASE("coupled system with zero couplings is two independent pairs") {
    CoupledParams cp;
    cp.v.alpha = 0.8;  // make the two pairs distinguishable
    cp.v.beta = -0.85;
    cp.q1 = cp.q2 = cp.q3 = 0.0;
    std::vector<VecX> s(4, VecX(2));
    s[0] << 0.3, -0.1;
    s[1] << 0.9, 0.4;
    s[2] << -0.2, 0.6;
    s[3] << 0.5, -0.7;
    std::vector<VecX> rhs;
    coupled_rhs(cp, s, rhs);
    REQUIRE(rhs.size() == 4);

    VecX f1, f2, g1, g2;
    turing_rhs(cp.u, s[0], s[1], f1, f2);
    turing_rhs(cp.v, s[2], s[3], g1, g2);
    CHECK((rhs[0] - f1).cwiseAbs().maxCoeff() == 0.0);
    CHECK((rhs[1] - f2).cwiseAbs().maxCoeff() == 0.0);
    CHECK((rhs[2] - g1).cwiseAbs().maxCoeff() == 0.0);
    CHECK((rhs[3] - g2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coupling terms enter only the driven pair, with the stated form") {
    CoupledParams cp;
    cp.q1 = 0.3;
    cp.q2 = -0.7;
    cp.q3 = 1.1;
    std::vector<VecX> s(4, VecX(1));
    const double u1 = 0.4, u2 = -0.6, v1 = 0.25, v2 = 0.8;
    s[0] << u1;
    s[1] << u2;
    s[2] << v1;
    s[3] << v2;
    std::vector<VecX> with, without;
    coupled_rhs(cp, s, with);
    CoupledParams cp0 = cp;
    cp0.q1 = cp0.q2 = cp0.q3 = 0.0;
    coupled_rhs(cp0, s, without);

    CHECK(with[0][0] == without[0][0]);  // driving pair untouched
    CHECK(with[1][0] == without[1][0]);
    const double add_v1 = cp.q1 * u1 + cp.q2 * u1 * v2 + cp.q3 * u1 * v2 * v2;
    const double sub_v2 = cp.q2 * u2 * v1 + cp.q3 * u2 * u2 * v1;
    CHECK(with[2][0] - without[2][0] == doctest::Approx(add_v1).epsilon(1e-14));
    CHECK(with[3][0] - without[3][0] == doctest::Approx(-sub_v2).epsilon(1e-14));
}

TEST_CASE("diffusion coefficient vectors follow the species order") {
    TuringParams p;
    p.delta_u1 = 0.002;
    p.delta_u2 = 0.005;
    const std::vector<double> d = turing_diffusions(p);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 0.002);
    CHECK(d[1] == 0.005);

    CoupledParams cp;
    cp.u.delta_u1 = 1.0;
    cp.u.delta_u2 = 2.0;
    cp.v.delta_u1 = 3.0;
    cp.v.delta_u2 = 4.0;
    const std::vector<double> dc = coupled_diffusions(cp);
    REQUIRE(dc.size() == 4);
    CHECK(dc[0] == 1.0);
    CHECK(dc[1] == 2.0);
    CHECK(dc[2] == 3.0);
    CHECK(dc[3] == 4.0);
}

TEST_CASE("default parameters support a Turing instability of the linearization") {
    // At the origin the Jacobian is [[alpha, 1], [gamma, beta]]; spots require a
    // stable reaction equilibrium (trace < 0, det > 0) with unequal diffusion.
    TuringParams p;
    const double tr = p.alpha + p.beta;
    const double det = p.alpha * p.beta - p.gamma;
    CHECK(tr < 0.0);
    CHECK(det > 0.0);
    CHECK(p.delta_u1 < p.delta_u2);  // activator diffuses more slowly
}
