#include <doctest.h>

#include <cmath>

#include "surfhps/chebyshev.hpp"
#include "surfhps/core.hpp"

using namespace surfhps;

TEST_CASE("lobatto points: endpoints, ordering, symmetry") {
    for (int n : {2, 5, 8, 16}) {
        const VecX x = chebyshev_lobatto(n);
        REQUIRE(x.size() == n + 1);
        CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(x[n] == doctest::Approx(-1.0).epsilon(1e-15));
        for (int k = 0; k + 1 <= n; ++k) CHECK(x[k] > x[k + 1]);
        for (int k = 0; k <= n; ++k) CHECK(x[k] + x[n - k] == doctest::Approx(0.0).epsilon(1e-15));
    }
}

TEST_CASE("differentiation matrix is exact for polynomials through degree n") {
    for (int n : {3, 6, 11}) {
        const VecX x = chebyshev_lobatto(n);
        const MatX d = chebyshev_diff_matrix(n);
        for (int deg = 0; deg <= n; ++deg) {
            VecX p(n + 1), dp(n + 1);
            for (int k = 0; k <= n; ++k) {
                p[k] = std::pow(x[k], deg);
                dp[k] = deg == 0 ? 0.0 : deg * std::pow(x[k], deg - 1);
            }
            CHECK((d * p - dp).cwiseAbs().maxCoeff() < 1e-11);
        }
    }
}

TEST_CASE("differentiation matrix rows annihilate constants") {
    const MatX d = chebyshev_diff_matrix(9);
    CHECK((d * VecX::Ones(10)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("clenshaw-curtis weights integrate polynomials through degree n") {
    for (int n : {4, 7, 12}) {
        const VecX x = chebyshev_lobatto(n);
        const VecX w = clenshaw_curtis_weights(n);
        CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-14));
        for (int deg = 0; deg <= n; ++deg) {
            double quad = 0;
            for (int k = 0; k <= n; ++k) quad += w[k] * std::pow(x[k], deg);
            const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
            CHECK(quad == doctest::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("barycentric evaluation reproduces the interpolant") {
    const int n = 8;
    const VecX x = chebyshev_lobatto(n);
    const VecX bw = barycentric_weights(x);
    const MatX d = chebyshev_diff_matrix(n);
    VecX p(n + 1);
    for (int k = 0; k <= n; ++k) p[k] = 1.0 + x[k] - 3.0 * std::pow(x[k], 5);

    SUBCASE("at a node: cardinal row") {
        const VecX row = barycentric_eval_row(x, bw, x[3]);
        CHECK(row.dot(p) == doctest::Approx(p[3]).epsilon(1e-14));
    }
    SUBCASE("off node: matches the polynomial") {
        for (double t : {-0.7313, 0.0, 0.412, 0.9999}) {
            const VecX row = barycentric_eval_row(x, bw, t);
            CHECK(row.sum() == doctest::Approx(1.0).epsilon(1e-13));  // partition of unity
            CHECK(row.dot(p) == doctest::Approx(1.0 + t - 3.0 * std::pow(t, 5)).epsilon(1e-12));
        }
    }
    SUBCASE("derivative row: matches the polynomial derivative on and off nodes") {
        for (double t : {-0.7313, 0.412, 1.0, x[2]}) {
            const VecX row = barycentric_deriv_row(x, bw, d, t);
            CHECK(row.dot(p) == doctest::Approx(1.0 - 15.0 * std::pow(t, 4)).epsilon(1e-10));
        }
    }
}

TEST_CASE("gauss-legendre: exact through degree 2m-1") {
    VecX nodes, weights;
    gauss_legendre(5, nodes, weights);
    REQUIRE(nodes.size() == 5);
    CHECK(weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    for (int k = 0; k + 1 < 5; ++k) CHECK(nodes[k] < nodes[k + 1]);
    for (int deg = 0; deg <= 9; ++deg) {
        double quad = 0;
        for (int k = 0; k < 5; ++k) quad += weights[k] * std::pow(nodes[k], deg);
        const double exact = deg % 2 == 1 ? 0.0 : 2.0 / (deg + 1);
        CHECK(quad == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("grid bundle is self-consistent") {
    const Grid1D g = make_grid_1d(6);
    CHECK(g.n == 6);
    CHECK((g.points - chebyshev_lobatto(6)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((g.diff - chebyshev_diff_matrix(6)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((g.weights - clenshaw_curtis_weights(6)).cwiseAbs().maxCoeff() == 0.0);
}
