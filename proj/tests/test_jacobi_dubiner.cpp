#include <doctest.h>

#include <cmath>

#include "surfhps/chebyshev.hpp"
#include "surfhps/core.hpp"
#include "surfhps/dubiner.hpp"
#include "surfhps/jacobi.hpp"

using namespace surfhps;

namespace {

double binom(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r *= double(n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("jacobi: value at x = 1 and the Legendre special case") {
    for (int m : {0, 1, 2, 5, 9}) {
        CHECK(jacobi_eval(m, 0.0, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(jacobi_eval(m, 3.0, 0.0, 1.0) == doctest::Approx(binom(m + 3, m)).epsilon(1e-13));
    }
    for (double x : {-0.9, -0.2, 0.33, 0.87}) {
        CHECK(jacobi_eval(2, 0.0, 0.0, x) ==
              doctest::Approx(0.5 * (3 * x * x - 1)).epsilon(1e-14));
        CHECK(jacobi_eval(3, 0.0, 0.0, x) ==
              doctest::Approx(0.5 * (5 * x * x * x - 3 * x)).epsilon(1e-14));
    }
}

TEST_CASE("jacobi: weighted orthogonality for alpha = 1, beta = 0") {
    VecX nodes, weights;
    gauss_legendre(12, nodes, weights);
    for (int m = 0; m <= 4; ++m)
        for (int k = 0; k <= 4; ++k) {
            double dot = 0;
            for (int q = 0; q < nodes.size(); ++q)
                dot += weights[q] * (1 - nodes[q]) * jacobi_eval(m, 1.0, 0.0, nodes[q]) *
                       jacobi_eval(k, 1.0, 0.0, nodes[q]);
            if (m != k) CHECK(std::abs(dot) < 1e-13);
            else CHECK(dot > 0.1);
        }
}

TEST_CASE("jacobi: derivative identity against finite differences") {
    const double eps = 1e-6;
    for (int m : {1, 2, 4, 7})
        for (double x : {-0.71, 0.04, 0.62}) {
            const double fd =
                (jacobi_eval(m, 2.0, 1.0, x + eps) - jacobi_eval(m, 2.0, 1.0, x - eps)) / (2 * eps);
            CHECK(jacobi_deriv(m, 2.0, 1.0, x) == doctest::Approx(fd).epsilon(1e-7));
        }
}

namespace {

// Quadrature over the reference triangle by the Duffy transform
// (xi, eta) = (u*(1-v), v) with Jacobian (1-v), tensor Gauss rule.
template <class F>
double tri_quad(const F& f, int m = 24) {
    VecX nodes, weights;
    gauss_legendre(m, nodes, weights);
    double total = 0;
    for (int i = 0; i < m; ++i) {
        const double u = 0.5 * (nodes[i] + 1), wu = 0.5 * weights[i];
        for (int j = 0; j < m; ++j) {
            const double v = 0.5 * (nodes[j] + 1), wv = 0.5 * weights[j];
            total += wu * wv * (1 - v) * f(u * (1 - v), v);
        }
    }
    return total;
}

}  // namespace

TEST_CASE("dubiner: orthonormal on the reference triangle") {
    const int n = 4;
    const auto pairs = dubiner_index_pairs(n);
    REQUIRE(static_cast<int>(pairs.size()) == (n + 1) * (n + 2) / 2);
    for (size_t a = 0; a < pairs.size(); ++a)
        for (size_t b = a; b < pairs.size(); ++b) {
            const double dot = tri_quad([&](double xi, double eta) {
                return dubiner_eval(pairs[a].first, pairs[a].second, xi, eta) *
                       dubiner_eval(pairs[b].first, pairs[b].second, xi, eta);
            });
            CHECK(dot == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-11));
        }
}

TEST_CASE("dubiner: first mode is the constant sqrt(2)") {
    CHECK(dubiner_eval(0, 0, 0.2, 0.3) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(dubiner_eval(0, 0, 0.0, 0.99) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("dubiner: regular along the collapsed edge eta = 1") {
    for (int i : {0, 1, 3})
        for (int j : {0, 2}) {
            double v, dxi, deta;
            dubiner_eval_grad(i, j, 0.0, 1.0, v, dxi, deta);
            CHECK(std::isfinite(v));
            CHECK(std::isfinite(dxi));
            CHECK(std::isfinite(deta));
        }
}

TEST_CASE("dubiner: gradients match finite differences") {
    const double eps = 1e-6;
    for (int i : {0, 1, 2})
        for (int j : {0, 1, 3})
            for (auto [xi, eta] : {std::pair{0.21, 0.33}, {0.05, 0.6}, {0.48, 0.48}}) {
                double v, dxi, deta;
                dubiner_eval_grad(i, j, xi, eta, v, dxi, deta);
                CHECK(v == doctest::Approx(dubiner_eval(i, j, xi, eta)).epsilon(1e-13));
                const double fdx =
                    (dubiner_eval(i, j, xi + eps, eta) - dubiner_eval(i, j, xi - eps, eta)) /
                    (2 * eps);
                const double fde =
                    (dubiner_eval(i, j, xi, eta + eps) - dubiner_eval(i, j, xi, eta - eps)) /
                    (2 * eps);
                CHECK(dxi == doctest::Approx(fdx).epsilon(5e-6));
                CHECK(deta == doctest::Approx(fde).epsilon(5e-6));
            }
}

TEST_CASE("dubiner: vandermonde tables agree with pointwise evaluation") {
    const int n = 3;
    MatX pts(4, 2);
    pts << 0.1, 0.2, 0.0, 0.0, 0.3, 0.69, 0.5, 0.0;
    const MatX v = dubiner_vandermonde(n, pts);
    MatX vx, ve;
    dubiner_vandermonde_grad(n, pts, vx, ve);
    const auto pairs = dubiner_index_pairs(n);
    REQUIRE(v.rows() == 4);
    REQUIRE(v.cols() == static_cast<int>(pairs.size()));
    for (int p = 0; p < 4; ++p)
        for (size_t k = 0; k < pairs.size(); ++k) {
            double val, dxi, deta;
            dubiner_eval_grad(pairs[k].first, pairs[k].second, pts(p, 0), pts(p, 1), val, dxi,
                              deta);
            CHECK(v(p, static_cast<int>(k)) == doctest::Approx(val).epsilon(1e-13));
            CHECK(vx(p, static_cast<int>(k)) == doctest::Approx(dxi).epsilon(1e-12));
            CHECK(ve(p, static_cast<int>(k)) == doctest::Approx(deta).epsilon(1e-12));
        }
}
