#include <doctest.h>

#include <cmath>

#include "surfhps/chart.hpp"
#include "surfhps/core.hpp"
#include "surfhps/local_ops.hpp"
#include "surfhps/pde.hpp"
#include "surfhps/projector.hpp"
#include "surfhps/reference_basis.hpp"
#include "support/test_support.hpp"

using namespace surfhps;

namespace {

// On a flat chart in the z = 0 plane the surface gradient is the planar
// gradient, so collocation rows can be checked against hand-computed
// derivatives of polynomials.
struct FlatFixture {
    SurfaceMesh mesh;
    ReferenceBasis basis;
    ChartedElement chart;
    FlatFixture(ElemKind kind, int n)
        : mesh(kind == ElemKind::Tri ? testing::single_triangle_mesh()
                                     : testing::single_quad_mesh()),
          basis(build_reference_basis(kind, n)),
          chart(chart_element(mesh, 0, basis, Projector::identity())) {}
    VecX sample(const std::function<double(double, double)>& f) const {
        VecX v(basis.num_nodes);
        for (int p = 0; p < basis.num_nodes; ++p) v[p] = f(chart.x(p, 0), chart.x(p, 1));
        return v;
    }
};

}  // namespace

TEST_CASE("collocation matrix: constant-coefficient operator on a flat element") {
    for (ElemKind kind : {ElemKind::Tri, ElemKind::Quad}) {
        const FlatFixture fx(kind, 6);
        const PdeCoefficients pde = shifted_laplace_beltrami(2.0);  // -lap + 2
        const MatX l = collocation_matrix(fx.chart, fx.basis, pde);
        // u = x^3 - x y^2: lap u = 6x - 2x = 4x; L u = -4x + 2u.
        const VecX u = fx.sample([](double x, double y) { return x * x * x - x * y * y; });
        const VecX expect =
            fx.sample([](double x, double y) { return -4 * x + 2 * (x * x * x - x * y * y); });
        CHECK((l * u - expect).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("collocation matrix: variable coefficients, first-order and mixed terms") {
    const FlatFixture fx(ElemKind::Tri, 7);
    PdeCoefficients pde;
    // a11 = 1 + x^2, a12 = x y, a22 = 2, b = (y, -x, 0), c = x + 1. The mixed
    // term enters once (upper triangle, not symmetrized).
    pde.a = [](const Vec3& p) {
        Mat3 a = Mat3::Zero();
        a(0, 0) = 1 + p[0] * p[0];
        a(0, 1) = p[0] * p[1];
        a(1, 1) = 2.0;
        return a;
    };
    pde.b = [](const Vec3& p) { return Vec3(p[1], -p[0], 0.0); };
    pde.c = [](const Vec3& p) { return p[0] + 1.0; };
    const MatX l = collocation_matrix(fx.chart, fx.basis, pde);
    // u = x^2 y + y^2: u_xx = 2y, u_xy = 2x, u_yy = 2, u_x = 2xy, u_y = x^2 + 2y.
    const VecX u = fx.sample([](double x, double y) { return x * x * y + y * y; });
    const VecX expect = fx.sample([](double x, double y) {
        const double uxx = 2 * y, uxy = 2 * x, uyy = 2.0, ux = 2 * x * y, uy = x * x + 2 * y;
        return (1 + x * x) * uxx + (x * y) * uxy + 2.0 * uyy + y * ux - x * uy +
               (x + 1) * (x * x * y + y * y);
    });
    CHECK((l * u - expect).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("local solve: polynomial manufactured solution is reproduced exactly") {
    for (ElemKind kind : {ElemKind::Tri, ElemKind::Quad}) {
        const FlatFixture fx(kind, 5);
        const PdeCoefficients pde = shifted_laplace_beltrami(1.0);
        const LocalOperators ops = assemble_local(fx.chart, fx.basis, pde);
        // u = x^2 + x y: -lap u + u = -2 + u.
        const VecX u = fx.sample([](double x, double y) { return x * x + x * y; });
        const VecX f = fx.sample([](double x, double y) { return -2.0 + x * x + x * y; });
        VecX h(static_cast<int>(fx.basis.boundary_ids.size()));
        for (size_t r = 0; r < fx.basis.boundary_ids.size(); ++r)
            h[static_cast<int>(r)] = u[fx.basis.boundary_ids[r]];
        const VecX sol = local_solve(ops, fx.basis, h, f);
        CHECK((sol - u).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("interior solve identity: L_ii u_i + L_ib u_b = f_i") {
    const FlatFixture fx(ElemKind::Tri, 6);
    const PdeCoefficients pde = shifted_laplace_beltrami(0.5);
    const LocalOperators ops = assemble_local(fx.chart, fx.basis, pde);
    const MatX l = collocation_matrix(fx.chart, fx.basis, pde);
    const VecX f = fx.sample([](double x, double y) { return std::sin(x) * std::cos(y); });
    VecX h = VecX::Zero(static_cast<int>(fx.basis.boundary_ids.size()));
    for (size_t r = 0; r < fx.basis.boundary_ids.size(); ++r)
        h[static_cast<int>(r)] = 0.3 * static_cast<double>(r % 5);
    const VecX u = local_solve(ops, fx.basis, h, f);
    const VecX residual = l * u - f;
    for (int j : fx.basis.interior_ids) CHECK(std::abs(residual[j]) < 1e-10);
}

TEST_CASE("particular response matches the zero-boundary local solve") {
    const FlatFixture fx(ElemKind::Tri, 5);
    const PdeCoefficients pde = shifted_laplace_beltrami(1.0);
    const LocalOperators ops = assemble_local(fx.chart, fx.basis, pde);
    const VecX f = fx.sample([](double x, double y) { return 1.0 + x - y * y; });
    VecX v_int, v_flux;
    particular_response(ops, fx.basis, f, v_int, v_flux);

    const VecX u =
        local_solve(ops, fx.basis, VecX::Zero(static_cast<int>(fx.basis.boundary_ids.size())), f);
    for (size_t i = 0; i < fx.basis.interior_ids.size(); ++i)
        CHECK(v_int[static_cast<int>(i)] ==
              doctest::Approx(u[fx.basis.interior_ids[i]]).epsilon(1e-12));

    // Flux identity: v_flux = flux_int * v_int - corner_scale .* f_boundary.
    VecX expect = ops.flux_int * v_int;
    for (size_t r = 0; r < fx.basis.boundary_ids.size(); ++r)
        expect[static_cast<int>(r)] -=
            ops.corner_rhs_scale[static_cast<int>(r)] * f[fx.basis.boundary_ids[r]];
    CHECK((v_flux - expect).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("flux operator: binormal rows on edges, scaled PDE rows at corners") {
    const FlatFixture fx(ElemKind::Tri, 5);
    const PdeCoefficients pde = shifted_laplace_beltrami(0.0);
    const LocalOperators ops = assemble_local(fx.chart, fx.basis, pde);
    const MatX l = collocation_matrix(fx.chart, fx.basis, pde);
    const MatX bin = binormal_derivative_operator(fx.chart, fx.basis);
    const int nb = static_cast<int>(fx.basis.boundary_ids.size());

    for (int r = 0; r < nb; ++r) {
        // Reassemble the full flux row from the stored interior/boundary split.
        VecX row = VecX::Zero(fx.basis.num_nodes);
        for (size_t c = 0; c < fx.basis.interior_ids.size(); ++c)
            row[fx.basis.interior_ids[c]] = ops.flux_int(r, static_cast<int>(c));
        for (size_t c = 0; c < fx.basis.boundary_ids.size(); ++c)
            row[fx.basis.boundary_ids[c]] = ops.flux_bnd(r, static_cast<int>(c));

        if (fx.basis.is_corner_row[static_cast<size_t>(r)]) {
            const int p = fx.basis.boundary_ids[static_cast<size_t>(r)];
            CHECK(ops.corner_rhs_scale[r] > 0.0);
            CHECK((row - ops.corner_rhs_scale[r] * l.row(p).transpose()).cwiseAbs().maxCoeff() <
                  1e-12);
            CHECK(row.cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-12));
        } else {
            CHECK(ops.corner_rhs_scale[r] == 0.0);
            CHECK((row - bin.row(r).transpose()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("dtn: boundary data to outward flux, checked on a harmonic polynomial") {
    // u = x^2 - y^2 is harmonic; with pde = -lap the interior solve of the
    // boundary trace reproduces u, so dtn * u_b equals the binormal derivative
    // of u on edge rows.
    const FlatFixture fx(ElemKind::Tri, 6);
    const PdeCoefficients pde = shifted_laplace_beltrami(0.0);
    const LocalOperators ops = assemble_local(fx.chart, fx.basis, pde);
    const VecX u = fx.sample([](double x, double y) { return x * x - y * y; });
    VecX ub(static_cast<int>(fx.basis.boundary_ids.size()));
    for (size_t r = 0; r < fx.basis.boundary_ids.size(); ++r)
        ub[static_cast<int>(r)] = u[fx.basis.boundary_ids[r]];
    const VecX flux = ops.dtn * ub;
    const MatX bin = binormal_derivative_operator(fx.chart, fx.basis);
    const VecX expect = bin * u;
    for (size_t r = 0; r < fx.basis.boundary_ids.size(); ++r)
        if (!fx.basis.is_corner_row[r])
            CHECK(flux[static_cast<int>(r)] ==
                  doctest::Approx(expect[static_cast<int>(r)]).epsilon(1e-8));
}

TEST_CASE("degenerate geometry is rejected") {
    SurfaceMesh bad;
    bad.kind = MeshKind::Tri;
    bad.vertices = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}};  // collinear
    bad.elems = {{0, 1, 2, -1}};
    const ReferenceBasis basis = build_reference_basis(ElemKind::Tri, 4);
    CHECK_THROWS_AS(
        [&] {
            const ChartedElement chart = chart_element(bad, 0, basis, Projector::identity());
            assemble_local(chart, basis, shifted_laplace_beltrami(1.0));
        }(),
        SolverError);
}
