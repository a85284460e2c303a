#include "surfhps/local_ops.hpp"

#include <cmath>

namespace surfhps {

namespace {

// Gather a submatrix by row/column index lists.
MatX gather(const MatX& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  MatX out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) out(static_cast<int>(i), static_cast<int>(j)) = m(rows[i], cols[j]);
  return out;
}

// Binormal-derivative row for boundary node p with respect to edge `edge`.
Eigen::RowVectorXd binormal_row(const ChartedElement& chart, const ReferenceBasis& basis, int p,
                                int edge) {
  const Vec3 nb = binormal_vector(chart.dx_xi.row(p), chart.dx_eta.row(p), basis, edge);
  double alpha = 0.0, beta = 0.0;
  for (int j = 0; j < 3; ++j) {
    alpha += nb[j] * chart.xi_coef(p, j);
    beta += nb[j] * chart.xi_coef(p, 3 + j);
  }
  return alpha * basis.d_xi.row(p) + beta * basis.d_eta.row(p);
}

}  // namespace

MatX surface_gradient_component(const ChartedElement& chart, const ReferenceBasis& basis, int j) {
  require(j >= 0 && j < 3, ErrorCode::InvalidArgument, "surface gradient component out of range");
  return chart.xi_coef.col(j).asDiagonal() * basis.d_xi +
         chart.xi_coef.col(3 + j).asDiagonal() * basis.d_eta;
}

MatX collocation_matrix(const ChartedElement& chart, const ReferenceBasis& basis,
                        const PdeCoefficients& pde) {
  const int n = basis.num_nodes;
  std::array<MatX, 3> dg;
  for (int j = 0; j < 3; ++j) dg[static_cast<size_t>(j)] = surface_gradient_component(chart, basis, j);

  MatX l = MatX::Zero(n, n);
  if (pde.a) {
    // Sample the second-order coefficients at the nodes once.
    std::vector<Mat3> a_samples(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p) a_samples[static_cast<size_t>(p)] = pde.a(chart.x.row(p));
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) {
        VecX coef(n);
        bool nonzero = false;
        for (int p = 0; p < n; ++p) {
          coef[p] = a_samples[static_cast<size_t>(p)](i, j);
          nonzero = nonzero || coef[p] != 0.0;
        }
        if (!nonzero) continue;
        l.noalias() += coef.asDiagonal() * MatX(dg[static_cast<size_t>(i)] * dg[static_cast<size_t>(j)]);
      }
    }
  }
  if (pde.b) {
    for (int j = 0; j < 3; ++j) {
      VecX coef(n);
      bool nonzero = false;
      for (int p = 0; p < n; ++p) {
        coef[p] = pde.b(chart.x.row(p))[j];
        nonzero = nonzero || coef[p] != 0.0;
      }
      if (!nonzero) continue;
      l.noalias() += coef.asDiagonal() * dg[static_cast<size_t>(j)];
    }
  }
  if (pde.c) {
    for (int p = 0; p < n; ++p) l(p, p) += pde.c(chart.x.row(p));
  }
  require(l.allFinite(), ErrorCode::GeometryFailure, "collocation matrix has non-finite entries");
  return l;
}

LocalOperators assemble_local(const ChartedElement& chart, const ReferenceBasis& basis,
                              const PdeCoefficients& pde) {
  LocalOperators ops;
  ops.elem = chart.elem;
  const MatX l = collocation_matrix(chart, basis, pde);
  const auto& in = basis.interior_ids;
  const auto& bn = basis.boundary_ids;
  const int nb = static_cast<int>(bn.size());

  const MatX l_ii = gather(l, in, in);
  const MatX l_ib = gather(l, in, bn);
  ops.lu_ii.compute(l_ii);
  require(std::isfinite(ops.lu_ii.rcond()) && ops.lu_ii.rcond() > 1e-15,
          ErrorCode::SingularOperator, "element interior operator is numerically singular");
  ops.s = -ops.lu_ii.solve(l_ib);

  MatX flux(nb, basis.num_nodes);
  ops.corner_rhs_scale = VecX::Zero(nb);
  for (int r = 0; r < nb; ++r) {
    const int p = bn[static_cast<size_t>(r)];
    if (basis.is_corner_row[static_cast<size_t>(r)]) {
      const double mag = l.row(p).cwiseAbs().maxCoeff();
      require(mag > 0.0 && std::isfinite(mag), ErrorCode::SingularOperator,
              "vanishing PDE row at element corner");
      flux.row(r) = l.row(p) / mag;
      ops.corner_rhs_scale[r] = 1.0 / mag;
    } else {
      flux.row(r) = binormal_row(chart, basis, p, basis.owning_edge[static_cast<size_t>(r)]);
    }
  }
  // Split flux columns into interior/boundary parts.
  ops.flux_int.resize(nb, static_cast<int>(in.size()));
  ops.flux_bnd.resize(nb, nb);
  for (size_t j = 0; j < in.size(); ++j) ops.flux_int.col(static_cast<int>(j)) = flux.col(in[j]);
  for (size_t j = 0; j < bn.size(); ++j) ops.flux_bnd.col(static_cast<int>(j)) = flux.col(bn[j]);

  ops.dtn = ops.flux_int * ops.s + ops.flux_bnd;
  return ops;
}

VecX local_solve(const LocalOperators& ops, const ReferenceBasis& basis, const VecX& h,
                 const VecX& f) {
  const auto& in = basis.interior_ids;
  const auto& bn = basis.boundary_ids;
  require(h.size() == static_cast<int>(bn.size()) && f.size() == basis.num_nodes,
          ErrorCode::InvalidArgument, "local_solve: data size mismatch");
  VecX f_i(static_cast<int>(in.size()));
  for (size_t i = 0; i < in.size(); ++i) f_i[static_cast<int>(i)] = f[in[i]];
  const VecX u_i = ops.s * h + ops.lu_ii.solve(f_i);
  VecX u(basis.num_nodes);
  for (size_t i = 0; i < in.size(); ++i) u[in[i]] = u_i[static_cast<int>(i)];
  for (size_t i = 0; i < bn.size(); ++i) u[bn[i]] = h[static_cast<int>(i)];
  return u;
}

void particular_response(const LocalOperators& ops, const ReferenceBasis& basis, const VecX& f,
                         VecX& v_int, VecX& v_flux) {
  const auto& in = basis.interior_ids;
  const auto& bn = basis.boundary_ids;
  require(f.size() == basis.num_nodes, ErrorCode::InvalidArgument,
          "particular_response: forcing size mismatch");
  VecX f_i(static_cast<int>(in.size()));
  for (size_t i = 0; i < in.size(); ++i) f_i[static_cast<int>(i)] = f[in[i]];
  v_int = ops.lu_ii.solve(f_i);
  v_flux = ops.flux_int * v_int;
  for (size_t r = 0; r < bn.size(); ++r)
    v_flux[static_cast<int>(r)] -= ops.corner_rhs_scale[static_cast<int>(r)] * f[bn[r]];
}

MatX binormal_derivative_operator(const ChartedElement& chart, const ReferenceBasis& basis) {
  const auto& bn = basis.boundary_ids;
  MatX op(static_cast<int>(bn.size()), basis.num_nodes);
  for (size_t r = 0; r < bn.size(); ++r)
    op.row(static_cast<int>(r)) =
        binormal_row(chart, basis, bn[r], basis.owning_edge[r]);
  return op;
}

PdeCoefficients shifted_laplace_beltrami(double shift) {
  PdeCoefficients pde;
  pde.a = [](const Vec3&) { return Mat3(-Mat3::Identity()); };
  pde.b = nullptr;
  pde.c = shift == 0.0 ? std::function<double(const Vec3&)>()
                       : [shift](const Vec3&) { return shift; };
  return pde;
}

PdeCoefficients implicit_step_operator(double diffusion, double mass) {
  require(diffusion > 0.0, ErrorCode::InvalidArgument, "implicit step needs positive diffusion");
  PdeCoefficients pde;
  pde.a = [diffusion](const Vec3&) { return Mat3(-diffusion * Mat3::Identity()); };
  pde.b = nullptr;
  pde.c = [mass](const Vec3&) { return mass; };
  return pde;
}

}  // namespace surfhps
