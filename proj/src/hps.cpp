#include "surfhps/hps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <queue>
#include <unordered_map>

#include "surfhps/chebyshev.hpp"

namespace surfhps {

namespace {

std::vector<Vec3> element_centroids(const SurfaceMesh& mesh) {
  std::vector<Vec3> c(static_cast<size_t>(mesh.num_elems()));
  for (int e = 0; e < mesh.num_elems(); ++e) c[static_cast<size_t>(e)] = mesh.elem_centroid(e);
  return c;
}

}  // namespace

ElementTree build_element_tree(const SurfaceMesh& mesh, const EdgeTable& edges, TreeStyle style) {
  const int k = mesh.num_elems();
  require(k >= 1, ErrorCode::InvalidArgument, "empty mesh");
  const auto adj = element_adjacency(mesh, edges);
  const auto cent = element_centroids(mesh);

  if (style == TreeStyle::Sequential) {
    // Left-deep chain in breadth-first order from element 0, so every merge
    // absorbs an element adjacent to the accumulated patch.
    std::vector<int> order;
    order.reserve(static_cast<size_t>(k));
    std::vector<char> seen(static_cast<size_t>(k), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      const int e = q.front();
      q.pop();
      order.push_back(e);
      for (int nb : adj[static_cast<size_t>(e)])
        if (!seen[static_cast<size_t>(nb)]) {
          seen[static_cast<size_t>(nb)] = 1;
          q.push(nb);
        }
    }
    require(static_cast<int>(order.size()) == k, ErrorCode::InvalidArgument,
            "mesh must be edge-connected");
    ElementTree tree;
    tree.nodes.reserve(static_cast<size_t>(2 * k - 1));
    ElementTree::Node first;
    first.elem = order[0];
    tree.nodes.push_back(first);
    int acc = 0;
    for (int i = 1; i < k; ++i) {
      ElementTree::Node leaf;
      leaf.elem = order[static_cast<size_t>(i)];
      tree.nodes.push_back(leaf);
      const int leaf_id = static_cast<int>(tree.nodes.size()) - 1;
      ElementTree::Node parent;
      parent.child[0] = acc;
      parent.child[1] = leaf_id;
      tree.nodes.push_back(parent);
      acc = static_cast<int>(tree.nodes.size()) - 1;
    }
    tree.root = acc;
    return tree;
  }

  // The merge hierarchy needs an edge-connected element set.
  {
    std::vector<char> seen(static_cast<size_t>(k), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 0;
    while (!q.empty()) {
      const int e = q.front();
      q.pop();
      ++reached;
      for (int nb : adj[static_cast<size_t>(e)])
        if (!seen[static_cast<size_t>(nb)]) {
          seen[static_cast<size_t>(nb)] = 1;
          q.push(nb);
        }
    }
    require(reached == k, ErrorCode::InvalidArgument, "mesh must be edge-connected");
  }

  ElementTree tree;
  tree.nodes.reserve(static_cast<size_t>(2 * k - 1));
  std::vector<char> assigned(static_cast<size_t>(k), 0);

  // Split a subset into two connected, size-balanced halves: grow one half by
  // breadth-first accretion ordered along the widest centroid axis.
  std::function<int(std::vector<int>&)> build = [&](std::vector<int>& subset) -> int {
    if (subset.size() == 1) {
      ElementTree::Node leaf;
      leaf.elem = subset[0];
      tree.nodes.push_back(leaf);
      return static_cast<int>(tree.nodes.size()) - 1;
    }
    Vec3 lo = Vec3::Constant(1e300), hi = Vec3::Constant(-1e300);
    for (int e : subset) {
      lo = lo.cwiseMin(cent[static_cast<size_t>(e)]);
      hi = hi.cwiseMax(cent[static_cast<size_t>(e)]);
    }
    int axis = 0;
    (hi - lo).maxCoeff(&axis);
    std::sort(subset.begin(), subset.end(), [&](int a, int b) {
      const double ca = cent[static_cast<size_t>(a)][axis], cb = cent[static_cast<size_t>(b)][axis];
      return ca != cb ? ca < cb : a < b;
    });

    std::vector<char> in_subset_flag;  // indexed by element id
    in_subset_flag.assign(static_cast<size_t>(k), 0);
    for (int e : subset) in_subset_flag[static_cast<size_t>(e)] = 1;
    for (int e : subset) assigned[static_cast<size_t>(e)] = 0;

    const size_t target = (subset.size() + 1) / 2;
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> frontier;
    std::vector<int> half_a;
    half_a.reserve(target);
    size_t seed = 0;
    while (half_a.size() < target) {
      if (frontier.empty()) {
        while (assigned[static_cast<size_t>(subset[seed])]) ++seed;
        frontier.emplace(cent[static_cast<size_t>(subset[seed])][axis], subset[seed]);
      }
      const int e = frontier.top().second;
      frontier.pop();
      if (assigned[static_cast<size_t>(e)]) continue;
      assigned[static_cast<size_t>(e)] = 1;
      half_a.push_back(e);
      for (int nb : adj[static_cast<size_t>(e)])
        if (in_subset_flag[static_cast<size_t>(nb)] && !assigned[static_cast<size_t>(nb)])
          frontier.emplace(cent[static_cast<size_t>(nb)][axis], nb);
    }
    std::vector<int> half_b;
    half_b.reserve(subset.size() - target);
    for (int e : subset)
      if (!assigned[static_cast<size_t>(e)]) half_b.push_back(e);

    const int c0 = build(half_a);
    const int c1 = build(half_b);
    ElementTree::Node node;
    node.child[0] = c0;
    node.child[1] = c1;
    tree.nodes.push_back(node);
    return static_cast<int>(tree.nodes.size()) - 1;
  };

  std::vector<int> all(static_cast<size_t>(k));
  for (int e = 0; e < k; ++e) all[static_cast<size_t>(e)] = e;
  tree.root = build(all);
  return tree;
}

HpsSolver::HpsSolver(const SurfaceMesh& mesh, int order, const Projector& projector,
                     HpsOptions opts) {
  require(order >= 2, ErrorCode::InvalidArgument, "solver order must be at least 2");
  const ElemKind kind = mesh.kind == MeshKind::Tri ? ElemKind::Tri : ElemKind::Quad;
  ReferenceBasis basis = build_reference_basis(kind, order);
  std::vector<ChartedElement> charts;
  charts.reserve(static_cast<size_t>(mesh.num_elems()));
  for (int e = 0; e < mesh.num_elems(); ++e)
    charts.push_back(chart_element(mesh, e, basis, projector));
  basis_ = std::move(basis);
  init(mesh, order, std::move(charts), opts);
}

HpsSolver::HpsSolver(const SurfaceMesh& mesh, int order, std::vector<ChartedElement> charts,
                     HpsOptions opts) {
  require(order >= 2, ErrorCode::InvalidArgument, "solver order must be at least 2");
  const ElemKind kind = mesh.kind == MeshKind::Tri ? ElemKind::Tri : ElemKind::Quad;
  basis_ = build_reference_basis(kind, order);
  init(mesh, order, std::move(charts), opts);
}

void HpsSolver::init(const SurfaceMesh& mesh, int order, std::vector<ChartedElement> charts,
                     HpsOptions opts) {
  (void)order;
  mesh_ = mesh;
  opts_ = opts;
  edges_ = build_edge_table(mesh_);
  charts_ = std::move(charts);
  table_ = build_global_index(mesh_, edges_, basis_, charts_);
  etree_ = build_element_tree(mesh_, edges_, opts_.tree_style);

  // Topology pass: patch boundary lists, elimination lists and child index
  // maps are PDE-independent and reused by every factorization.
  tree_.assign(etree_.nodes.size(), TreeNode{});
  for (size_t idx = 0; idx < etree_.nodes.size(); ++idx) {
    const auto& en = etree_.nodes[idx];
    TreeNode& node = tree_[idx];
    node.elem = en.elem;
    node.child[0] = en.child[0];
    node.child[1] = en.child[1];
    if (en.elem >= 0) {
      const auto& lg = table_.local_to_global[static_cast<size_t>(en.elem)];
      node.blist.reserve(basis_.boundary_ids.size());
      for (int p : basis_.boundary_ids) node.blist.push_back(lg[static_cast<size_t>(p)]);
      node.bcover.assign(node.blist.size(), 1);
      continue;
    }
    const TreeNode& a = tree_[static_cast<size_t>(en.child[0])];
    const TreeNode& b = tree_[static_cast<size_t>(en.child[1])];
    // Concatenate child boundary lists, deduplicate, accumulate coverage.
    std::unordered_map<int, int> upos;  // pid -> unique index
    std::vector<int> upids;
    std::vector<int> ucover;
    upos.reserve(a.blist.size() + b.blist.size());
    auto absorb = [&](const TreeNode& c) {
      for (size_t i = 0; i < c.blist.size(); ++i) {
        const int pid = c.blist[i];
        auto it = upos.find(pid);
        if (it == upos.end()) {
          upos.emplace(pid, static_cast<int>(upids.size()));
          upids.push_back(pid);
          ucover.push_back(c.bcover[i]);
        } else {
          ucover[static_cast<size_t>(it->second)] += c.bcover[i];
        }
      }
    };
    // Children that share no nodes are allowed: the merged operator is then
    // block-diagonal and later merges reconnect the patches. (Splitting an
    // irregular subset can strand a small island on one side.)
    absorb(a);
    absorb(b);

    // Classify: eliminate nodes whose element coverage is complete and which
    // are not pinned by exterior Dirichlet data.
    std::vector<int> combined(upids.size(), -1);
    for (size_t u = 0; u < upids.size(); ++u) {
      const int pid = upids[u];
      const bool complete = ucover[u] == table_.incidence[static_cast<size_t>(pid)];
      if (complete && !table_.exterior[static_cast<size_t>(pid)]) {
        combined[u] = static_cast<int>(node.slist.size());
        node.slist.push_back(pid);
      }
    }
    const int ns = static_cast<int>(node.slist.size());
    for (size_t u = 0; u < upids.size(); ++u) {
      if (combined[u] >= 0) continue;
      combined[u] = ns + static_cast<int>(node.blist.size());
      node.blist.push_back(upids[u]);
      node.bcover.push_back(ucover[u]);
    }
    for (int c = 0; c < 2; ++c) {
      const TreeNode& ch = tree_[static_cast<size_t>(en.child[c])];
      node.cmap[c].resize(ch.blist.size());
      for (size_t i = 0; i < ch.blist.size(); ++i)
        node.cmap[c][i] = combined[static_cast<size_t>(upos.at(ch.blist[i]))];
    }
  }

  // The root boundary must be exactly the exterior node set.
  const TreeNode& root = tree_[static_cast<size_t>(etree_.root)];
  require(root.blist.size() == table_.exterior_pids.size(), ErrorCode::InvalidArgument,
          "incomplete elimination: root boundary differs from the exterior node set");
}

void HpsSolver::update_charts(std::vector<ChartedElement> charts) {
  require(charts.size() == static_cast<size_t>(mesh_.num_elems()), ErrorCode::InvalidArgument,
          "update_charts: one chart per element required");
  charts_ = std::move(charts);
  // Weights and coordinates move with the geometry; numbering is unchanged.
  table_ = build_global_index(mesh_, edges_, basis_, charts_);
  factored_ = false;
  singular_ = false;
}

void HpsSolver::factor(const PdeCoefficients& pde) {
  local_.assign(static_cast<size_t>(mesh_.num_elems()), LocalOperators{});
  std::vector<MatX> dtns(tree_.size());
  singular_ = false;

  for (size_t idx = 0; idx < tree_.size(); ++idx) {
    TreeNode& node = tree_[idx];
    if (node.elem >= 0) {
      LocalOperators ops = assemble_local(charts_[static_cast<size_t>(node.elem)], basis_, pde);
      dtns[idx] = ops.dtn;
      local_[static_cast<size_t>(node.elem)] = std::move(ops);
      continue;
    }
    const int ns = static_cast<int>(node.slist.size());
    const int nb = static_cast<int>(node.blist.size());
    MatX tc = MatX::Zero(ns + nb, ns + nb);
    for (int c = 0; c < 2; ++c) {
      const MatX& d = dtns[static_cast<size_t>(node.child[c])];
      const auto& map = node.cmap[c];
      for (int i = 0; i < d.rows(); ++i)
        for (int j = 0; j < d.cols(); ++j) tc(map[static_cast<size_t>(i)], map[static_cast<size_t>(j)]) += d(i, j);
    }
    dtns[static_cast<size_t>(node.child[0])].resize(0, 0);
    dtns[static_cast<size_t>(node.child[1])].resize(0, 0);

    node.t_bs = tc.bottomLeftCorner(nb, ns);
    node.use_qr = false;
    if (ns > 0) {
      const MatX t = tc.topLeftCorner(ns, ns);
      const double t_norm = t.cwiseAbs().rowwise().sum().maxCoeff();
      const bool at_root = idx + 1 == tree_.size();
      if (at_root && nb == 0) {
        // Closed surface: a constant nullspace (pure second-order operator)
        // is handled by an augmented least-squares solve.
        const double defect = (t * VecX::Ones(ns)).cwiseAbs().maxCoeff();
        if (defect <= opts_.singular_rel_tol * t_norm) {
          singular_ = true;
          MatX aug(ns + 1, ns);
          aug.topRows(ns) = t;
          aug.row(ns).setConstant(t_norm / std::sqrt(static_cast<double>(ns)));
          node.t_qr.compute(aug);
          node.use_qr = true;
        }
      }
      if (!node.use_qr) {
        node.t_lu.compute(t);
        if (std::getenv("SURFHPS_DEBUG_MERGE"))
          std::fprintf(stderr, "merge idx=%zu ns=%d nb=%d rcond=%.3e tnorm=%.3e\n", idx, ns, nb,
                       node.t_lu.rcond(), t_norm);
        require(std::isfinite(node.t_lu.rcond()) && node.t_lu.rcond() > 1e-15,
                ErrorCode::SingularOperator, "singular interface operator in merge");
      }
      node.s_glue = -interface_solve(node, MatX(tc.topRightCorner(ns, nb)));
    } else {
      node.s_glue = MatX::Zero(0, nb);
    }
    dtns[idx] = tc.bottomRightCorner(nb, nb) + node.t_bs * node.s_glue;
  }
  factored_ = true;
}

VecX HpsSolver::interface_solve(const TreeNode& node, const VecX& rhs) const {
  if (!node.use_qr) return node.t_lu.solve(rhs);
  VecX aug = VecX::Zero(rhs.size() + 1);
  aug.head(rhs.size()) = rhs;
  return node.t_qr.solve(aug);
}

MatX HpsSolver::interface_solve(const TreeNode& node, const MatX& rhs) const {
  if (!node.use_qr) return node.t_lu.solve(rhs);
  MatX aug = MatX::Zero(rhs.rows() + 1, rhs.cols());
  aug.topRows(rhs.rows()) = rhs;
  return node.t_qr.solve(aug);
}

VecX HpsSolver::solve(const VecX& f, const VecX& h) const {
  require(factored_, ErrorCode::InvalidArgument, "solve called before factor");
  require(f.size() == table_.num_global, ErrorCode::InvalidArgument,
          "forcing vector size mismatch");
  VecX hfull = VecX::Zero(table_.num_global);
  if (h.size() > 0) {
    require(h.size() == table_.num_global, ErrorCode::InvalidArgument,
            "boundary data vector size mismatch");
    hfull = h;
  }
  if (singular_) {
    // Rank-deficient closed-surface operator: the forcing must be (nearly)
    // mean-free or no solution exists.
    const double defect = std::abs(table_.weight.dot(f));
    const double scale = std::max(table_.weight.sum() * f.cwiseAbs().maxCoeff(), 1e-300);
    const double rel = defect / scale;
    require(rel <= opts_.compat_hard, ErrorCode::Incompatible,
            "incompatible forcing for a closed-surface operator with constant nullspace");
    if (rel > opts_.compat_warn)
      std::fprintf(stderr,
                   "[surfhps] warning: forcing compatibility defect %.3e exceeds %.3e\n", rel,
                   opts_.compat_warn);
  }

  // Upward pass: particular responses and their interface corrections.
  std::vector<VecX> vint(tree_.size());
  std::vector<VecX> vflux(tree_.size());
  std::vector<VecX> wpart(tree_.size());
  for (size_t idx = 0; idx < tree_.size(); ++idx) {
    const TreeNode& node = tree_[idx];
    if (node.elem >= 0) {
      const VecX f_loc = gather_local(table_, node.elem, f);
      particular_response(local_[static_cast<size_t>(node.elem)], basis_, f_loc, vint[idx],
                          vflux[idx]);
      continue;
    }
    const int ns = static_cast<int>(node.slist.size());
    const int nb = static_cast<int>(node.blist.size());
    VecX r = VecX::Zero(ns + nb);
    for (int c = 0; c < 2; ++c) {
      const VecX& cv = vflux[static_cast<size_t>(node.child[c])];
      const auto& map = node.cmap[c];
      for (int i = 0; i < cv.size(); ++i) r[map[static_cast<size_t>(i)]] += cv[i];
    }
    wpart[idx] = ns > 0 ? VecX(-interface_solve(node, VecX(r.head(ns)))) : VecX();
    vflux[idx] = r.tail(nb);
    if (ns > 0) vflux[idx] += node.t_bs * wpart[idx];
    vflux[static_cast<size_t>(node.child[0])].resize(0);
    vflux[static_cast<size_t>(node.child[1])].resize(0);
  }

  // Downward pass: propagate boundary values, then local backsolves.
  VecX u = VecX::Zero(table_.num_global);
  std::function<void(int, const VecX&)> descend = [&](int idx, const VecX& bvals) {
    const TreeNode& node = tree_[static_cast<size_t>(idx)];
    if (node.elem >= 0) {
      const auto& in = basis_.interior_ids;
      const auto& bn = basis_.boundary_ids;
      const auto& lg = table_.local_to_global[static_cast<size_t>(node.elem)];
      const VecX u_i = vint[static_cast<size_t>(idx)] +
                       local_[static_cast<size_t>(node.elem)].s * bvals;
      for (size_t i = 0; i < in.size(); ++i) u[lg[static_cast<size_t>(in[i])]] = u_i[static_cast<int>(i)];
      for (size_t r = 0; r < bn.size(); ++r) u[lg[static_cast<size_t>(bn[r])]] = bvals[static_cast<int>(r)];
      return;
    }
    const int ns = static_cast<int>(node.slist.size());
    VecX combined(ns + bvals.size());
    if (ns > 0) combined.head(ns) = wpart[static_cast<size_t>(idx)] + node.s_glue * bvals;
    combined.tail(bvals.size()) = bvals;
    for (int c = 0; c < 2; ++c) {
      const auto& map = node.cmap[c];
      VecX child_vals(static_cast<int>(map.size()));
      for (size_t i = 0; i < map.size(); ++i) child_vals[static_cast<int>(i)] = combined[map[i]];
      descend(node.child[c], child_vals);
    }
  };
  const int root = etree_.root;
  const TreeNode& rnode = tree_[static_cast<size_t>(root)];
  VecX root_b(static_cast<int>(rnode.blist.size()));
  for (size_t i = 0; i < rnode.blist.size(); ++i) root_b[static_cast<int>(i)] = hfull[rnode.blist[i]];
  descend(root, root_b);

  if (singular_) {
    // Fix the mean: report the solution with area-weighted average zero,
    // matching the projected (mean-free) continuous solution.
    u.array() -= table_.weight.dot(u) / table_.weight.sum();
  }
  require(u.allFinite(), ErrorCode::Diverged, "solver produced non-finite values");
  return u;
}

VecX HpsSolver::solve(const std::function<double(const Vec3&)>& f,
                      const std::function<double(const Vec3&)>& h) const {
  require(static_cast<bool>(f), ErrorCode::InvalidArgument, "forcing callable required");
  const VecX fv = sample_global(table_, f);
  VecX hv;
  if (h) {
    hv = VecX::Zero(table_.num_global);
    for (int pid : table_.exterior_pids) hv[pid] = h(table_.coords.row(pid));
  }
  return solve(fv, hv);
}

int HpsSolver::tree_depth() const {
  std::vector<int> depth(tree_.size(), 1);
  int out = 0;
  for (size_t idx = 0; idx < tree_.size(); ++idx) {
    if (tree_[idx].elem < 0)
      depth[idx] = 1 + std::max(depth[static_cast<size_t>(tree_[idx].child[0])],
                                depth[static_cast<size_t>(tree_[idx].child[1])]);
    out = std::max(out, depth[idx]);
  }
  return out;
}

double HpsSolver::flux_jump(const VecX& u) const {
  require(u.size() == table_.num_global, ErrorCode::InvalidArgument,
          "flux_jump: solution vector size mismatch");
  const int q = opts_.flux_samples > 0 ? opts_.flux_samples : 2 * basis_.n + 1;
  VecX gl_x, gl_w;
  gauss_legendre(q, gl_x, gl_w);

  double worst = 0.0;
  for (const auto& ed : edges_.edges) {
    if (ed.count != 2) continue;
    // Jump sampled between collocation points: sum of the two outward
    // conormal derivatives at matching physical locations.
    VecX total = VecX::Zero(q);
    for (int side = 0; side < 2; ++side) {
      const int e = ed.elems[side];
      const int le = ed.local_edge[side];
      const int orient = edges_.elem_edge_orient[static_cast<size_t>(e)][static_cast<size_t>(le)];
      MatX pts(q, 2);
      for (int j = 0; j < q; ++j) {
        const double t_canon = 0.5 * (gl_x[j] + 1.0);
        const double t_side = orient > 0 ? t_canon : 1.0 - t_canon;
        pts.row(j) = basis_.edge_point(le, t_side).transpose();
      }
      const ChartSamples cs = chart_at(charts_[static_cast<size_t>(e)], basis_, pts);
      MatX dr_xi, dr_eta;
      basis_.deriv_rows(pts, dr_xi, dr_eta);
      const VecX u_loc = gather_local(table_, e, u);
      const VecX du_xi = dr_xi * u_loc;
      const VecX du_eta = dr_eta * u_loc;
      for (int j = 0; j < q; ++j) {
        const Vec3 nb = binormal_vector(cs.dx_xi.row(j), cs.dx_eta.row(j), basis_, le);
        double alpha = 0.0, beta = 0.0;
        for (int d = 0; d < 3; ++d) {
          alpha += nb[d] * cs.xi_coef(j, d);
          beta += nb[d] * cs.xi_coef(j, 3 + d);
        }
        total[j] += alpha * du_xi[j] + beta * du_eta[j];
      }
    }
    worst = std::max(worst, total.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace surfhps
