#include "surfhps/global_index.hpp"

#include <algorithm>

namespace surfhps {

GlobalNodeTable build_global_index(const SurfaceMesh& mesh, const EdgeTable& edges,
                                   const ReferenceBasis& basis,
                                   const std::vector<ChartedElement>& charts) {
  require(charts.size() == static_cast<size_t>(mesh.num_elems()), ErrorCode::InvalidArgument,
          "build_global_index: one chart per element required");
  const int n = basis.n;
  const int v = mesh.num_vertices();
  const int ne = static_cast<int>(edges.edges.size());
  const int ni = static_cast<int>(basis.interior_ids.size());
  const int per_edge = n - 1;

  GlobalNodeTable t;
  t.nodes_per_elem = basis.num_nodes;
  t.num_global = v + ne * per_edge + mesh.num_elems() * ni;
  t.local_to_global.assign(static_cast<size_t>(mesh.num_elems()),
                           std::vector<int>(static_cast<size_t>(basis.num_nodes), -1));
  const int edge_base = v;
  const int int_base = v + ne * per_edge;

  for (int e = 0; e < mesh.num_elems(); ++e) {
    auto& lg = t.local_to_global[static_cast<size_t>(e)];
    const auto& conn = mesh.elems[static_cast<size_t>(e)];
    const int nc = basis.num_corners;
    for (int c = 0; c < nc; ++c) lg[static_cast<size_t>(basis.corner_ids[static_cast<size_t>(c)])] = conn[c];
    for (int le = 0; le < nc; ++le) {
      const int ed = edges.elem_edge_id[static_cast<size_t>(e)][static_cast<size_t>(le)];
      const int orient = edges.elem_edge_orient[static_cast<size_t>(e)][static_cast<size_t>(le)];
      const auto& nodes = basis.edge_interior[static_cast<size_t>(le)];
      for (int k = 0; k < per_edge; ++k) {
        const int slot = orient > 0 ? k : per_edge - 1 - k;
        lg[static_cast<size_t>(nodes[static_cast<size_t>(k)])] = edge_base + ed * per_edge + slot;
      }
    }
    for (int k = 0; k < ni; ++k)
      lg[static_cast<size_t>(basis.interior_ids[static_cast<size_t>(k)])] = int_base + e * ni + k;
  }

  // Incidence, exterior flags, coordinates, accumulated weights.
  t.incidence.assign(static_cast<size_t>(t.num_global), 0);
  t.exterior.assign(static_cast<size_t>(t.num_global), 0);
  t.coords = MatX::Zero(t.num_global, 3);
  t.weight = VecX::Zero(t.num_global);
  std::vector<char> seen(static_cast<size_t>(t.num_global), 0);
  for (int e = 0; e < mesh.num_elems(); ++e) {
    const auto& lg = t.local_to_global[static_cast<size_t>(e)];
    const auto& chart = charts[static_cast<size_t>(e)];
    for (int p = 0; p < basis.num_nodes; ++p) {
      const int pid = lg[static_cast<size_t>(p)];
      t.incidence[static_cast<size_t>(pid)] += 1;
      t.weight[pid] += chart.w_area[p];
      if (!seen[static_cast<size_t>(pid)]) {
        seen[static_cast<size_t>(pid)] = 1;
        t.coords.row(pid) = chart.x.row(p);
      }
    }
  }
  for (int id = 0; id < ne; ++id) {
    const auto& ed = edges.edges[static_cast<size_t>(id)];
    if (ed.count != 1) continue;
    t.exterior[static_cast<size_t>(ed.v0)] = 1;
    t.exterior[static_cast<size_t>(ed.v1)] = 1;
    for (int s = 0; s < per_edge; ++s) t.exterior[static_cast<size_t>(edge_base + id * per_edge + s)] = 1;
  }
  for (int p = 0; p < t.num_global; ++p)
    if (t.exterior[static_cast<size_t>(p)]) t.exterior_pids.push_back(p);
  return t;
}

VecX sample_global(const GlobalNodeTable& table, const std::function<double(const Vec3&)>& fn) {
  VecX out(table.num_global);
  for (int p = 0; p < table.num_global; ++p) out[p] = fn(table.coords.row(p));
  return out;
}

VecX gather_local(const GlobalNodeTable& table, int elem, const VecX& global) {
  require(global.size() == table.num_global, ErrorCode::InvalidArgument,
          "gather_local: global vector size mismatch");
  const auto& lg = table.local_to_global[static_cast<size_t>(elem)];
  VecX out(static_cast<int>(lg.size()));
  for (size_t p = 0; p < lg.size(); ++p) out[static_cast<int>(p)] = global[lg[p]];
  return out;
}

double max_chart_mismatch(const GlobalNodeTable& table,
                          const std::vector<ChartedElement>& charts) {
  double worst = 0.0;
  for (size_t e = 0; e < charts.size(); ++e) {
    const auto& lg = table.local_to_global[e];
    for (size_t p = 0; p < lg.size(); ++p) {
      const double d = (charts[e].x.row(static_cast<int>(p)) - table.coords.row(lg[p])).norm();
      worst = std::max(worst, d);
    }
  }
  return worst;
}

}  // namespace surfhps
