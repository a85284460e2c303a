#pragma once

#include <functional>
#include <vector>

#include "surfhps/chart.hpp"
#include "surfhps/core.hpp"
#include "surfhps/reference_basis.hpp"
#include "surfhps/surface_mesh.hpp"

namespace surfhps {

// Global numbering of collocation nodes, derived purely from mesh
// connectivity (no coordinate matching):
//   [0, V)                          mesh vertices
//   V + e*(n-1) + s                 interior nodes of mesh edge e; slot s runs
//                                   along the canonical v_min -> v_max
//                                   direction of the edge
//   V + E*(n-1) + elem*Ni + k       element-interior nodes
// Elements incident to a shared edge address the same slots because the edge
// node placement is symmetric under reversal (slot s <-> n-2-s).
struct GlobalNodeTable {
  int num_global = 0;
  int nodes_per_elem = 0;
  std::vector<std::vector<int>> local_to_global;  // per element, node order
  MatX coords;                                    // num_global x 3
  std::vector<int> incidence;                     // elements containing each node
  std::vector<char> exterior;                     // on an open-boundary edge
  std::vector<int> exterior_pids;                 // ascending
  VecX weight;  // accumulated nodal area weights (global surface quadrature)
};

GlobalNodeTable build_global_index(const SurfaceMesh& mesh, const EdgeTable& edges,
                                   const ReferenceBasis& basis,
                                   const std::vector<ChartedElement>& charts);

// Evaluate a function at every global node.
VecX sample_global(const GlobalNodeTable& table, const std::function<double(const Vec3&)>& fn);

// Local nodal values of one element gathered from a global vector.
VecX gather_local(const GlobalNodeTable& table, int elem, const VecX& global);

// Largest disagreement between duplicated chart samples of the same global
// node (a consistency diagnostic for the charts/numbering pair).
double max_chart_mismatch(const GlobalNodeTable& table,
                          const std::vector<ChartedElement>& charts);

}  // namespace surfhps
