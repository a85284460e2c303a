#pragma once

#include <Eigen/LU>
#include <Eigen/QR>
#include <functional>
#include <vector>

#include "surfhps/chart.hpp"
#include "surfhps/core.hpp"
#include "surfhps/global_index.hpp"
#include "surfhps/local_ops.hpp"
#include "surfhps/pde.hpp"
#include "surfhps/projector.hpp"
#include "surfhps/reference_basis.hpp"
#include "surfhps/surface_mesh.hpp"

namespace surfhps {

// Merge-hierarchy shape. Balanced: connected, size-balanced splits along the
// widest centroid axis (default; log-depth). Sequential: left-deep chain that
// absorbs one element at a time in breadth-first order (linear depth; the
// solution must not depend on the choice).
enum class TreeStyle { Balanced, Sequential };

// Binary tree over mesh elements for the hierarchical merge.
struct ElementTree {
  struct Node {
    int elem = -1;  // leaf: element id
    int child[2] = {-1, -1};
  };
  std::vector<Node> nodes;  // children precede parents; root is last
  int root = -1;
};
ElementTree build_element_tree(const SurfaceMesh& mesh, const EdgeTable& edges,
                               TreeStyle style = TreeStyle::Balanced);

struct HpsOptions {
  double singular_rel_tol = 1e-8;  // ||T*1||_inf / ||T||_inf nullspace threshold
  double compat_hard = 1e-1;       // relative forcing-compatibility defect -> error
  double compat_warn = 1e-6;       // -> warning on stderr
  int flux_samples = 0;            // 0: 2n+1 samples per edge in flux_jump
  TreeStyle tree_style = TreeStyle::Balanced;
};

// Hierarchical direct solver. Construction charts the surface and numbers the
// nodes; factor() builds the elimination tree for one operator; solve() then
// applies it to any number of right-hand sides without refactoring.
class HpsSolver {
 public:
  HpsSolver(const SurfaceMesh& mesh, int order, const Projector& projector,
            HpsOptions opts = HpsOptions{});
  HpsSolver(const SurfaceMesh& mesh, int order, std::vector<ChartedElement> charts,
            HpsOptions opts = HpsOptions{});

  void factor(const PdeCoefficients& pde);

  // f: forcing at every global node. h: Dirichlet data, read at exterior
  // nodes only (may be empty for closed surfaces). Returns nodal solution.
  VecX solve(const VecX& f, const VecX& h = VecX()) const;
  VecX solve(const std::function<double(const Vec3&)>& f,
             const std::function<double(const Vec3&)>& h = nullptr) const;

  // Replace the geometry (same mesh topology/order) and drop the stale
  // factorization; used when the surface evolves.
  void update_charts(std::vector<ChartedElement> charts);

  const SurfaceMesh& mesh() const { return mesh_; }
  const EdgeTable& edges() const { return edges_; }
  const ReferenceBasis& basis() const { return basis_; }
  const std::vector<ChartedElement>& charts() const { return charts_; }
  const GlobalNodeTable& nodes() const { return table_; }
  bool closed() const { return edges_.closed(); }
  bool factored() const { return factored_; }
  // The last factorization detected the closed-surface constant nullspace and
  // switched to the augmented least-squares root solve.
  bool singular() const { return singular_; }
  int tree_depth() const;

  double integrate(const VecX& nodal) const { return table_.weight.dot(nodal); }
  double area() const { return table_.weight.sum(); }

  // Max conormal-derivative jump across interior edges, sampled between
  // collocation points (diagnostic for interface consistency).
  double flux_jump(const VecX& u) const;

 private:
  struct TreeNode {
    int elem = -1;
    int child[2] = {-1, -1};
    std::vector<int> blist;   // patch-boundary pids
    std::vector<int> bcover;  // covered incidence per blist entry
    // internal nodes only:
    std::vector<int> slist;
    Eigen::PartialPivLU<MatX> t_lu;
    Eigen::HouseholderQR<MatX> t_qr;  // augmented root solve (singular case)
    bool use_qr = false;
    MatX s_glue;                       // |s| x |b|
    MatX t_bs;                         // |b| x |s|
    std::vector<int> cmap[2];          // child blist entry -> combined [s|b] index
  };

  void init(const SurfaceMesh& mesh, int order, std::vector<ChartedElement> charts,
            HpsOptions opts);
  VecX interface_solve(const TreeNode& node, const VecX& rhs) const;
  MatX interface_solve(const TreeNode& node, const MatX& rhs) const;

  SurfaceMesh mesh_;
  EdgeTable edges_;
  ReferenceBasis basis_;
  std::vector<ChartedElement> charts_;
  GlobalNodeTable table_;
  HpsOptions opts_;

  ElementTree etree_;
  std::vector<TreeNode> tree_;  // same node order as etree_
  std::vector<LocalOperators> local_;  // per element
  bool factored_ = false;
  bool singular_ = false;
};

}  // namespace surfhps
