#pragma once

#include <array>
#include <string>
#include <vector>

#include "surfhps/core.hpp"

namespace surfhps {

enum class MeshKind { Tri, Quad };

// Conforming triangle or quadrilateral surface mesh with shared-edge
// adjacency. Element vertex order defines the orientation; meshes read from
// files must be consistently oriented for closed-surface use.
struct SurfaceMesh {
  MeshKind kind = MeshKind::Tri;
  std::vector<Vec3> vertices;
  // Element connectivity; entry 3 is -1 for triangles.
  std::vector<std::array<int, 4>> elems;

  int verts_per_elem() const { return kind == MeshKind::Tri ? 3 : 4; }
  int num_elems() const { return static_cast<int>(elems.size()); }
  int num_vertices() const { return static_cast<int>(vertices.size()); }
  Vec3 elem_centroid(int e) const;
};

// Shared-edge table. Edges are keyed by their canonical (min, max) vertex
// pair; `elems` lists the 1 or 2 incident elements.
struct MeshEdge {
  int v0 = -1, v1 = -1;           // canonical order v0 < v1
  std::array<int, 2> elems{-1, -1};
  std::array<int, 2> local_edge{-1, -1};  // local edge index within each element
  int count = 0;
};

struct EdgeTable {
  std::vector<MeshEdge> edges;
  // Per element, per local edge: edge id and orientation (+1 when the
  // element's traversal runs v0 -> v1 of the canonical edge).
  std::vector<std::array<int, 4>> elem_edge_id;
  std::vector<std::array<int, 4>> elem_edge_orient;
  int num_boundary_edges = 0;

  bool closed() const { return num_boundary_edges == 0; }
};

EdgeTable build_edge_table(const SurfaceMesh& mesh);

// Element adjacency across shared edges (for partitioning).
std::vector<std::vector<int>> element_adjacency(const SurfaceMesh& mesh,
                                                const EdgeTable& edges);

// ASCII OFF I/O. Writes coordinates with 17 significant digits so that a
// round trip is bit-exact.
SurfaceMesh load_off(const std::string& path);
void save_off(const SurfaceMesh& mesh, const std::string& path);

// One-to-four midpoint refinement of a triangle mesh (new vertices are edge
// midpoints; orientation preserved). Vertex order: originals first, then one
// midpoint per edge in edge-table order.
SurfaceMesh refine_loop(const SurfaceMesh& mesh);

// Rhombus quadrilateralization: one quad per interior edge, built from the
// edge's endpoints and the centroids of the two incident triangles, ordered
// (v_a, c_j, v_b, c_i) with the diagonal pair chosen so the quad normal
// agrees with the average of the two triangle normals. Quad-mesh vertices
// are the original vertices followed by one centroid per triangle. A closed
// triangle mesh with F faces yields exactly 3F/2 quads.
SurfaceMesh rhombus_quadrilateralize(const SurfaceMesh& tri_mesh);

struct MeshQuality {
  double h_max = 0.0;        // max element diameter
  double r_min = 0.0;        // min element in-radius
  double aspect = 0.0;       // h_max / r_min
  double min_angle_deg = 0.0;
  bool needle_warning = false;  // min angle below 5 degrees
};

MeshQuality mesh_quality(const SurfaceMesh& mesh);

// Primitive closed meshes inscribed in the unit sphere.
SurfaceMesh tetrahedron_mesh();
SurfaceMesh octahedron_mesh();
SurfaceMesh icosahedron_mesh();
// Upper half of the octahedron; boundary vertices on the equator z = 0.
SurfaceMesh hemisphere_octant_mesh();

void scale_mesh(SurfaceMesh& mesh, double factor);

}  // namespace surfhps
