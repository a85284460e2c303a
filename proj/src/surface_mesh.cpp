#include "surfhps/surface_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace surfhps {

Vec3 SurfaceMesh::elem_centroid(int e) const {
  Vec3 c = Vec3::Zero();
  const int k = verts_per_elem();
  for (int i = 0; i < k; ++i) c += vertices[elems[e][i]];
  return c / k;
}

EdgeTable build_edge_table(const SurfaceMesh& mesh) {
  EdgeTable table;
  const int k = mesh.verts_per_elem();
  table.elem_edge_id.assign(mesh.num_elems(), {-1, -1, -1, -1});
  table.elem_edge_orient.assign(mesh.num_elems(), {0, 0, 0, 0});
  std::map<std::pair<int, int>, int> lookup;
  for (int e = 0; e < mesh.num_elems(); ++e) {
    for (int le = 0; le < k; ++le) {
      const int a = mesh.elems[e][le];
      const int b = mesh.elems[e][(le + 1) % k];
      require(a != b, ErrorCode::MeshFormat, "degenerate element edge");
      const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      auto it = lookup.find(key);
      int id;
      if (it == lookup.end()) {
        id = static_cast<int>(table.edges.size());
        lookup.emplace(key, id);
        MeshEdge edge;
        edge.v0 = key.first;
        edge.v1 = key.second;
        table.edges.push_back(edge);
      } else {
        id = it->second;
      }
      MeshEdge& edge = table.edges[id];
      require(edge.count < 2, ErrorCode::MeshFormat,
              "non-manifold mesh: edge shared by more than two elements");
      edge.elems[edge.count] = e;
      edge.local_edge[edge.count] = le;
      edge.count += 1;
      table.elem_edge_id[e][le] = id;
      table.elem_edge_orient[e][le] = (a == key.first) ? +1 : -1;
    }
  }
  for (const auto& edge : table.edges)
    if (edge.count == 1) table.num_boundary_edges += 1;
  return table;
}

std::vector<std::vector<int>> element_adjacency(const SurfaceMesh& mesh,
                                                const EdgeTable& edges) {
  std::vector<std::vector<int>> adj(mesh.num_elems());
  for (const auto& edge : edges.edges) {
    if (edge.count == 2) {
      adj[edge.elems[0]].push_back(edge.elems[1]);
      adj[edge.elems[1]].push_back(edge.elems[0]);
    }
  }
  return adj;
}

SurfaceMesh load_off(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::Io, "load_off: cannot open " + path);
  std::string token;
  // Skip comments and blank lines; expect the OFF magic first.
  auto next_token = [&](std::string& tok) -> bool {
    while (in >> tok) {
      if (!tok.empty() && tok[0] == '#') {
        std::string rest;
        std::getline(in, rest);
        continue;
      }
      return true;
    }
    return false;
  };
  require(next_token(token) && token == "OFF", ErrorCode::MeshFormat,
          "load_off: missing OFF header in " + path);
  long nv = 0, nf = 0, ne = 0;
  require(static_cast<bool>(in >> nv >> nf >> ne), ErrorCode::MeshFormat,
          "load_off: malformed count line");
  require(nv > 0 && nf > 0, ErrorCode::MeshFormat, "load_off: empty mesh");
  SurfaceMesh mesh;
  mesh.vertices.resize(nv);
  for (long v = 0; v < nv; ++v) {
    double x, y, z;
    require(static_cast<bool>(in >> x >> y >> z), ErrorCode::MeshFormat,
            "load_off: truncated vertex list");
    mesh.vertices[v] = Vec3(x, y, z);
  }
  int arity = 0;
  for (long f = 0; f < nf; ++f) {
    int cnt = 0;
    require(static_cast<bool>(in >> cnt), ErrorCode::MeshFormat, "load_off: truncated face list");
    require(cnt == 3 || cnt == 4, ErrorCode::MeshFormat,
            "load_off: only triangle/quad faces are supported");
    if (arity == 0) arity = cnt;
    require(cnt == arity, ErrorCode::MeshFormat, "load_off: mixed face arity is not supported");
    std::array<int, 4> elem{-1, -1, -1, -1};
    for (int i = 0; i < cnt; ++i) {
      require(static_cast<bool>(in >> elem[i]), ErrorCode::MeshFormat,
              "load_off: truncated face record");
      require(elem[i] >= 0 && elem[i] < nv, ErrorCode::MeshFormat,
              "load_off: vertex index out of range");
    }
    mesh.elems.push_back(elem);
  }
  mesh.kind = (arity == 3) ? MeshKind::Tri : MeshKind::Quad;
  build_edge_table(mesh);  // validates conformity
  return mesh;
}

void save_off(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::Io, "save_off: cannot open " + path);
  out << "OFF\n" << mesh.num_vertices() << " " << mesh.num_elems() << " 0\n";
  char buf[96];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", v[0], v[1], v[2]);
    out << buf;
  }
  const int k = mesh.verts_per_elem();
  for (const auto& e : mesh.elems) {
    out << k;
    for (int i = 0; i < k; ++i) out << " " << e[i];
    out << "\n";
  }
  require(out.good(), ErrorCode::Io, "save_off: write failed for " + path);
}

SurfaceMesh refine_loop(const SurfaceMesh& mesh) {
  require(mesh.kind == MeshKind::Tri, ErrorCode::InvalidArgument,
          "refine_loop: triangle meshes only");
  const EdgeTable table = build_edge_table(mesh);
  SurfaceMesh out;
  out.kind = MeshKind::Tri;
  out.vertices = mesh.vertices;
  const int base = mesh.num_vertices();
  for (const auto& edge : table.edges)
    out.vertices.push_back(0.5 * (mesh.vertices[edge.v0] + mesh.vertices[edge.v1]));
  for (int e = 0; e < mesh.num_elems(); ++e) {
    const int v0 = mesh.elems[e][0], v1 = mesh.elems[e][1], v2 = mesh.elems[e][2];
    const int m01 = base + table.elem_edge_id[e][0];
    const int m12 = base + table.elem_edge_id[e][1];
    const int m20 = base + table.elem_edge_id[e][2];
    out.elems.push_back({v0, m01, m20, -1});
    out.elems.push_back({v1, m12, m01, -1});
    out.elems.push_back({v2, m20, m12, -1});
    out.elems.push_back({m01, m12, m20, -1});
  }
  return out;
}

namespace {

Vec3 tri_normal(const SurfaceMesh& mesh, int e) {
  const Vec3& a = mesh.vertices[mesh.elems[e][0]];
  const Vec3& b = mesh.vertices[mesh.elems[e][1]];
  const Vec3& c = mesh.vertices[mesh.elems[e][2]];
  return (b - a).cross(c - a);
}

}  // namespace

SurfaceMesh rhombus_quadrilateralize(const SurfaceMesh& tri_mesh) {
  require(tri_mesh.kind == MeshKind::Tri, ErrorCode::InvalidArgument,
          "rhombus_quadrilateralize: triangle meshes only");
  const EdgeTable table = build_edge_table(tri_mesh);
  SurfaceMesh quads;
  quads.kind = MeshKind::Quad;
  quads.vertices = tri_mesh.vertices;
  const int base = tri_mesh.num_vertices();
  for (int e = 0; e < tri_mesh.num_elems(); ++e)
    quads.vertices.push_back(tri_mesh.elem_centroid(e));
  for (const auto& edge : table.edges) {
    if (edge.count != 2) continue;  // boundary edges produce no quad
    const int ti = edge.elems[0], tj = edge.elems[1];
    const int ci = base + ti, cj = base + tj;
    std::array<int, 4> quad{edge.v0, cj, edge.v1, ci};
    // Orient so the quad normal matches the mean of the two triangle normals.
    const Vec3 n_avg = tri_normal(tri_mesh, ti) + tri_normal(tri_mesh, tj);
    const Vec3 d1 = quads.vertices[quad[2]] - quads.vertices[quad[0]];
    const Vec3 d2 = quads.vertices[quad[3]] - quads.vertices[quad[1]];
    if (d1.cross(d2).dot(n_avg) < 0.0) std::swap(quad[1], quad[3]);
    quads.elems.push_back(quad);
  }
  return quads;
}

namespace {

double tri_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

void elem_quality(const SurfaceMesh& mesh, int e, double& diam, double& inradius,
                  double& min_angle) {
  const int k = mesh.verts_per_elem();
  diam = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      diam = std::max(diam,
                      (mesh.vertices[mesh.elems[e][i]] - mesh.vertices[mesh.elems[e][j]]).norm());
  min_angle = 180.0;
  for (int i = 0; i < k; ++i) {
    const Vec3& p = mesh.vertices[mesh.elems[e][i]];
    const Vec3 u = mesh.vertices[mesh.elems[e][(i + 1) % k]] - p;
    const Vec3 v = mesh.vertices[mesh.elems[e][(i + k - 1) % k]] - p;
    const double c = u.dot(v) / (u.norm() * v.norm());
    min_angle = std::min(min_angle, std::acos(std::clamp(c, -1.0, 1.0)) * 180.0 / M_PI);
  }
  if (k == 3) {
    const Vec3& a = mesh.vertices[mesh.elems[e][0]];
    const Vec3& b = mesh.vertices[mesh.elems[e][1]];
    const Vec3& c = mesh.vertices[mesh.elems[e][2]];
    const double s = 0.5 * ((b - a).norm() + (c - b).norm() + (a - c).norm());
    inradius = tri_area(a, b, c) / s;
  } else {
    // Quad in-radius proxy: split along a diagonal, take the smaller triangle
    // in-radius; adequate for quality reporting.
    const Vec3& a = mesh.vertices[mesh.elems[e][0]];
    const Vec3& b = mesh.vertices[mesh.elems[e][1]];
    const Vec3& c = mesh.vertices[mesh.elems[e][2]];
    const Vec3& d = mesh.vertices[mesh.elems[e][3]];
    auto inr = [](const Vec3& p, const Vec3& q, const Vec3& r) {
      const double s = 0.5 * ((q - p).norm() + (r - q).norm() + (p - r).norm());
      return tri_area(p, q, r) / s;
    };
    inradius = std::min({inr(a, b, c), inr(a, c, d), inr(a, b, d), inr(b, c, d)});
  }
  require(tri_area(mesh.vertices[mesh.elems[e][0]], mesh.vertices[mesh.elems[e][1]],
                   mesh.vertices[mesh.elems[e][2]]) > 0.0,
          ErrorCode::MeshFormat, "mesh_quality: degenerate element");
}

}  // namespace

MeshQuality mesh_quality(const SurfaceMesh& mesh) {
  MeshQuality q;
  q.r_min = std::numeric_limits<double>::max();
  q.min_angle_deg = 180.0;
  for (int e = 0; e < mesh.num_elems(); ++e) {
    double diam, inradius, min_angle;
    elem_quality(mesh, e, diam, inradius, min_angle);
    q.h_max = std::max(q.h_max, diam);
    q.r_min = std::min(q.r_min, inradius);
    q.min_angle_deg = std::min(q.min_angle_deg, min_angle);
  }
  q.aspect = q.h_max / q.r_min;
  q.needle_warning = q.min_angle_deg < 5.0;
  return q;
}

SurfaceMesh tetrahedron_mesh() {
  SurfaceMesh m;
  m.kind = MeshKind::Tri;
  const double s = 1.0 / std::sqrt(3.0);
  m.vertices = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
  m.elems = {{0, 1, 2, -1}, {0, 3, 1, -1}, {0, 2, 3, -1}, {1, 3, 2, -1}};
  return m;
}

SurfaceMesh octahedron_mesh() {
  SurfaceMesh m;
  m.kind = MeshKind::Tri;
  m.vertices = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  m.elems = {{0, 2, 4, -1}, {2, 1, 4, -1}, {1, 3, 4, -1}, {3, 0, 4, -1},
             {2, 0, 5, -1}, {1, 2, 5, -1}, {3, 1, 5, -1}, {0, 3, 5, -1}};
  return m;
}

SurfaceMesh hemisphere_octant_mesh() {
  SurfaceMesh m;
  m.kind = MeshKind::Tri;
  m.vertices = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}};
  m.elems = {{0, 2, 4, -1}, {2, 1, 4, -1}, {1, 3, 4, -1}, {3, 0, 4, -1}};
  return m;
}

SurfaceMesh icosahedron_mesh() {
  SurfaceMesh m;
  m.kind = MeshKind::Tri;
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const double s = 1.0 / std::sqrt(1.0 + phi * phi);
  const double a = s, b = phi * s;
  m.vertices = {{-a, b, 0}, {a, b, 0},   {-a, -b, 0}, {a, -b, 0}, {0, -a, b},  {0, a, b},
                {0, -a, -b}, {0, a, -b}, {b, 0, -a},  {b, 0, a},  {-b, 0, -a}, {-b, 0, a}};
  const int f[20][3] = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                        {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                        {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                        {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (const auto& t : f) m.elems.push_back({t[0], t[1], t[2], -1});
  return m;
}

void scale_mesh(SurfaceMesh& mesh, double factor) {
  for (auto& v : mesh.vertices) v *= factor;
}

}  // namespace surfhps
