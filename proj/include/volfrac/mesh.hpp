#pragma once

#include <string>
#include <vector>

#include "volfrac/geometry.hpp"
#include "volfrac/scene.hpp"

namespace volfrac {

// Interface-conforming triangulation with per-triangle phase tags.
struct Mesh {
  struct Tri {
    int v[3];
    int tag;  // 1 inclusion phase, 2 background
  };

  std::vector<Vec2> nodes;
  std::vector<Tri> tris;
  std::vector<int> boundary_loop;  // ccw outer boundary node indices
  double h = 0.0;

  double tri_area(const Tri& t) const {
    return 0.5 * (nodes[t.v[1]] - nodes[t.v[0]]).cross(nodes[t.v[2]] - nodes[t.v[0]]);
  }
  double total_area() const;
  double phase_area(int tag) const;
  double min_angle_deg() const;
};

struct MeshError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MesherOptions {
  double interior_margin = 0.55;  // lattice clearance from constraints, in units of h
  double jitter = 1e-6;           // symmetry-breaking jitter, in units of h
};

Mesh triangulate(const Scene& scene, double h, const MesherOptions& opts = {});

// "MESH2D v1" text format; 17 significant digits, bit-stable round trip.
std::string export_mesh(const Mesh& m);
Mesh import_mesh(const std::string& text, bool repair_orientation = true);

// Debug dump: mesh text plus nodal field columns appended to each node line.
std::string export_fields(const Mesh& m, const std::vector<cd>& nodal);

}  // namespace volfrac
