#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "volfrac/geometry.hpp"

namespace volfrac {

// Incremental Delaunay triangulation (Bowyer-Watson) with constraint edge
// recovery by diagonal flips. Intended for well-spaced point sets; inputs are
// expected to carry a tiny symmetry-breaking jitter.
class Triangulator {
 public:
  explicit Triangulator(const std::vector<Vec2>& points);

  // Force the edge (a, b) into the triangulation. Returns false if the edge
  // could not be recovered (degenerate input).
  bool recover_edge(int a, int b);

  bool has_edge(int a, int b) const;

  // Triangles not using super-triangle vertices, ccw.
  std::vector<std::array<int, 3>> triangles() const;

  // Triangles reachable from the outside without crossing a constraint edge
  // are dropped; the rest are returned ccw. Call after recovering all
  // constraint loops.
  std::vector<std::array<int, 3>> interior_triangles(
      const std::vector<std::pair<int, int>>& constraints) const;

 private:
  struct Tri {
    int v[3];
    int adj[3];  // adj[i]: triangle opposite v[i], -1 if none
    bool alive = true;
  };

  int locate(Vec2 p, int hint) const;
  void insert(int pi);
  bool flip(int t, int slot);

  int n_ = 0;  // real point count; vertices n_..n_+2 are the super triangle
  std::vector<Vec2> all_;
  std::vector<Tri> tris_;
  int last_ = 0;
};

}  // namespace volfrac
