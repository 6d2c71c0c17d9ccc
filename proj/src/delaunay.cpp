#include "volfrac/delaunay.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace volfrac {

namespace {

double orient(Vec2 a, Vec2 b, Vec2 c) {
  long double v = (long double)(b.x - a.x) * (c.y - a.y) - (long double)(b.y - a.y) * (c.x - a.x);
  return double(v);
}

// > 0 when p lies inside the circumcircle of ccw (a, b, c).
double incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 p) {
  long double ax = a.x - p.x, ay = a.y - p.y;
  long double bx = b.x - p.x, by = b.y - p.y;
  long double cx = c.x - p.x, cy = c.y - p.y;
  long double a2 = ax * ax + ay * ay;
  long double b2 = bx * bx + by * by;
  long double c2 = cx * cx + cy * cy;
  long double det = ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx);
  return double(det);
}

bool proper_cross(Vec2 a, Vec2 b, Vec2 u, Vec2 v) {
  double d1 = orient(a, b, u), d2 = orient(a, b, v);
  double d3 = orient(u, v, a), d4 = orient(u, v, b);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (uint64_t(uint32_t(a)) << 32) | uint32_t(b);
}

}  // namespace

Triangulator::Triangulator(const std::vector<Vec2>& points) : n_(int(points.size())) {
  if (n_ < 3) throw std::runtime_error("triangulation needs at least 3 points");
  all_ = points;
  double xmin = points[0].x, xmax = xmin, ymin = points[0].y, ymax = ymin;
  for (const Vec2& p : points) {
    xmin = std::min(xmin, p.x); xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y); ymax = std::max(ymax, p.y);
  }
  Vec2 c{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
  double R = 20.0 * (std::max(xmax - xmin, ymax - ymin) + 1.0);
  all_.push_back({c.x - 2.0 * R, c.y - R});
  all_.push_back({c.x + 2.0 * R, c.y - R});
  all_.push_back({c.x, c.y + 2.0 * R});
  Tri t0;
  t0.v[0] = n_; t0.v[1] = n_ + 1; t0.v[2] = n_ + 2;
  t0.adj[0] = t0.adj[1] = t0.adj[2] = -1;
  tris_.push_back(t0);
  for (int i = 0; i < n_; ++i) insert(i);
}

int Triangulator::locate(Vec2 p, int hint) const {
  int t = hint;
  if (t < 0 || t >= int(tris_.size()) || !tris_[t].alive) {
    t = -1;
    for (int i = int(tris_.size()) - 1; i >= 0; --i)
      if (tris_[i].alive) { t = i; break; }
  }
  size_t cap = 4 * tris_.size() + 64;
  for (size_t step = 0; step < cap; ++step) {
    const Tri& tr = tris_[t];
    int next = -1;
    for (int i = 0; i < 3; ++i) {
      Vec2 a = all_[tr.v[(i + 1) % 3]];
      Vec2 b = all_[tr.v[(i + 2) % 3]];
      if (orient(a, b, p) < 0.0) {
        next = tr.adj[i];
        break;
      }
    }
    if (next == -1) return t;
    t = next;
  }
  // walk cycled on a degenerate configuration; fall back to scanning
  for (int i = 0; i < int(tris_.size()); ++i) {
    const Tri& tr = tris_[i];
    if (!tr.alive) continue;
    bool in = true;
    for (int k = 0; k < 3; ++k)
      in = in && orient(all_[tr.v[(k + 1) % 3]], all_[tr.v[(k + 2) % 3]], p) >= 0.0;
    if (in) return i;
  }
  throw std::runtime_error("triangulation: point location failed");
}

void Triangulator::insert(int pi) {
  Vec2 p = all_[pi];
  int t0 = locate(p, last_);

  // grow the cavity of circumcircle-violating triangles
  std::vector<int> bad;
  std::vector<char> in_bad(tris_.size(), 0);
  std::vector<int> stack{t0};
  in_bad[t0] = 1;
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    bad.push_back(t);
    for (int i = 0; i < 3; ++i) {
      int o = tris_[t].adj[i];
      if (o < 0 || in_bad[o] || !tris_[o].alive) continue;
      const Tri& tr = tris_[o];
      if (incircle(all_[tr.v[0]], all_[tr.v[1]], all_[tr.v[2]], p) > 0.0) {
        in_bad[o] = 1;
        stack.push_back(o);
      }
    }
  }

  struct Rim {
    int a, b;      // ccw cavity boundary edge
    int outside;   // neighbor across it, -1 at the hull
  };
  std::vector<Rim> rim;
  for (int t : bad) {
    for (int i = 0; i < 3; ++i) {
      int o = tris_[t].adj[i];
      if (o >= 0 && in_bad[o]) continue;
      rim.push_back({tris_[t].v[(i + 1) % 3], tris_[t].v[(i + 2) % 3], o});
    }
    tris_[t].alive = false;
  }

  std::unordered_map<int, std::pair<int, int>> pending;  // vertex -> (tri, slot)
  for (const Rim& e : rim) {
    Tri nt;
    nt.v[0] = pi; nt.v[1] = e.a; nt.v[2] = e.b;
    nt.adj[0] = e.outside;
    nt.adj[1] = -1;  // edge (b, pi), shared with the rim triangle after e
    nt.adj[2] = -1;  // edge (pi, a), shared with the rim triangle before e
    int id = int(tris_.size());
    tris_.push_back(nt);
    if (e.outside >= 0) {
      Tri& out = tris_[e.outside];
      for (int i = 0; i < 3; ++i)
        if (out.v[(i + 1) % 3] == e.b && out.v[(i + 2) % 3] == e.a) out.adj[i] = id;
    }
    auto link = [&](int key, int slot) {
      auto it = pending.find(key);
      if (it == pending.end()) {
        pending.emplace(key, std::make_pair(id, slot));
      } else {
        tris_[id].adj[slot] = it->second.first;
        tris_[it->second.first].adj[it->second.second] = id;
        pending.erase(it);
      }
    };
    link(e.a, 2);
    link(e.b, 1);
    last_ = id;
  }
}

bool Triangulator::has_edge(int a, int b) const {
  for (const Tri& t : tris_) {
    if (!t.alive) continue;
    for (int i = 0; i < 3; ++i) {
      int u = t.v[i], v = t.v[(i + 1) % 3];
      if ((u == a && v == b) || (u == b && v == a)) return true;
    }
  }
  return false;
}

// Flip the edge opposite tris_[t].v[slot]. Returns false when the quad is not
// strictly convex.
bool Triangulator::flip(int t, int slot) {
  int o = tris_[t].adj[slot];
  if (o < 0) return false;
  int j = -1;
  for (int i = 0; i < 3; ++i)
    if (tris_[o].adj[i] == t) j = i;
  if (j < 0) return false;

  int a = tris_[t].v[slot];
  int b = tris_[t].v[(slot + 1) % 3];
  int c = tris_[t].v[(slot + 2) % 3];
  int d = tris_[o].v[j];
  if (orient(all_[a], all_[b], all_[d]) <= 0.0) return false;
  if (orient(all_[a], all_[d], all_[c]) <= 0.0) return false;

  int tCA = tris_[t].adj[(slot + 1) % 3];
  int tAB = tris_[t].adj[(slot + 2) % 3];
  int oDB = tris_[o].adj[(j + 1) % 3];
  int oCD = tris_[o].adj[(j + 2) % 3];

  tris_[t].v[0] = a; tris_[t].v[1] = b; tris_[t].v[2] = d;
  tris_[t].adj[0] = oDB; tris_[t].adj[1] = o; tris_[t].adj[2] = tAB;
  tris_[o].v[0] = a; tris_[o].v[1] = d; tris_[o].v[2] = c;
  tris_[o].adj[0] = oCD; tris_[o].adj[1] = tCA; tris_[o].adj[2] = t;

  auto repoint = [&](int nb, int from, int to) {
    if (nb < 0) return;
    for (int i = 0; i < 3; ++i)
      if (tris_[nb].adj[i] == from) tris_[nb].adj[i] = to;
  };
  repoint(oDB, o, t);
  repoint(tCA, t, o);
  return true;
}

bool Triangulator::recover_edge(int a, int b) {
  for (int iter = 0; iter < 2000; ++iter) {
    if (has_edge(a, b)) return true;
    // pick a crossing edge; prefer one incident to a triangle containing a
    int ft = -1, fslot = -1;
    for (int ti = 0; ti < int(tris_.size()) && ft < 0; ++ti) {
      const Tri& t = tris_[ti];
      if (!t.alive) continue;
      for (int i = 0; i < 3; ++i) {
        int u = t.v[(i + 1) % 3], v = t.v[(i + 2) % 3];
        if (u == a || u == b || v == a || v == b) continue;
        if (proper_cross(all_[a], all_[b], all_[u], all_[v])) {
          ft = ti;
          fslot = i;
          break;
        }
      }
    }
    if (ft < 0) return false;  // no crossing edge yet the edge is absent
    if (!flip(ft, fslot)) {
      // try the neighbor's perspective; if both fail, rotate to another
      // crossing edge on the next sweep
      int o = tris_[ft].adj[fslot];
      bool advanced = false;
      if (o >= 0) {
        for (int i = 0; i < 3 && !advanced; ++i) {
          int u = tris_[o].v[(i + 1) % 3], v = tris_[o].v[(i + 2) % 3];
          if (u == a || u == b || v == a || v == b) continue;
          if (proper_cross(all_[a], all_[b], all_[u], all_[v]) && flip(o, i)) advanced = true;
        }
      }
      if (!advanced) continue;
    }
  }
  return has_edge(a, b);
}

std::vector<std::array<int, 3>> Triangulator::triangles() const {
  std::vector<std::array<int, 3>> out;
  for (const Tri& t : tris_) {
    if (!t.alive) continue;
    if (t.v[0] >= n_ || t.v[1] >= n_ || t.v[2] >= n_) continue;
    out.push_back({t.v[0], t.v[1], t.v[2]});
  }
  return out;
}

std::vector<std::array<int, 3>> Triangulator::interior_triangles(
    const std::vector<std::pair<int, int>>& constraints) const {
  std::unordered_set<uint64_t> walls;
  walls.reserve(constraints.size() * 2);
  for (auto [a, b] : constraints) walls.insert(edge_key(a, b));

  std::vector<char> outside(tris_.size(), 0);
  std::vector<int> stack;
  for (int i = 0; i < int(tris_.size()); ++i) {
    const Tri& t = tris_[i];
    if (!t.alive) continue;
    if (t.v[0] >= n_ || t.v[1] >= n_ || t.v[2] >= n_) {
      outside[i] = 1;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    int ti = stack.back();
    stack.pop_back();
    const Tri& t = tris_[ti];
    for (int i = 0; i < 3; ++i) {
      int o = t.adj[i];
      if (o < 0 || outside[o] || !tris_[o].alive) continue;
      int u = t.v[(i + 1) % 3], v = t.v[(i + 2) % 3];
      if (u < n_ && v < n_ && walls.count(edge_key(u, v))) continue;
      outside[o] = 1;
      stack.push_back(o);
    }
  }

  std::vector<std::array<int, 3>> out;
  for (int i = 0; i < int(tris_.size()); ++i) {
    const Tri& t = tris_[i];
    if (!t.alive || outside[i]) continue;
    out.push_back({t.v[0], t.v[1], t.v[2]});
  }
  return out;
}

}  // namespace volfrac
