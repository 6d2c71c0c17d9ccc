#include "volfrac/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "volfrac/delaunay.hpp"

namespace volfrac {

double Mesh::total_area() const {
  double s = 0.0;
  for (const Tri& t : tris) s += tri_area(t);
  return s;
}

double Mesh::phase_area(int tag) const {
  double s = 0.0;
  for (const Tri& t : tris)
    if (t.tag == tag) s += tri_area(t);
  return s;
}

double Mesh::min_angle_deg() const {
  double worst = 180.0;
  for (const Tri& t : tris) {
    Vec2 p[3] = {nodes[t.v[0]], nodes[t.v[1]], nodes[t.v[2]]};
    for (int i = 0; i < 3; ++i) {
      Vec2 e1 = (p[(i + 1) % 3] - p[i]).normalized();
      Vec2 e2 = (p[(i + 2) % 3] - p[i]).normalized();
      worst = std::min(worst, std::acos(std::clamp(e1.dot(e2), -1.0, 1.0)) * 180.0 / kPi);
    }
  }
  return worst;
}

namespace {

int loop_samples(double perimeter, double h) {
  return std::max(8, int(std::ceil(perimeter / h)));
}

std::vector<Vec2> circle_loop(Vec2 c, double r, double h) {
  int n = loop_samples(2.0 * kPi * r, h);
  std::vector<Vec2> out(n);
  for (int i = 0; i < n; ++i) {
    double om = 2.0 * kPi * i / n;
    out[i] = {c.x + r * std::cos(om), c.y + r * std::sin(om)};
  }
  return out;
}

std::vector<Vec2> ellipse_loop(const EllipseShape& e, double h) {
  double per = kPi * (3.0 * (e.a + e.b) - std::sqrt((3.0 * e.a + e.b) * (e.a + 3.0 * e.b)));
  int n = loop_samples(per, h);
  std::vector<Vec2> out(n);
  double ca = std::cos(e.angle), sa = std::sin(e.angle);
  for (int i = 0; i < n; ++i) {
    double t = 2.0 * kPi * i / n;
    double u = e.a * std::cos(t), v = e.b * std::sin(t);
    out[i] = {e.center.x + ca * u - sa * v, e.center.y + sa * u + ca * v};
  }
  return out;
}

std::vector<Vec2> polygon_loop(const std::vector<Vec2>& poly, double h) {
  std::vector<Vec2> out;
  for (size_t i = 0; i < poly.size(); ++i) {
    Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
    int n = std::max(1, int(std::ceil((b - a).norm() / h)));
    for (int k = 0; k < n; ++k) out.push_back(a + (b - a) * (double(k) / n));
  }
  return out;
}

std::vector<Vec2> polar_loop(const PolarCurve& c, double h) {
  double per = 0.0;
  const int probe = 4096;
  Vec2 prev{c.radius(0.0), 0.0};
  for (int i = 1; i <= probe; ++i) {
    double om = 2.0 * kPi * i / probe;
    Vec2 p{c.radius(om) * std::cos(om), c.radius(om) * std::sin(om)};
    per += (p - prev).norm();
    prev = p;
  }
  int n = loop_samples(per, h);
  std::vector<Vec2> out(n);
  for (int i = 0; i < n; ++i) {
    double om = 2.0 * kPi * i / n;
    out[i] = {c.radius(om) * std::cos(om), c.radius(om) * std::sin(om)};
  }
  return out;
}

// Crescent boundary: the arc of the outer disk outside the inner disk joined
// with the arc of the inner disk inside the outer one, ccw.
std::vector<Vec2> crescent_loop(const Crescent& cr, double h) {
  Vec2 co = cr.outer.center, ci = cr.inner.center;
  double ro = cr.outer.radius, ri = cr.inner.radius;
  double d = (ci - co).norm();
  if (d >= ro + ri || d <= std::abs(ro - ri))
    throw MeshError("crescent disks must properly intersect");
  double alpha = std::acos(std::clamp((d * d + ro * ro - ri * ri) / (2.0 * d * ro), -1.0, 1.0));
  double beta = std::acos(std::clamp((d * d + ri * ri - ro * ro) / (2.0 * d * ri), -1.0, 1.0));
  double base_o = std::atan2(ci.y - co.y, ci.x - co.x);
  double base_i = std::atan2(co.y - ci.y, co.x - ci.x);

  // Both circle intersection points are dropped, replacing the sharp crescent
  // tips by one-step chords; keeps triangle angles away from the tip angle.
  std::vector<Vec2> out;
  int n1 = std::max(6, int(std::ceil(2.0 * (kPi - alpha) * ro / h)));
  // outer arc from base+alpha to base+2pi-alpha (ccw, outside the inner disk)
  for (int i = 1; i < n1; ++i) {
    double t = base_o + alpha + (2.0 * (kPi - alpha)) * i / n1;
    out.push_back({co.x + ro * std::cos(t), co.y + ro * std::sin(t)});
  }
  size_t outer_count = out.size();
  int n2 = std::max(6, int(std::ceil(2.0 * beta * ri / h)));
  // inner arc back through the lens, traversed so the crescent stays on the left
  for (int i = 1; i < n2; ++i) {
    double t = base_i - beta + 2.0 * beta * i / n2;
    out.push_back({ci.x + ri * std::cos(t), ci.y + ri * std::sin(t)});
  }
  std::reverse(out.begin() + outer_count, out.end());
  if (shoelace_area(out) < 0.0) std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Vec2>> interface_loops(const Shape& s, double h) {
  if (auto* d = std::get_if<Disk>(&s)) return {circle_loop(d->center, d->radius, h)};
  if (auto* e = std::get_if<EllipseShape>(&s)) return {ellipse_loop(*e, h)};
  if (auto* p = std::get_if<PolygonShape>(&s)) return {polygon_loop(p->points, h)};
  if (auto* c = std::get_if<Crescent>(&s)) return {crescent_loop(*c, h)};
  auto& a = std::get<AnnulusPhase1>(s);
  return {circle_loop({0, 0}, a.r1, h), circle_loop({0, 0}, a.r2, h)};
}

std::vector<Vec2> outer_loop(const OuterBoundary& o, double h) {
  if (auto* d = std::get_if<Disk>(&o)) return circle_loop(d->center, d->radius, h);
  if (auto* e = std::get_if<EllipseShape>(&o)) return ellipse_loop(*e, h);
  if (auto* p = std::get_if<PolygonShape>(&o)) return polygon_loop(p->points, h);
  return polar_loop(std::get<PolarCurve>(o), h);
}

double point_segment_dist2(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 ab = b - a;
  double t = std::clamp((p - a).dot(ab) / std::max(ab.norm2(), 1e-300), 0.0, 1.0);
  Vec2 q = a + ab * t;
  return (p - q).norm2();
}

// Uniform bin index over the plane at pitch `cell`.
int64_t cell_key(int ix, int iy) { return (int64_t(ix) << 32) ^ (iy & 0xffffffffLL); }

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Mesh triangulate(const Scene& scene, double h, const MesherOptions& opts) {
  if (!(h > 0.0)) throw MeshError("mesh size must be positive");

  std::vector<std::vector<Vec2>> loops;
  loops.push_back(outer_loop(scene.outer, h));
  const size_t n_outer = loops[0].size();
  for (const Shape& inc : scene.inclusions) {
    for (auto& lp : interface_loops(inc, h)) {
      if (lp.size() < 8)
        throw MeshError("h too large to resolve an inclusion boundary");
      loops.push_back(std::move(lp));
    }
  }
  if (n_outer < 8) throw MeshError("h too large to resolve the outer boundary");

  std::vector<Vec2> pts;
  std::vector<std::pair<int, int>> constraints;
  for (auto& lp : loops) {
    int base = int(pts.size());
    int n = int(lp.size());
    for (Vec2 p : lp) pts.push_back(p);
    for (int i = 0; i < n; ++i) constraints.push_back({base + i, base + (i + 1) % n});
  }

  // bin the constraint segments for clearance queries
  const double cell = std::max(h, 1e-12);
  std::unordered_map<int64_t, std::vector<int>> bins;
  auto bin_of = [&](Vec2 p) {
    return std::pair<int, int>{int(std::floor(p.x / cell)), int(std::floor(p.y / cell))};
  };
  for (int ci = 0; ci < int(constraints.size()); ++ci) {
    Vec2 a = pts[constraints[ci].first], b = pts[constraints[ci].second];
    auto [ix0, iy0] = bin_of({std::min(a.x, b.x), std::min(a.y, b.y)});
    auto [ix1, iy1] = bin_of({std::max(a.x, b.x), std::max(a.y, b.y)});
    for (int ix = ix0; ix <= ix1; ++ix)
      for (int iy = iy0; iy <= iy1; ++iy) bins[cell_key(ix, iy)].push_back(ci);
  }
  auto clearance_ok = [&](Vec2 p) {
    double margin2 = opts.interior_margin * h * opts.interior_margin * h;
    auto [ix, iy] = bin_of(p);
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        auto it = bins.find(cell_key(ix + dx, iy + dy));
        if (it == bins.end()) continue;
        for (int ci : it->second) {
          Vec2 a = pts[constraints[ci].first], b = pts[constraints[ci].second];
          if (point_segment_dist2(p, a, b) < margin2) return false;
        }
      }
    return true;
  };

  // hexagonal interior lattice clipped to the domain
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (Vec2 p : loops[0]) {
    xmin = std::min(xmin, p.x); xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y); ymax = std::max(ymax, p.y);
  }
  double dy = h * std::sqrt(3.0) / 2.0;
  int row = 0;
  for (double y = ymin + 0.5 * dy; y < ymax; y += dy, ++row) {
    double off = (row % 2) ? 0.5 * h : 0.0;
    for (double x = xmin + off; x < xmax; x += h) {
      Vec2 p{x, y};
      if (!outer_contains(scene.outer, p)) continue;
      if (!clearance_ok(p)) continue;
      pts.push_back(p);
    }
  }

  // symmetry-breaking jitter, deterministic in the point index
  double amp = opts.jitter * h;
  for (size_t i = 0; i < pts.size(); ++i) {
    uint64_t hx = splitmix64(2 * i), hy = splitmix64(2 * i + 1);
    pts[i].x += amp * (2.0 * (double(hx >> 11) * 0x1.0p-53) - 1.0);
    pts[i].y += amp * (2.0 * (double(hy >> 11) * 0x1.0p-53) - 1.0);
  }

  Triangulator tr(pts);
  for (auto [a, b] : constraints)
    if (!tr.has_edge(a, b) && !tr.recover_edge(a, b))
      throw MeshError("failed to recover a constraint edge; geometry too coarse for h");

  auto tri_list = tr.interior_triangles(constraints);
  if (tri_list.empty()) throw MeshError("triangulation produced no interior triangles");

  Mesh m;
  m.h = h;
  m.nodes = std::move(pts);
  m.tris.reserve(tri_list.size());
  for (auto& t : tri_list) {
    Mesh::Tri mt{{t[0], t[1], t[2]}, 2};
    if (m.tri_area(mt) < 0.0) std::swap(mt.v[1], mt.v[2]);
    Vec2 c = (m.nodes[mt.v[0]] + m.nodes[mt.v[1]] + m.nodes[mt.v[2]]) / 3.0;
    mt.tag = phase_of(scene, c);
    m.tris.push_back(mt);
  }
  m.boundary_loop.resize(n_outer);
  for (size_t i = 0; i < n_outer; ++i) m.boundary_loop[i] = int(i);

  // the recovered outer loop must be exactly the mesh boundary
  std::unordered_map<uint64_t, int> edge_use;
  auto key = [](int a, int b) {
    if (a > b) std::swap(a, b);
    return (uint64_t(uint32_t(a)) << 32) | uint32_t(b);
  };
  for (const auto& t : m.tris)
    for (int i = 0; i < 3; ++i) ++edge_use[key(t.v[i], t.v[(i + 1) % 3])];
  size_t boundary_edges = 0;
  for (auto& [k, cnt] : edge_use)
    if (cnt == 1) ++boundary_edges;
  if (boundary_edges != n_outer)
    throw MeshError("mesh boundary does not form a single outer loop");

  return m;
}

std::string export_mesh(const Mesh& m) {
  std::string out = "MESH2D v1\n";
  char buf[128];
  out += "NODES " + std::to_string(m.nodes.size()) + "\n";
  for (const Vec2& p : m.nodes) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    out += buf;
  }
  out += "TRIANGLES " + std::to_string(m.tris.size()) + "\n";
  for (const auto& t : m.tris) {
    std::snprintf(buf, sizeof buf, "%d %d %d %d\n", t.v[0], t.v[1], t.v[2], t.tag);
    out += buf;
  }
  out += "BOUNDARY " + std::to_string(m.boundary_loop.size()) + "\n";
  for (int b : m.boundary_loop) out += std::to_string(b) + "\n";
  return out;
}

Mesh import_mesh(const std::string& text, bool repair_orientation) {
  std::istringstream in(text);
  std::string tok;
  auto fail = [&](const std::string& what) -> Mesh {
    throw MeshError("mesh import: " + what);
  };
  std::string header;
  if (!std::getline(in, header) || header != "MESH2D v1") return fail("bad header");
  size_t n = 0;
  if (!(in >> tok >> n) || tok != "NODES") return fail("expected NODES");
  Mesh m;
  m.nodes.resize(n);
  for (size_t i = 0; i < n; ++i)
    if (!(in >> m.nodes[i].x >> m.nodes[i].y))
      return fail("node " + std::to_string(i) + " malformed");
  size_t nt = 0;
  if (!(in >> tok >> nt) || tok != "TRIANGLES") return fail("expected TRIANGLES");
  m.tris.resize(nt);
  for (size_t i = 0; i < nt; ++i) {
    auto& t = m.tris[i];
    if (!(in >> t.v[0] >> t.v[1] >> t.v[2] >> t.tag))
      return fail("triangle " + std::to_string(i) + " malformed");
    for (int k = 0; k < 3; ++k)
      if (t.v[k] < 0 || t.v[k] >= int(n)) return fail("triangle index out of range");
    if (t.v[0] == t.v[1] || t.v[1] == t.v[2] || t.v[0] == t.v[2])
      return fail("triangle " + std::to_string(i) + " has repeated nodes");
    if (t.tag != 1 && t.tag != 2) return fail("phase tag must be 1 or 2");
    if (m.tri_area(t) < 0.0) {
      if (!repair_orientation) return fail("triangle " + std::to_string(i) + " is clockwise");
      std::swap(t.v[1], t.v[2]);
    }
  }
  size_t nb = 0;
  if (!(in >> tok >> nb) || tok != "BOUNDARY") return fail("expected BOUNDARY");
  m.boundary_loop.resize(nb);
  for (size_t i = 0; i < nb; ++i)
    if (!(in >> m.boundary_loop[i]) || m.boundary_loop[i] < 0 || m.boundary_loop[i] >= int(n))
      return fail("boundary index malformed");
  return m;
}

std::string export_fields(const Mesh& m, const std::vector<cd>& nodal) {
  if (nodal.size() != m.nodes.size())
    throw MeshError("export_fields: one value per node required");
  std::string out = "MESH2D v1\n";
  char buf[192];
  out += "NODES " + std::to_string(m.nodes.size()) + "\n";
  for (size_t i = 0; i < m.nodes.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g\n", m.nodes[i].x, m.nodes[i].y,
                  nodal[i].real(), nodal[i].imag());
    out += buf;
  }
  out += "TRIANGLES " + std::to_string(m.tris.size()) + "\n";
  for (const auto& t : m.tris) {
    std::snprintf(buf, sizeof buf, "%d %d %d %d\n", t.v[0], t.v[1], t.v[2], t.tag);
    out += buf;
  }
  out += "BOUNDARY " + std::to_string(m.boundary_loop.size()) + "\n";
  for (int b : m.boundary_loop) out += std::to_string(b) + "\n";
  return out;
}

}  // namespace volfrac
