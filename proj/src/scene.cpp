#include "volfrac/scene.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace volfrac {

using nlohmann::json;

PhaseVerdict validate_phases(const PhasePair& p) {
  PhaseVerdict v;
  if (!(p.sigma1.real() > 0.0)) v.violations.push_back("Re(sigma1) <= 0");
  if (!(p.sigma2.real() > 0.0)) v.violations.push_back("Re(sigma2) <= 0");
  if (std::abs(std::abs(p.sigma1) - std::abs(p.sigma2)) == 0.0)
    v.violations.push_back("|sigma1| == |sigma2|");
  cd ratio = p.sigma1 / p.sigma2;
  if (ratio.imag() == 0.0) v.violations.push_back("sigma1/sigma2 is real");
  v.ok = v.violations.empty();
  return v;
}

double PolarCurve::radius(double omega) const {
  double r = a0;
  for (size_t k = 0; k < cos_amp.size(); ++k) r += cos_amp[k] * std::cos(double(k + 1) * omega);
  for (size_t k = 0; k < sin_amp.size(); ++k) r += sin_amp[k] * std::sin(double(k + 1) * omega);
  return r;
}

double PolarCurve::min_radius() const {
  double m = radius(0.0);
  for (int i = 1; i < 4096; ++i) m = std::min(m, radius(2.0 * kPi * i / 4096.0));
  return m;
}

double PolarCurve::area() const {
  double s = a0 * a0;
  for (double c : cos_amp) s += 0.5 * c * c;
  for (double c : sin_amp) s += 0.5 * c * c;
  return kPi * s;
}

namespace {

// Area of the intersection of two disks.
double lens_area(const Disk& A, const Disk& B) {
  double d = (A.center - B.center).norm();
  double r1 = A.radius, r2 = B.radius;
  if (d >= r1 + r2) return 0.0;
  if (d <= std::abs(r1 - r2)) {
    double r = std::min(r1, r2);
    return kPi * r * r;
  }
  double c1 = (d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1);
  double c2 = (d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2);
  double t1 = r1 * r1 * std::acos(std::clamp(c1, -1.0, 1.0));
  double t2 = r2 * r2 * std::acos(std::clamp(c2, -1.0, 1.0));
  double s = (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2);
  return t1 + t2 - 0.5 * std::sqrt(std::max(0.0, s));
}

bool in_disk(const Disk& d, Vec2 p) { return (p - d.center).norm2() < d.radius * d.radius; }

bool in_ellipse(const EllipseShape& e, Vec2 p) {
  Vec2 q = p - e.center;
  double c = std::cos(e.angle), s = std::sin(e.angle);
  double u = c * q.x + s * q.y;
  double v = -s * q.x + c * q.y;
  return (u / e.a) * (u / e.a) + (v / e.b) * (v / e.b) < 1.0;
}

bool in_polygon(const std::vector<Vec2>& poly, Vec2 p) {
  bool in = false;
  for (size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) &&
        p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x)
      in = !in;
  }
  return in;
}

// Conservative enclosing disk per shape, for overlap and containment checks.
std::pair<Vec2, double> bounding_disk(const Shape& s) {
  if (auto* d = std::get_if<Disk>(&s)) return {d->center, d->radius};
  if (auto* e = std::get_if<EllipseShape>(&s)) return {e->center, std::max(e->a, e->b)};
  if (auto* p = std::get_if<PolygonShape>(&s)) {
    Vec2 c{0, 0};
    for (auto& q : p->points) c = c + q;
    c = c / double(p->points.size());
    double r = 0;
    for (auto& q : p->points) r = std::max(r, (q - c).norm());
    return {c, r};
  }
  if (auto* c = std::get_if<Crescent>(&s)) return {c->outer.center, c->outer.radius};
  auto& a = std::get<AnnulusPhase1>(s);
  return {{0, 0}, a.r3};
}

}  // namespace

double shape_area(const Shape& s) {
  if (auto* d = std::get_if<Disk>(&s)) return kPi * d->radius * d->radius;
  if (auto* e = std::get_if<EllipseShape>(&s)) return kPi * e->a * e->b;
  if (auto* p = std::get_if<PolygonShape>(&s)) return shoelace_area(p->points);
  if (auto* c = std::get_if<Crescent>(&s))
    return kPi * c->outer.radius * c->outer.radius - lens_area(c->outer, c->inner);
  auto& a = std::get<AnnulusPhase1>(s);
  return kPi * (a.r1 * a.r1 + a.r3 * a.r3 - a.r2 * a.r2);
}

bool shape_contains(const Shape& s, Vec2 p) {
  if (auto* d = std::get_if<Disk>(&s)) return in_disk(*d, p);
  if (auto* e = std::get_if<EllipseShape>(&s)) return in_ellipse(*e, p);
  if (auto* pg = std::get_if<PolygonShape>(&s)) return in_polygon(pg->points, p);
  if (auto* c = std::get_if<Crescent>(&s)) return in_disk(c->outer, p) && !in_disk(c->inner, p);
  auto& a = std::get<AnnulusPhase1>(s);
  double rho = p.norm();
  return rho < a.r1 || (rho > a.r2 && rho < a.r3);
}

double outer_area(const OuterBoundary& o) {
  if (auto* d = std::get_if<Disk>(&o)) return kPi * d->radius * d->radius;
  if (auto* e = std::get_if<EllipseShape>(&o)) return kPi * e->a * e->b;
  if (auto* p = std::get_if<PolygonShape>(&o)) return shoelace_area(p->points);
  return std::get<PolarCurve>(o).area();
}

bool outer_contains(const OuterBoundary& o, Vec2 p) {
  if (auto* d = std::get_if<Disk>(&o)) return in_disk(*d, p);
  if (auto* e = std::get_if<EllipseShape>(&o)) return in_ellipse(*e, p);
  if (auto* pg = std::get_if<PolygonShape>(&o)) return in_polygon(pg->points, p);
  auto& c = std::get<PolarCurve>(o);
  double rho = p.norm();
  return rho < c.radius(std::atan2(p.y, p.x));
}

int phase_of(const Scene& s, Vec2 p) {
  for (const auto& inc : s.inclusions)
    if (shape_contains(inc, p)) return 1;
  return 2;
}

double area_fraction(const Scene& s) {
  double total = outer_area(s.outer);
  double d = 0.0;
  bool has_annulus = false;
  for (const auto& inc : s.inclusions) {
    d += shape_area(inc);
    if (std::holds_alternative<AnnulusPhase1>(inc)) has_annulus = true;
  }
  // pairwise overlap and containment checks (bounding disks; annulus layers exempt)
  if (!has_annulus) {
    for (size_t i = 0; i < s.inclusions.size(); ++i) {
      auto [ci, ri] = bounding_disk(s.inclusions[i]);
      if (auto* od = std::get_if<Disk>(&s.outer)) {
        if ((ci - od->center).norm() + ri >= od->radius)
          throw SceneError("inclusion extends outside the domain: " + s.name);
      } else if (auto* pc = std::get_if<PolarCurve>(&s.outer)) {
        if (ci.norm() + ri >= pc->min_radius())
          throw SceneError("inclusion extends outside the domain: " + s.name);
      }
      for (size_t j = i + 1; j < s.inclusions.size(); ++j) {
        auto [cj, rj] = bounding_disk(s.inclusions[j]);
        if ((ci - cj).norm() < ri + rj)
          throw SceneError("overlapping inclusions: " + s.name);
      }
    }
  }
  return d / total;
}

std::optional<std::pair<std::vector<double>, std::vector<cd>>> Scene::layered() const {
  auto* od = std::get_if<Disk>(&outer);
  if (!od || od->center.norm() != 0.0) return std::nullopt;
  if (inclusions.size() != 1) return std::nullopt;
  if (auto* d = std::get_if<Disk>(&inclusions[0])) {
    if (d->center.norm() != 0.0) return std::nullopt;
    return std::make_pair(std::vector<double>{d->radius, od->radius},
                          std::vector<cd>{phases.sigma1, phases.sigma2});
  }
  if (auto* a = std::get_if<AnnulusPhase1>(&inclusions[0])) {
    if (std::abs(a->r3 - od->radius) > 1e-12 * od->radius) return std::nullopt;
    return std::make_pair(std::vector<double>{a->r1, a->r2, a->r3},
                          std::vector<cd>{phases.sigma1, phases.sigma2, phases.sigma1});
  }
  return std::nullopt;
}

namespace {

Vec2 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw SceneError("expected [x, y] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json vec_to(Vec2 v) { return json::array({v.x, v.y}); }

Disk disk_from(const json& j) {
  return {vec_from(j.at("center")), j.at("radius").get<double>()};
}

Shape shape_from(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "disk") return disk_from(j);
  if (kind == "ellipse")
    return EllipseShape{vec_from(j.at("center")), j.at("a").get<double>(),
                        j.at("b").get<double>(), j.value("angle", 0.0)};
  if (kind == "polygon") {
    PolygonShape p;
    for (const auto& q : j.at("points")) p.points.push_back(vec_from(q));
    if (p.points.size() < 3) throw SceneError("polygon needs at least 3 points");
    return p;
  }
  if (kind == "crescent") return Crescent{disk_from(j.at("outer")), disk_from(j.at("inner"))};
  if (kind == "annulus_phase1") {
    const auto& r = j.at("radii");
    if (!r.is_array() || r.size() != 3) throw SceneError("annulus_phase1 needs radii [R1,R2,R3]");
    return AnnulusPhase1{r[0].get<double>(), r[1].get<double>(), r[2].get<double>()};
  }
  throw SceneError("unknown shape kind: " + kind);
}

json shape_to(const Shape& s) {
  json j;
  if (auto* d = std::get_if<Disk>(&s)) {
    j["kind"] = "disk";
    j["center"] = vec_to(d->center);
    j["radius"] = d->radius;
  } else if (auto* e = std::get_if<EllipseShape>(&s)) {
    j["kind"] = "ellipse";
    j["center"] = vec_to(e->center);
    j["a"] = e->a;
    j["b"] = e->b;
    j["angle"] = e->angle;
  } else if (auto* p = std::get_if<PolygonShape>(&s)) {
    j["kind"] = "polygon";
    j["points"] = json::array();
    for (auto& q : p->points) j["points"].push_back(vec_to(q));
  } else if (auto* c = std::get_if<Crescent>(&s)) {
    j["kind"] = "crescent";
    j["outer"] = {{"kind", "disk"}, {"center", vec_to(c->outer.center)}, {"radius", c->outer.radius}};
    j["inner"] = {{"kind", "disk"}, {"center", vec_to(c->inner.center)}, {"radius", c->inner.radius}};
  } else {
    auto& a = std::get<AnnulusPhase1>(s);
    j["kind"] = "annulus_phase1";
    j["radii"] = json::array({a.r1, a.r2, a.r3});
  }
  return j;
}

OuterBoundary outer_from(const json& j) {
  std::string kind = j.value("kind", "circle");
  if (kind == "circle" || kind == "disk") return disk_from(j);
  if (kind == "ellipse")
    return EllipseShape{vec_from(j.at("center")), j.at("a").get<double>(),
                        j.at("b").get<double>(), j.value("angle", 0.0)};
  if (kind == "polygon") {
    PolygonShape p;
    for (const auto& q : j.at("points")) p.points.push_back(vec_from(q));
    return p;
  }
  if (kind == "polar") {
    PolarCurve c;
    c.a0 = j.at("a0").get<double>();
    if (j.contains("cos_amp")) c.cos_amp = j.at("cos_amp").get<std::vector<double>>();
    if (j.contains("sin_amp")) c.sin_amp = j.at("sin_amp").get<std::vector<double>>();
    return c;
  }
  throw SceneError("unknown outer boundary kind: " + kind);
}

json outer_to(const OuterBoundary& o) {
  if (auto* d = std::get_if<Disk>(&o))
    return {{"kind", "circle"}, {"center", vec_to(d->center)}, {"radius", d->radius}};
  if (auto* e = std::get_if<EllipseShape>(&o))
    return {{"kind", "ellipse"}, {"center", vec_to(e->center)}, {"a", e->a}, {"b", e->b}, {"angle", e->angle}};
  if (auto* p = std::get_if<PolygonShape>(&o)) {
    json j{{"kind", "polygon"}};
    j["points"] = json::array();
    for (auto& q : p->points) j["points"].push_back(vec_to(q));
    return j;
  }
  auto& c = std::get<PolarCurve>(o);
  return {{"kind", "polar"}, {"a0", c.a0}, {"cos_amp", c.cos_amp}, {"sin_amp", c.sin_amp}};
}

}  // namespace

Scene parse_scene(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SceneError(std::string("scene parse error: ") + e.what());
  }
  Scene s;
  try {
    s.name = j.value("name", "unnamed");
    s.outer = outer_from(j.at("outer"));
    for (const auto& inc : j.value("inclusions", json::array())) s.inclusions.push_back(shape_from(inc));
    if (!j.contains("sigma1")) throw SceneError("missing field: sigma1");
    if (!j.contains("sigma2")) throw SceneError("missing field: sigma2");
    auto s1 = j.at("sigma1"), s2 = j.at("sigma2");
    s.phases.sigma1 = cd(s1.at(0).get<double>(), s1.at(1).get<double>());
    s.phases.sigma2 = cd(s2.at(0).get<double>(), s2.at(1).get<double>());
  } catch (const json::exception& e) {
    throw SceneError(std::string("scene parse error: ") + e.what());
  }
  return s;
}

std::string serialize_scene(const Scene& s) {
  json j;
  j["name"] = s.name;
  j["outer"] = outer_to(s.outer);
  j["inclusions"] = json::array();
  for (auto& inc : s.inclusions) j["inclusions"].push_back(shape_to(inc));
  j["sigma1"] = json::array({s.phases.sigma1.real(), s.phases.sigma1.imag()});
  j["sigma2"] = json::array({s.phases.sigma2.real(), s.phases.sigma2.imag()});
  return j.dump(2);
}

namespace {

// Distance between centers of the two crescent disks such that the
// set difference outer \ inner has the requested area.
double solve_crescent_distance(double ro, double ri, double target_area) {
  double full = kPi * ro * ro;
  auto area_at = [&](double d) {
    Disk A{{0, 0}, ro}, B{{0, d}, ri};
    return full - lens_area(A, B);
  };
  double lo = std::abs(ri - ro) + 1e-12, hi = ri + ro - 1e-12;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (area_at(mid) < target_area) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Scene builtin_scene(const std::string& name) {
  Scene s;
  s.name = name;
  if (name.rfind("table1_row", 0) == 0) {
    static const cd sig1[4] = {{1, 1}, {2, 0.5}, {2, 5}, {4, 100}};
    int row = std::stoi(name.substr(10));
    if (row < 1 || row > 4) throw SceneError("unknown builtin scene: " + name);
    s.outer = Disk{{0, 0}, 1.0};
    s.inclusions = {Disk{{0, 0}, 0.4}};
    s.phases = {sig1[row - 1], cd(1, 0)};
    return s;
  }
  if (name == "table2") {
    s.outer = Disk{{0, 0}, 1.0};
    s.inclusions = {EllipseShape{{-0.1, -0.3}, 0.4, 0.3, 0.0}};
    s.phases = {cd(2, 1), cd(1, 0)};
    return s;
  }
  if (name == "table3") {
    // Two disks plus a crescent "mouth" of area fraction exactly 0.0225.
    // Crescent disks: outer r=0.4 centred at (0,-0.35), inner r=0.5 above it;
    // the centre distance is solved so that |outer \ inner| = 0.0225 pi.
    double d = solve_crescent_distance(0.4, 0.5, 0.0225 * kPi);
    s.outer = Disk{{0, 0}, 1.0};
    s.inclusions = {Disk{{-0.4, 0.3}, 0.25}, Disk{{0.4, 0.3}, 0.25},
                    Crescent{Disk{{0, -0.35}, 0.4}, Disk{{0, -0.35 + d}, 0.5}}};
    s.phases = {cd(2, 1), cd(1, 0)};
    return s;
  }
  if (name == "table4") {
    // Smooth star-shaped domain rho = 1 + 0.2 cos(3 omega), |Omega| = 1.02 pi.
    // Disk inclusion sized for area fraction 0.029281.
    PolarCurve c;
    c.a0 = 1.0;
    c.cos_amp = {0.0, 0.0, 0.2};
    s.outer = c;
    s.inclusions = {Disk{{0.25, 0.15}, std::sqrt(0.029281 * 1.02)}};
    s.phases = {cd(1, 2), cd(1, 0)};
    return s;
  }
  if (name == "table5") {
    s.outer = Disk{{0, 0}, 5.0};
    s.inclusions = {AnnulusPhase1{2.0, 3.0, 5.0}};
    s.phases = {cd(3, 8), cd(8, 6)};
    return s;
  }
  throw SceneError("unknown builtin scene: " + name);
}

std::vector<std::string> builtin_scene_names() {
  return {"table1_row1", "table1_row2", "table1_row3", "table1_row4",
          "table2", "table3", "table4", "table5"};
}

}  // namespace volfrac
