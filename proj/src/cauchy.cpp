#include "volfrac/cauchy.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

namespace volfrac {

double BoundaryGrid::perimeter() const {
  double s = 0.0;
  for (size_t i = 0; i < points.size(); ++i)
    s += (points[(i + 1) % points.size()] - points[i]).norm();
  return s;
}

BoundaryGrid make_polygon_grid(std::vector<Vec2> pts, std::optional<double> domain_area) {
  if (pts.size() < 3) throw std::runtime_error("boundary grid needs at least 3 points");
  BoundaryGrid g;
  const size_t n = pts.size();
  g.points = std::move(pts);
  g.normals.resize(n);
  g.tangents.resize(n);
  g.weights.resize(n);
  for (size_t i = 0; i < n; ++i) {
    Vec2 prev = g.points[(i + n - 1) % n];
    Vec2 next = g.points[(i + 1) % n];
    Vec2 e0 = g.points[i] - prev;
    Vec2 e1 = next - g.points[i];
    g.weights[i] = 0.5 * (e0.norm() + e1.norm());
    // outward normal for a ccw loop: edge tangent rotated clockwise
    Vec2 n0{e0.y, -e0.x}, n1{e1.y, -e1.x};
    g.normals[i] = (n0 + n1).normalized();
    g.tangents[i] = g.normals[i].perp();  // ccw
  }
  g.domain_area = domain_area.value_or(shoelace_area(g.points));
  return g;
}

std::vector<cd> stream_potential(const CauchyPair& c) {
  if (c.stream_exact) return *c.stream_exact;
  const auto& g = *c.grid;
  const size_t n = g.size();
  std::vector<cd> psi(n, cd(0, 0));
  for (size_t i = 1; i < n; ++i) {
    double seg = (g.points[i] - g.points[i - 1]).norm();
    psi[i] = psi[i - 1] + 0.5 * (c.q[i - 1] + c.q[i]) * seg;
  }
  return psi;
}

std::vector<cd> tangential_derivative(const CauchyPair& c) {
  const auto& g = *c.grid;
  const size_t n = g.size();
  if (n < 3) throw std::runtime_error("tangential derivative needs at least 3 samples");
  std::vector<cd> d(n);
  if (c.dirichlet_coeff) {
    Vec2 coeff = *c.dirichlet_coeff;
    for (size_t i = 0; i < n; ++i) d[i] = cd(coeff.dot(g.tangents[i]), 0.0);
    return d;
  }
  for (size_t i = 0; i < n; ++i) {
    size_t ip = (i + 1) % n, im = (i + n - 1) % n;
    double ds = (g.points[ip] - g.points[i]).norm() + (g.points[i] - g.points[im]).norm();
    d[i] = (c.phi[ip] - c.phi[im]) / ds;
  }
  return d;
}

namespace {

// Deterministic standard normal stream: mt19937_64 bits through Box-Muller.
class NormalStream {
 public:
  explicit NormalStream(uint64_t seed) : eng_(seed) {}
  double next() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    double u1, u2;
    do { u1 = uniform(); } while (u1 <= 0.0);
    u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_ = false;
};

}  // namespace

CauchyPair add_noise(const CauchyPair& c, double p, uint64_t seed) {
  if (p < 0.0) throw std::runtime_error("noise level must be nonnegative");
  CauchyPair out = c;
  if (p == 0.0) return out;
  out.stream_exact.reset();  // exact antiderivative no longer matches q
  NormalStream rng(seed);
  for (auto& v : out.q) {
    double gr = rng.next();
    double gi = rng.next();
    v = cd((1.0 + p * gr) * v.real(), (1.0 + p * gi) * v.imag());
  }
  return out;
}

std::string write_cauchy_csv(const CauchyPair& c) {
  const auto& g = *c.grid;
  std::string out = "x,y,nx,ny,w,phi_re,phi_im,q_re,q_im\n";
  char buf[256];
  for (size_t i = 0; i < g.size(); ++i) {
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  g.points[i].x, g.points[i].y, g.normals[i].x, g.normals[i].y,
                  g.weights[i], c.phi[i].real(), c.phi[i].imag(), c.q[i].real(),
                  c.q[i].imag());
    out += buf;
  }
  return out;
}

CauchyPair read_cauchy_csv(const std::string& text, std::optional<double> domain_area) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("cauchy csv: empty input");
  if (line.rfind("x,y,nx,ny,w,phi_re,phi_im,q_re,q_im", 0) != 0)
    throw std::runtime_error("cauchy csv: missing or malformed header");
  std::vector<Vec2> pts;
  std::vector<cd> phi, q;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    double v[9];
    int k = 0;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',') && k < 9) v[k++] = std::stod(cell);
    if (k != 9)
      throw std::runtime_error("cauchy csv: line " + std::to_string(lineno) + ": expected 9 columns");
    pts.push_back({v[0], v[1]});
    phi.emplace_back(v[5], v[6]);
    q.emplace_back(v[7], v[8]);
  }
  CauchyPair c;
  c.grid = std::make_shared<BoundaryGrid>(make_polygon_grid(std::move(pts), domain_area));
  c.phi = std::move(phi);
  c.q = std::move(q);
  c.label = "file";
  return c;
}

double conservation_defect(const CauchyPair& c) {
  cd total(0, 0);
  double scale = 0.0;
  for (size_t i = 0; i < c.q.size(); ++i) {
    total += c.q[i] * c.grid->weights[i];
    scale += std::abs(c.q[i]) * c.grid->weights[i];
  }
  return scale > 0.0 ? std::abs(total) / scale : 0.0;
}

}  // namespace volfrac
