#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace volfrac {

using cd = std::complex<double>;

struct Vec2 {
  double x = 0.0, y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
  Vec2 normalized() const { double n = norm(); return {x / n, y / n}; }
  Vec2 perp() const { return {-y, x}; }  // ccw rotation by pi/2
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

// Symmetric or general 2x2 real matrix, row-major.
struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  static Mat2 sym(double d11, double d12, double d22) { return {d11, d12, d12, d22}; }
  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 outer(Vec2 u, Vec2 v) { return {u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y}; }

  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a21; }
  double frob() const { return std::sqrt(a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22); }
  Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
  Mat2 operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
  Mat2 operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
  Vec2 apply(Vec2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }

  // Eigenvalues of the symmetrized matrix, ascending.
  std::array<double, 2> sym_eigenvalues() const {
    double m = 0.5 * (a11 + a22);
    double s = 0.5 * (a12 + a21);
    double d = 0.5 * (a11 - a22);
    double r = std::sqrt(d * d + s * s);
    return {m - r, m + r};
  }

  // Unit eigenvector of the larger eigenvalue, first nonzero component positive.
  Vec2 sym_major_eigenvector() const {
    double s = 0.5 * (a12 + a21);
    double lam = sym_eigenvalues()[1];
    Vec2 v1{s, lam - a11};
    Vec2 v2{lam - a22, s};
    Vec2 v = v1.norm2() >= v2.norm2() ? v1 : v2;
    if (v.norm2() == 0.0) v = {1.0, 0.0};
    v = v.normalized();
    if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) v = v * -1.0;
    if (std::abs(v.x) < 1e-14 && v.y < 0.0) v = v * -1.0;
    return v;
  }
};

inline double shoelace_area(const std::vector<Vec2>& poly) {
  double acc = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    acc += a.cross(b);
  }
  return 0.5 * acc;
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace volfrac
