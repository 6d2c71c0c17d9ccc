#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "volfrac/geometry.hpp"

namespace volfrac {

// Complex conductivities of the inclusion phase (sigma1) and background (sigma2).
struct PhasePair {
  cd sigma1{1.0, 0.0};
  cd sigma2{1.0, 0.0};
};

struct PhaseVerdict {
  bool ok = true;
  std::vector<std::string> violations;
};

// Admissibility: Re(sigma) > 0 on both phases, |sigma1| != |sigma2|,
// sigma1/sigma2 not real.
PhaseVerdict validate_phases(const PhasePair& p);

struct Disk {
  Vec2 center;
  double radius = 0.0;
};

struct EllipseShape {
  Vec2 center;
  double a = 0.0, b = 0.0;  // semi-axes
  double angle = 0.0;       // rotation of the major axis, radians
};

struct PolygonShape {
  std::vector<Vec2> points;  // ccw, closed implicitly
};

// Set difference outer \ inner of two overlapping disks.
struct Crescent {
  Disk outer;
  Disk inner;
};

// Radially layered configuration: phase 1 occupies rho < r1 and r2 < rho < r3.
// r3 must coincide with a circular outer boundary of the scene.
struct AnnulusPhase1 {
  double r1 = 0.0, r2 = 0.0, r3 = 0.0;
};

using Shape = std::variant<Disk, EllipseShape, PolygonShape, Crescent, AnnulusPhase1>;

struct PolarCurve {
  // rho(omega) = a0 + sum_k (cos_amp[k] cos(k omega) + sin_amp[k] sin(k omega)), k from 1
  double a0 = 1.0;
  std::vector<double> cos_amp;
  std::vector<double> sin_amp;

  double radius(double omega) const;
  double min_radius() const;
  double area() const;  // pi (a0^2 + 1/2 sum amp^2)
};

using OuterBoundary = std::variant<Disk, EllipseShape, PolygonShape, PolarCurve>;

struct Scene {
  std::string name;
  OuterBoundary outer;
  std::vector<Shape> inclusions;
  PhasePair phases;

  // If the scene is a concentric layered disk stack, the analytic data source
  // applies; radii ascending, sigma per layer innermost first.
  std::optional<std::pair<std::vector<double>, std::vector<cd>>> layered() const;
};

struct SceneError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double shape_area(const Shape& s);
bool shape_contains(const Shape& s, Vec2 p);

double outer_area(const OuterBoundary& o);
bool outer_contains(const OuterBoundary& o, Vec2 p);

// Phase at a point: 1 inside any inclusion region, 2 otherwise.
int phase_of(const Scene& s, Vec2 p);

// |D| / |Omega| from the analytic shape areas. Throws SceneError on
// overlapping inclusions or an inclusion outside the domain.
double area_fraction(const Scene& s);

Scene parse_scene(const std::string& json_text);
std::string serialize_scene(const Scene& s);

// Bundled configurations: table1_row1..table1_row4, table2, table3, table4, table5.
Scene builtin_scene(const std::string& name);
std::vector<std::string> builtin_scene_names();

}  // namespace volfrac
