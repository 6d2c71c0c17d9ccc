#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "volfrac/geometry.hpp"

namespace volfrac {

// Closed counterclockwise boundary sampling of the domain.
struct BoundaryGrid {
  std::vector<Vec2> points;
  std::vector<Vec2> normals;   // outward unit
  std::vector<Vec2> tangents;  // ccw unit
  std::vector<double> weights; // arc-length quadrature weights
  double domain_area = 0.0;

  size_t size() const { return points.size(); }
  double perimeter() const;
};

// Build normals/tangents/weights for a closed ccw polygon of points.
// domain_area defaults to the shoelace area of the polygon.
BoundaryGrid make_polygon_grid(std::vector<Vec2> points,
                               std::optional<double> domain_area = std::nullopt);

// One excitation's Dirichlet trace and Neumann flux density on a grid.
struct CauchyPair {
  std::shared_ptr<const BoundaryGrid> grid;
  std::vector<cd> phi;
  std::vector<cd> q;
  std::string label;

  // phi = coeff . x when the Dirichlet data is a linear form; enables the
  // analytic tangential derivative.
  std::optional<Vec2> dirichlet_coeff;

  // Closed-form boundary antiderivative of q when the data generator knows it
  // (analytic layered solutions); otherwise the cumulative trapezoid is used.
  std::optional<std::vector<cd>> stream_exact;
};

// psi0(x_i): boundary antiderivative of q from the first grid point,
// psi0(first) = 0. Cumulative trapezoid unless the pair carries exact values.
std::vector<cd> stream_potential(const CauchyPair& c);

// dphi/dt along the boundary: exact for linear Dirichlet data, otherwise
// second-order central differences on the closed loop.
std::vector<cd> tangential_derivative(const CauchyPair& c);

// Multiplicative Gaussian perturbation of q, independently per sample and per
// real/imaginary component: q' -> (1 + p g') q', q'' -> (1 + p g'') q''.
CauchyPair add_noise(const CauchyPair& c, double p, uint64_t seed);

// CSV with header x,y,nx,ny,w,phi_re,phi_im,q_re,q_im.
std::string write_cauchy_csv(const CauchyPair& c);
CauchyPair read_cauchy_csv(const std::string& text,
                           std::optional<double> domain_area = std::nullopt);

// |sum q_i w_i| relative to sum |q_i| w_i; near zero for conserved current.
double conservation_defect(const CauchyPair& c);

}  // namespace volfrac
