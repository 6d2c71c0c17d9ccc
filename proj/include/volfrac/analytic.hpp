#pragma once

#include <utility>
#include <vector>

#include "volfrac/cauchy.hpp"

namespace volfrac {

// Concentric layered disk under a linear Dirichlet excitation phi = c . x.
// radii ascending, outermost is the domain boundary; layer_sigma innermost first.
struct LayeredDiskSpec {
  std::vector<double> radii;
  std::vector<cd> layer_sigma;
  Vec2 dirichlet_coeff{1.0, 0.0};
};

// Coefficients (A_N, B_N) of the outermost layer ansatz u = (A rho + B/rho) g,
// normalised so u = c.x on the boundary. Interface continuity of u and of
// sigma du/drho is solved layer by layer.
std::pair<cd, cd> layered_outer_coefficients(const LayeredDiskSpec& spec);

// Boundary flux coefficient: q = lambda * (c . x / R) on the outer circle.
cd layered_flux_coefficient(const LayeredDiskSpec& spec);

// Closed-form Cauchy data sampled at n uniform angles. The pair carries the
// exact stream potential and the linear-form tag for exact tangential
// derivatives, so downstream quadrature is the only discretisation left.
CauchyPair layered_cauchy(const LayeredDiskSpec& spec, int n_samples);

// Convenience: both excitations phi1 = x, phi2 = y on a shared grid.
std::pair<CauchyPair, CauchyPair> layered_cauchy_xy(const std::vector<double>& radii,
                                                    const std::vector<cd>& sigma,
                                                    int n_samples);

}  // namespace volfrac
