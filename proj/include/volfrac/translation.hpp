#pragma once

#include <Eigen/Dense>

#include "volfrac/scene.hpp"

namespace volfrac {

enum class BoundSide { lower, upper };

// Rank-minimising translation parameters for one side of the bound pair.
// D1/D2 are the translated tensors per phase, P1p = D1 + T etc. with
// T = diag(t1, t2). On the lower side P1p is the nondegenerate matrix and p
// spans range(P2p); on the upper side the roles are exchanged.
struct TranslationParams {
  BoundSide side = BoundSide::lower;
  double r = 0.0;
  double t1 = 0.0, t2 = 0.0, t3 = 0.0;
  Mat2 D1, D2;
  Mat2 P1p, P1m, P2p, P2m;
  Vec2 p;                 // unit vector spanning the rank-1 range
  double coef_trP = 0.0;  // tr P2p (lower) or tr P1p (upper)
  double coef_detP = 0.0; // det P1p (lower) or det P2p (upper)
  double coef_detDiff = 0.0;  // det(P1p - P2p), negative for admissible pairs
};

struct TranslationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// r = (|s1|^2 - |s2|^2) / (2 (s1' s2'' - s2' s1''))
double compute_r(const PhasePair& p);

// [[1/s', s''/s' + t3], [s''/s' + t3, |s|^2/s']]
Mat2 d_matrix(cd sigma, double t3);

TranslationParams lower_params(const PhasePair& p);
TranslationParams upper_params(const PhasePair& p);

// min over f1 E1 + f2 E2 = E0 of f1 E1.L1 E1 + f2 E2.L2 E2 for symmetric PSD
// L1, L2, via the projected harmonic mean with pseudo-inverses.
double constrained_quadratic_min(const Eigen::MatrixXd& L1, const Eigen::MatrixXd& L2,
                                 double f1, double f2, const Eigen::VectorXd& E0);

// Orthogonal 8x8 change of basis that block-diagonalises the translated
// tensor into diag(Dt3+T, Dt3-T, Dt3+T, Dt3-T).
Eigen::Matrix<double, 8, 8> coupling_basis();

// The 8x8 translated tensor [[Dt, R],[-R, Dt]] for one phase.
Eigen::Matrix<double, 8, 8> translated_tensor(cd sigma, double t1, double t2, double t3);

}  // namespace volfrac
