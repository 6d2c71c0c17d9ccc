#pragma once

#include "volfrac/cauchy.hpp"
#include "volfrac/translation.hpp"

namespace volfrac {

// Bilinear trig moment: f(th_a, th_b) = [cos sa, sin sa] m [cos sb, sin sb]^T.
struct TrigMat {
  double m[2][2] = {{0, 0}, {0, 0}};

  double eval(double ca, double sa, double cb, double sb) const {
    return ca * (m[0][0] * cb + m[0][1] * sb) + sa * (m[1][0] * cb + m[1][1] * sb);
  }
  double eval_angles(double tha, double thb) const {
    return eval(std::cos(tha), std::sin(tha), std::cos(thb), std::sin(thb));
  }
  TrigMat& operator+=(const TrigMat& o) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m[i][j] += o.m[i][j];
    return *this;
  }
};

// Linear trig moment of a 2-vector average: component c of the vector is
// coef_cos[c] cos(th) + coef_sin[c] sin(th).
struct TrigVec {
  double coef_cos[2] = {0, 0};
  double coef_sin[2] = {0, 0};

  Vec2 eval(double c, double s) const {
    return {coef_cos[0] * c + coef_sin[0] * s, coef_cos[1] * c + coef_sin[1] * s};
  }
};

// Theta-independent boundary integrals of the two-excitation data. Every
// (theta1, theta2) dependent functional is an O(1) trig recombination of
// these moments.
struct MomentTable {
  TrigMat a[2][2];   // response entries a_jk
  TrigMat s[2][2];   // translation corrections s_jk
  TrigMat alpha1;    // <j~1' . Rperp j~2'> via the stream potential
  TrigMat alpha2;    // <e~1'' . Rperp e~2''> via the tangential derivative
  TrigVec avg_j[2];  // <j~k'>
  TrigVec avg_e[2];  // <e~k''>
  double area = 0.0;
};

struct MeasurementSet {
  double theta1 = 0.0, theta2 = 0.0;
  Mat2 A0;  // a_jk
  Mat2 S;   // s_jk
  double alpha1 = 0.0, alpha2 = 0.0;
  Vec2 avg_j[2];
  Vec2 avg_e[2];
};

// Inputs of the bound formulas at one (theta1, theta2) for one side.
struct BoundInputs {
  Mat2 Atilde;
  double b = 0.0;
  Mat2 M;
  double m = 0.0;
};

MomentTable build_moments(const CauchyPair& c1, const CauchyPair& c2);

MeasurementSet evaluate_measurements(const MomentTable& t, double theta1, double theta2);

// Direct quadrature of the same functionals; the debug path and the
// recombination-exactness oracle.
MeasurementSet measure_direct(const CauchyPair& c1, const CauchyPair& c2,
                              double theta1, double theta2);

// Atilde = A0 + t3 S, b = alpha1 t1 + alpha2 t2, and (M, m) from the projected
// average matrix. The 4x4 block identity behind (M, m) is verified on every
// call; violation signals an implementation bug.
BoundInputs assemble_bound_inputs(const MeasurementSet& ms, const TranslationParams& tp);

}  // namespace volfrac
