#include "volfrac/moments.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace volfrac {

namespace {

// Coefficient pair (c, s) of Re(z e^{i th}) = z' cos th - z'' sin th and
// Im(z e^{i th}) = z'' cos th + z' sin th, per sample.
struct CsView {
  const std::vector<cd>* z;
  bool imaginary_part;
  double c(size_t i) const { return imaginary_part ? (*z)[i].imag() : (*z)[i].real(); }
  double s(size_t i) const { return imaginary_part ? (*z)[i].real() : -(*z)[i].imag(); }
};

TrigMat bilinear(const CsView& f, const CsView& g, const std::vector<double>& w) {
  TrigMat out;
  for (size_t i = 0; i < w.size(); ++i) {
    double fc = f.c(i), fs = f.s(i);
    double gc = g.c(i), gs = g.s(i);
    out.m[0][0] += fc * gc * w[i];
    out.m[0][1] += fc * gs * w[i];
    out.m[1][0] += fs * gc * w[i];
    out.m[1][1] += fs * gs * w[i];
  }
  return out;
}

TrigMat transpose(const TrigMat& t) {
  TrigMat out;
  out.m[0][0] = t.m[0][0];
  out.m[0][1] = t.m[1][0];
  out.m[1][0] = t.m[0][1];
  out.m[1][1] = t.m[1][1];
  return out;
}

TrigMat scaled(const TrigMat& t, double s) {
  TrigMat out = t;
  for (auto& row : out.m)
    for (auto& v : row) v *= s;
  return out;
}

}  // namespace

MomentTable build_moments(const CauchyPair& c1, const CauchyPair& c2) {
  if (c1.grid != c2.grid && c1.grid->points.size() != c2.grid->points.size())
    throw std::runtime_error("build_moments: excitations must share one boundary grid");
  const BoundaryGrid& g = *c1.grid;
  const auto& w = g.weights;
  const double area = g.domain_area;

  const CauchyPair* cp[2] = {&c1, &c2};
  MomentTable t;
  t.area = area;

  // a_jk and s_jk: each is a pair of bilinear boundary terms, the second with
  // the roles of j and k exchanged (transpose in the trig basis).
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      CsView re_qj{&cp[j]->q, false}, re_qk{&cp[k]->q, false};
      CsView im_qk{&cp[k]->q, true};
      CsView re_fk{&cp[k]->phi, false};
      CsView im_fj{&cp[j]->phi, true}, im_fk{&cp[k]->phi, true};
      TrigMat a = bilinear(re_qj, re_fk, w);
      a += transpose(bilinear(im_qk, im_fj, w));
      t.a[j][k] = scaled(a, 1.0 / area);
      TrigMat s = bilinear(re_qj, im_fk, w);
      s += transpose(bilinear(re_qk, im_fj, w));
      t.s[j][k] = scaled(s, 1.0 / area);
    }
  }

  std::vector<cd> psi2 = stream_potential(c2);
  CsView re_q1{&c1.q, false}, re_psi{&psi2, false};
  t.alpha1 = scaled(bilinear(re_q1, re_psi, w), -1.0 / area);

  std::vector<cd> dphi2 = tangential_derivative(c2);
  CsView im_f1{&c1.phi, true}, im_d2{&dphi2, true};
  t.alpha2 = scaled(bilinear(im_f1, im_d2, w), 1.0 / area);

  for (int k = 0; k < 2; ++k) {
    CsView rq{&cp[k]->q, false};
    CsView ip{&cp[k]->phi, true};
    for (size_t i = 0; i < w.size(); ++i) {
      double xs[2] = {g.points[i].x, g.points[i].y};
      double ns[2] = {g.normals[i].x, g.normals[i].y};
      for (int comp = 0; comp < 2; ++comp) {
        t.avg_j[k].coef_cos[comp] -= xs[comp] * rq.c(i) * w[i] / area;
        t.avg_j[k].coef_sin[comp] -= xs[comp] * rq.s(i) * w[i] / area;
        t.avg_e[k].coef_cos[comp] -= ns[comp] * ip.c(i) * w[i] / area;
        t.avg_e[k].coef_sin[comp] -= ns[comp] * ip.s(i) * w[i] / area;
      }
    }
  }
  return t;
}

MeasurementSet evaluate_measurements(const MomentTable& t, double theta1, double theta2) {
  MeasurementSet ms;
  ms.theta1 = theta1;
  ms.theta2 = theta2;
  double c[2] = {std::cos(theta1), std::cos(theta2)};
  double s[2] = {std::sin(theta1), std::sin(theta2)};
  double a[2][2], sv[2][2];
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      a[j][k] = t.a[j][k].eval(c[j], s[j], c[k], s[k]);
      sv[j][k] = t.s[j][k].eval(c[j], s[j], c[k], s[k]);
    }
  ms.A0 = {a[0][0], a[0][1], a[1][0], a[1][1]};
  ms.S = {sv[0][0], sv[0][1], sv[1][0], sv[1][1]};
  ms.alpha1 = t.alpha1.eval(c[0], s[0], c[1], s[1]);
  ms.alpha2 = t.alpha2.eval(c[0], s[0], c[1], s[1]);
  for (int k = 0; k < 2; ++k) {
    ms.avg_j[k] = t.avg_j[k].eval(c[k], s[k]);
    ms.avg_e[k] = t.avg_e[k].eval(c[k], s[k]);
  }
  return ms;
}

MeasurementSet measure_direct(const CauchyPair& c1, const CauchyPair& c2,
                              double theta1, double theta2) {
  const BoundaryGrid& g = *c1.grid;
  const double area = g.domain_area;
  const CauchyPair* cp[2] = {&c1, &c2};
  const cd rot[2] = {std::polar(1.0, theta1), std::polar(1.0, theta2)};

  MeasurementSet ms;
  ms.theta1 = theta1;
  ms.theta2 = theta2;
  double a[2][2] = {{0, 0}, {0, 0}}, sv[2][2] = {{0, 0}, {0, 0}};
  std::vector<cd> psi2 = stream_potential(c2);
  std::vector<cd> dphi2 = tangential_derivative(c2);

  for (size_t i = 0; i < g.size(); ++i) {
    cd qr[2] = {cp[0]->q[i] * rot[0], cp[1]->q[i] * rot[1]};
    cd fr[2] = {cp[0]->phi[i] * rot[0], cp[1]->phi[i] * rot[1]};
    double wi = g.weights[i];
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        a[j][k] += (qr[j].real() * fr[k].real() + qr[k].imag() * fr[j].imag()) * wi;
        sv[j][k] += (qr[j].real() * fr[k].imag() + qr[k].real() * fr[j].imag()) * wi;
      }
    ms.alpha1 -= qr[0].real() * (psi2[i] * rot[1]).real() * wi;
    ms.alpha2 += fr[0].imag() * (dphi2[i] * rot[1]).imag() * wi;
    double xs[2] = {g.points[i].x, g.points[i].y};
    double ns[2] = {g.normals[i].x, g.normals[i].y};
    for (int k = 0; k < 2; ++k) {
      ms.avg_j[k].x -= xs[0] * qr[k].real() * wi / area;
      ms.avg_j[k].y -= xs[1] * qr[k].real() * wi / area;
      ms.avg_e[k].x -= ns[0] * fr[k].imag() * wi / area;
      ms.avg_e[k].y -= ns[1] * fr[k].imag() * wi / area;
    }
  }
  ms.A0 = {a[0][0] / area, a[0][1] / area, a[1][0] / area, a[1][1] / area};
  ms.S = {sv[0][0] / area, sv[0][1] / area, sv[1][0] / area, sv[1][1] / area};
  ms.alpha1 /= area;
  ms.alpha2 /= area;
  return ms;
}

BoundInputs assemble_bound_inputs(const MeasurementSet& ms, const TranslationParams& tp) {
  BoundInputs out;
  out.Atilde = ms.A0 + ms.S * tp.t3;
  out.b = tp.t1 * ms.alpha1 + tp.t2 * ms.alpha2;

  // 4x4 layout: columns are (excitation, component) in the order
  // (1,1), (2,1), (1,2), (2,2); rows pair the projected field averages with
  // their quarter-turn copies.
  const Vec2 u = ms.avg_j[0], v = ms.avg_j[1];
  const Vec2 w = ms.avg_e[0], z = ms.avg_e[1];
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::Matrix4d C;
  C << u.x, v.x, u.y, v.y,
       w.x, z.x, w.y, z.y,
      -u.y, -v.y, u.x, v.x,
      -w.y, -z.y, w.x, z.x;
  C *= inv_sqrt2;
  Eigen::Matrix2d P;
  P << tp.p.x * tp.p.x, tp.p.x * tp.p.y, tp.p.x * tp.p.y, tp.p.y * tp.p.y;
  Eigen::Matrix4d BP = Eigen::Matrix4d::Zero();
  BP.block<2, 2>(0, 0) = P;
  BP.block<2, 2>(2, 2) = P;
  Eigen::Matrix4d G = C.transpose() * BP * C;

  out.M = {G(0, 0), G(0, 1), G(1, 0), G(1, 1)};
  out.m = G(0, 3);

  double scale = G.cwiseAbs().maxCoeff() + 1e-300;
  auto near = [&](double x, double y) { return std::abs(x - y) <= 1e-10 * scale; };
  bool ok = near(G(2, 2), G(0, 0)) && near(G(3, 3), G(1, 1)) && near(G(2, 3), G(0, 1)) &&
            near(G(0, 2), 0.0) && near(G(1, 3), 0.0) && near(G(1, 2), -out.m) &&
            near(G(2, 1), -out.m) && near(G(3, 0), out.m) && near(G(0, 1), G(1, 0));
  double detM = out.M.det();
  ok = ok && std::abs(out.m * out.m - detM) <= 1e-8 * (1.0 + std::abs(detM));
  if (!ok) throw std::logic_error("assemble_bound_inputs: block structure violated");
  return out;
}

}  // namespace volfrac
