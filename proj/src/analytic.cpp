#include "volfrac/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace volfrac {

std::pair<cd, cd> layered_outer_coefficients(const LayeredDiskSpec& spec) {
  const auto& R = spec.radii;
  const auto& sig = spec.layer_sigma;
  if (R.size() < 1 || R.size() != sig.size())
    throw std::runtime_error("layered disk: radii/sigma size mismatch");
  for (size_t i = 1; i < R.size(); ++i)
    if (!(R[i] > R[i - 1])) throw std::runtime_error("layered disk: radii must be ascending");
  for (cd s : sig)
    if (!(s.real() > 0.0)) throw std::runtime_error("layered disk: Re(sigma) must be positive");

  cd A(1.0, 0.0), B(0.0, 0.0);  // B_1 = 0: regular at the origin
  for (size_t k = 0; k + 1 < R.size(); ++k) {
    double r2 = R[k] * R[k];
    cd up = A + B / r2;
    cd un = A - B / r2;
    cd ratio = sig[k] / sig[k + 1];
    cd A2 = 0.5 * (up + ratio * un);
    cd B2 = 0.5 * r2 * (up - ratio * un);
    A = A2;
    B = B2;
  }
  double RN = R.back();
  cd scale = RN / (A * RN + B / RN);
  return {A * scale, B * scale};
}

cd layered_flux_coefficient(const LayeredDiskSpec& spec) {
  auto [A, B] = layered_outer_coefficients(spec);
  double RN = spec.radii.back();
  return spec.layer_sigma.back() * (A - B / (RN * RN));
}

CauchyPair layered_cauchy(const LayeredDiskSpec& spec, int n_samples) {
  if (n_samples < 16) throw std::runtime_error("layered_cauchy: need at least 16 samples");
  const double R = spec.radii.back();
  const Vec2 c = spec.dirichlet_coeff;
  const cd lam = layered_flux_coefficient(spec);

  std::vector<Vec2> pts(n_samples);
  BoundaryGrid g;
  g.points.resize(n_samples);
  g.normals.resize(n_samples);
  g.tangents.resize(n_samples);
  g.weights.assign(n_samples, 2.0 * kPi * R / n_samples);
  g.domain_area = kPi * R * R;

  CauchyPair out;
  out.phi.resize(n_samples);
  out.q.resize(n_samples);
  std::vector<cd> psi(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    double om = 2.0 * kPi * i / n_samples;
    double co = std::cos(om), so = std::sin(om);
    g.points[i] = {R * co, R * so};
    g.normals[i] = {co, so};
    g.tangents[i] = {-so, co};
    double gval = c.x * co + c.y * so;  // angular factor of phi and q
    out.phi[i] = cd(R * gval, 0.0);
    out.q[i] = lam * gval;
    // psi(om) = int_0^om q R dom' = lam R (c.x sin om - c.y (cos om - 1))
    psi[i] = lam * R * (c.x * so - c.y * (co - 1.0));
  }
  out.grid = std::make_shared<BoundaryGrid>(std::move(g));
  out.dirichlet_coeff = c;
  out.stream_exact = std::move(psi);
  return out;
}

std::pair<CauchyPair, CauchyPair> layered_cauchy_xy(const std::vector<double>& radii,
                                                    const std::vector<cd>& sigma,
                                                    int n_samples) {
  LayeredDiskSpec s1{radii, sigma, {1.0, 0.0}};
  LayeredDiskSpec s2{radii, sigma, {0.0, 1.0}};
  CauchyPair c1 = layered_cauchy(s1, n_samples);
  CauchyPair c2 = layered_cauchy(s2, n_samples);
  c2.grid = c1.grid;  // share one grid
  c1.label = "phi=x";
  c2.label = "phi=y";
  return {std::move(c1), std::move(c2)};
}

}  // namespace volfrac
