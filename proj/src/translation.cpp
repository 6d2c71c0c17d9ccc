#include "volfrac/translation.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace volfrac {

double compute_r(const PhasePair& p) {
  double s1p = p.sigma1.real(), s1pp = p.sigma1.imag();
  double s2p = p.sigma2.real(), s2pp = p.sigma2.imag();
  double denom = 2.0 * (s1p * s2pp - s2p * s1pp);
  if (denom == 0.0) throw TranslationError("sigma1/sigma2 is real; r undefined");
  return (std::norm(p.sigma1) - std::norm(p.sigma2)) / denom;
}

Mat2 d_matrix(cd sigma, double t3) {
  double sp = sigma.real(), spp = sigma.imag();
  if (!(sp > 0.0)) throw TranslationError("d_matrix: Re(sigma) must be positive");
  return Mat2::sym(1.0 / sp, spp / sp + t3, (sp * sp + spp * spp) / sp);
}

namespace {

// Shared root selection. sa is the phase whose P+ stays nondegenerate, sb the
// phase that t1, t2, t3 are built from. Of the two roots of
// 1/t1 = r sb'' +- sqrt((r^2+1)|sb|^2), keep the one with
// (1/sa' - t1) t1 (|sa|^2 - |sb|^2) >= 0; ties break toward larger det(Da+T).
TranslationParams make_params(const PhasePair& phases, BoundSide side) {
  auto verdict = validate_phases(phases);
  if (!verdict.ok) {
    std::string msg = "inadmissible conductivity pair:";
    for (auto& v : verdict.violations) msg += " " + v;
    throw TranslationError(msg);
  }
  const cd sa = side == BoundSide::lower ? phases.sigma1 : phases.sigma2;
  const cd sb = side == BoundSide::lower ? phases.sigma2 : phases.sigma1;
  const double r = compute_r(phases);  // invariant under the phase exchange

  struct Root {
    double t1, t2, t3, crit, det_keep;
  };
  std::vector<Root> admissible;
  double disc = std::sqrt((r * r + 1.0) * std::norm(sb));
  for (double sign : {1.0, -1.0}) {
    double inv_t1 = r * sb.imag() + sign * disc;
    if (inv_t1 == 0.0) continue;
    Root root;
    root.t1 = 1.0 / inv_t1;
    root.t2 = -std::norm(sb) * root.t1;
    root.t3 = r * sb.real() * root.t1;
    root.crit = (1.0 / sa.real() - root.t1) * root.t1 * (std::norm(sa) - std::norm(sb));
    Mat2 T = Mat2::sym(root.t1, 0.0, root.t2);
    root.det_keep = (d_matrix(sa, root.t3) + T).det();
    if (root.crit >= 0.0) admissible.push_back(root);
  }
  if (admissible.empty())
    throw TranslationError("no admissible translation root; precondition violated");
  const Root& best = admissible.size() == 1
                         ? admissible[0]
                         : (admissible[0].det_keep >= admissible[1].det_keep ? admissible[0]
                                                                             : admissible[1]);

  TranslationParams tp;
  tp.side = side;
  tp.r = r;
  tp.t1 = best.t1;
  tp.t2 = best.t2;
  tp.t3 = best.t3;
  tp.D1 = d_matrix(phases.sigma1, tp.t3);
  tp.D2 = d_matrix(phases.sigma2, tp.t3);
  Mat2 T = Mat2::sym(tp.t1, 0.0, tp.t2);
  tp.P1p = tp.D1 + T;
  tp.P1m = tp.D1 - T;
  tp.P2p = tp.D2 + T;
  tp.P2m = tp.D2 - T;
  const Mat2& rank1 = side == BoundSide::lower ? tp.P2p : tp.P1p;
  tp.p = rank1.sym_major_eigenvector();
  tp.coef_trP = side == BoundSide::lower ? tp.P2p.trace() : tp.P1p.trace();
  tp.coef_detP = side == BoundSide::lower ? tp.P1p.det() : tp.P2p.det();
  tp.coef_detDiff = (tp.P1p - tp.P2p).det();
  return tp;
}

}  // namespace

TranslationParams lower_params(const PhasePair& p) { return make_params(p, BoundSide::lower); }
TranslationParams upper_params(const PhasePair& p) { return make_params(p, BoundSide::upper); }

namespace {

Eigen::MatrixXd range_projector(const Eigen::MatrixXd& L, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  double scale = std::max(1.0, std::abs(vals.maxCoeff()));
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(L.rows(), L.cols());
  for (int i = 0; i < vals.size(); ++i) {
    if (vals[i] < -1e-12 * scale)
      throw TranslationError("constrained_quadratic_min: matrix is not PSD");
    if (vals[i] > tol * scale) P += vecs.col(i) * vecs.col(i).transpose();
  }
  return P;
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& L, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(L.rows(), L.cols());
  for (int i = 0; i < vals.size(); ++i)
    if (std::abs(vals[i]) > tol * scale)
      out += vecs.col(i) * vecs.col(i).transpose() / vals[i];
  return out;
}

}  // namespace

double constrained_quadratic_min(const Eigen::MatrixXd& L1, const Eigen::MatrixXd& L2,
                                 double f1, double f2, const Eigen::VectorXd& E0) {
  if (L1.rows() != L1.cols() || L2.rows() != L2.cols() || L1.rows() != L2.rows())
    throw TranslationError("constrained_quadratic_min: dimension mismatch");
  if (!L1.isApprox(L1.transpose(), 1e-10) || !L2.isApprox(L2.transpose(), 1e-10))
    throw TranslationError("constrained_quadratic_min: inputs must be symmetric");
  if (!(f1 > 0.0) || !(f2 > 0.0))
    throw TranslationError("constrained_quadratic_min: fractions must be positive");

  const double tol = 1e-10;
  Eigen::MatrixXd R1 = range_projector(L1, tol);
  Eigen::MatrixXd R2 = range_projector(L2, tol);

  // range(L1) ^ range(L2): eigenvectors of R1 + R2 with eigenvalue 2
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R1 + R2);
  Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(L1.rows(), L1.cols());
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] > 2.0 - 1e-8)
      pi += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();

  Eigen::VectorXd piE0 = pi * E0;
  if (piE0.norm() == 0.0) return 0.0;
  Eigen::MatrixXd mid = pi * (f1 * pseudo_inverse(L1, tol) + f2 * pseudo_inverse(L2, tol)) * pi;
  return piE0.dot(pseudo_inverse(mid, tol) * piE0);
}

Eigen::Matrix<double, 8, 8> coupling_basis() {
  Eigen::Matrix<double, 8, 8> J;
  J << 1, 0, 0, 0, 0, 0, 1, 0,
       0, 0, 1, 0, -1, 0, 0, 0,
       0, 1, 0, 0, 0, 0, 0, 1,
       0, 0, 0, 1, 0, -1, 0, 0,
       0, 0, 1, 0, 1, 0, 0, 0,
       1, 0, 0, 0, 0, 0, -1, 0,
       0, 0, 0, 1, 0, 1, 0, 0,
       0, 1, 0, 0, 0, 0, 0, -1;
  return J / std::sqrt(2.0);
}

Eigen::Matrix<double, 8, 8> translated_tensor(cd sigma, double t1, double t2, double t3) {
  double sp = sigma.real(), spp = sigma.imag();
  Eigen::Matrix4d D = Eigen::Matrix4d::Zero();
  D.block<2, 2>(0, 0) = Eigen::Matrix2d::Identity() / sp;
  D.block<2, 2>(0, 2) = Eigen::Matrix2d::Identity() * (spp / sp);
  D.block<2, 2>(2, 0) = Eigen::Matrix2d::Identity() * (spp / sp);
  D.block<2, 2>(2, 2) = Eigen::Matrix2d::Identity() * ((sp * sp + spp * spp) / sp);
  D(0, 2) += t3; D(1, 3) += t3; D(2, 0) += t3; D(3, 1) += t3;
  Eigen::Matrix2d Rp;
  Rp << 0, 1, -1, 0;
  Eigen::Matrix4d R = Eigen::Matrix4d::Zero();
  R.block<2, 2>(0, 0) = t1 * Rp;
  R.block<2, 2>(2, 2) = t2 * Rp;
  Eigen::Matrix<double, 8, 8> L;
  L.block<4, 4>(0, 0) = D;
  L.block<4, 4>(0, 4) = R;
  L.block<4, 4>(4, 0) = -R;
  L.block<4, 4>(4, 4) = D;
  return L;
}

}  // namespace volfrac
