#include "volfrac/fem.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace volfrac {

using SpMat = Eigen::SparseMatrix<cd>;
using Triplet = Eigen::Triplet<cd>;

struct DirichletSolver::Impl {
  PhasePair phases;
  std::vector<int> interior_of;  // node -> interior index or -1
  std::vector<int> boundary_of;  // node -> boundary loop position or -1
  SpMat K;    // full stiffness
  SpMat Kii;  // interior block
  SpMat Kib;  // interior x boundary block
  Eigen::SparseLU<SpMat> lu;
};

DirichletSolver::DirichletSolver(const Mesh& mesh, const PhasePair& phases)
    : mesh_(&mesh), impl_(new Impl) {
  if (!(phases.sigma1.real() > 0.0) || !(phases.sigma2.real() > 0.0))
    throw FemError("conductivities must have positive real part");
  impl_->phases = phases;

  const int n = int(mesh.nodes.size());
  impl_->boundary_of.assign(n, -1);
  for (size_t i = 0; i < mesh.boundary_loop.size(); ++i)
    impl_->boundary_of[mesh.boundary_loop[i]] = int(i);
  impl_->interior_of.assign(n, -1);
  int ni = 0;
  for (int i = 0; i < n; ++i)
    if (impl_->boundary_of[i] < 0) impl_->interior_of[i] = ni++;

  std::vector<Triplet> full, ii, ib;
  full.reserve(mesh.tris.size() * 9);
  for (const auto& t : mesh.tris) {
    Vec2 p0 = mesh.nodes[t.v[0]], p1 = mesh.nodes[t.v[1]], p2 = mesh.nodes[t.v[2]];
    double area2 = (p1 - p0).cross(p2 - p0);
    if (area2 <= 0.0) throw FemError("clockwise or degenerate triangle in mesh");
    Vec2 g[3] = {{(p1.y - p2.y) / area2, (p2.x - p1.x) / area2},
                 {(p2.y - p0.y) / area2, (p0.x - p2.x) / area2},
                 {(p0.y - p1.y) / area2, (p1.x - p0.x) / area2}};
    cd sigma = t.tag == 1 ? phases.sigma1 : phases.sigma2;
    double area = 0.5 * area2;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        cd val = sigma * g[a].dot(g[b]) * area;
        full.emplace_back(t.v[a], t.v[b], val);
        int ia = impl_->interior_of[t.v[a]];
        if (ia >= 0) {
          int ic = impl_->interior_of[t.v[b]];
          if (ic >= 0)
            ii.emplace_back(ia, ic, val);
          else
            ib.emplace_back(ia, impl_->boundary_of[t.v[b]], val);
        }
      }
  }
  impl_->K.resize(n, n);
  impl_->K.setFromTriplets(full.begin(), full.end());
  impl_->Kii.resize(ni, ni);
  impl_->Kii.setFromTriplets(ii.begin(), ii.end());
  impl_->Kib.resize(ni, int(mesh.boundary_loop.size()));
  impl_->Kib.setFromTriplets(ib.begin(), ib.end());
  impl_->lu.compute(impl_->Kii);
  if (impl_->lu.info() != Eigen::Success)
    throw FemError("stiffness factorization failed (singular system)");
}

DirichletSolver::~DirichletSolver() = default;
DirichletSolver::DirichletSolver(DirichletSolver&&) noexcept = default;

FieldSolution DirichletSolver::solve(const std::vector<cd>& phi, const std::string& label) const {
  const Mesh& mesh = *mesh_;
  if (phi.size() != mesh.boundary_loop.size())
    throw FemError("phi must have one value per boundary node");
  Eigen::VectorXcd phib(int(phi.size()));
  for (size_t i = 0; i < phi.size(); ++i) phib[int(i)] = phi[i];
  Eigen::VectorXcd rhs = -(impl_->Kib * phib);
  Eigen::VectorXcd ui = impl_->lu.solve(rhs);

  FieldSolution sol;
  sol.mesh = &mesh;
  sol.phases = impl_->phases;
  sol.label = label;
  double rn = rhs.norm();
  sol.residual = rn > 0.0 ? (impl_->Kii * ui - rhs).norm() / rn : 0.0;
  if (sol.residual > 1e-12)
    throw FemError("interior solve residual above tolerance: " + std::to_string(sol.residual));

  sol.u.resize(mesh.nodes.size());
  for (size_t i = 0; i < mesh.nodes.size(); ++i) {
    int bi = impl_->boundary_of[i];
    sol.u[i] = bi >= 0 ? phi[bi] : ui[impl_->interior_of[i]];
  }
  sol.grad.resize(mesh.tris.size());
  for (size_t ti = 0; ti < mesh.tris.size(); ++ti) {
    const auto& t = mesh.tris[ti];
    Vec2 p0 = mesh.nodes[t.v[0]], p1 = mesh.nodes[t.v[1]], p2 = mesh.nodes[t.v[2]];
    double area2 = (p1 - p0).cross(p2 - p0);
    Vec2 g[3] = {{(p1.y - p2.y) / area2, (p2.x - p1.x) / area2},
                 {(p2.y - p0.y) / area2, (p0.x - p2.x) / area2},
                 {(p0.y - p1.y) / area2, (p1.x - p0.x) / area2}};
    cd gx(0, 0), gy(0, 0);
    for (int a = 0; a < 3; ++a) {
      gx += sol.u[t.v[a]] * g[a].x;
      gy += sol.u[t.v[a]] * g[a].y;
    }
    sol.grad[ti] = {gx, gy};
  }
  return sol;
}

FieldSolution solve_dirichlet(const Mesh& m, const PhasePair& p, const std::vector<cd>& phi) {
  return DirichletSolver(m, p).solve(phi, "");
}

BoundaryGrid boundary_grid(const Mesh& m) {
  std::vector<Vec2> pts(m.boundary_loop.size());
  for (size_t i = 0; i < m.boundary_loop.size(); ++i) pts[i] = m.nodes[m.boundary_loop[i]];
  return make_polygon_grid(std::move(pts), m.total_area());
}

std::vector<cd> recover_neumann(const FieldSolution& sol) {
  const Mesh& mesh = *sol.mesh;
  // stiffness residual against boundary hats: sum_T sigma grad u . grad hat |T|
  std::vector<cd> r(mesh.nodes.size(), cd(0, 0));
  for (size_t ti = 0; ti < mesh.tris.size(); ++ti) {
    const auto& t = mesh.tris[ti];
    Vec2 p0 = mesh.nodes[t.v[0]], p1 = mesh.nodes[t.v[1]], p2 = mesh.nodes[t.v[2]];
    double area2 = (p1 - p0).cross(p2 - p0);
    Vec2 g[3] = {{(p1.y - p2.y) / area2, (p2.x - p1.x) / area2},
                 {(p2.y - p0.y) / area2, (p0.x - p2.x) / area2},
                 {(p0.y - p1.y) / area2, (p1.x - p0.x) / area2}};
    double area = 0.5 * area2;
    cd sigma = t.tag == 1 ? sol.phases.sigma1 : sol.phases.sigma2;
    cd fx = sigma * sol.grad[ti][0], fy = sigma * sol.grad[ti][1];
    for (int a = 0; a < 3; ++a)
      r[t.v[a]] += (fx * g[a].x + fy * g[a].y) * area;
  }

  BoundaryGrid g = boundary_grid(mesh);
  std::vector<cd> q(mesh.boundary_loop.size());
  for (size_t i = 0; i < mesh.boundary_loop.size(); ++i)
    q[i] = r[mesh.boundary_loop[i]] / g.weights[i];
  return q;
}

VolumeFunctionals volume_functionals(const FieldSolution& s1, const FieldSolution& s2,
                                     double theta1, double theta2, const PhasePair& p) {
  if (s1.mesh != s2.mesh) throw FemError("volume_functionals: solutions on different meshes");
  const Mesh& mesh = *s1.mesh;
  const cd rot[2] = {std::polar(1.0, theta1), std::polar(1.0, theta2)};
  const FieldSolution* sols[2] = {&s1, &s2};
  const double total = mesh.total_area();

  VolumeFunctionals out;
  for (size_t ti = 0; ti < mesh.tris.size(); ++ti) {
    const auto& t = mesh.tris[ti];
    double w = mesh.tri_area(t) / total;
    cd sigma = t.tag == 1 ? p.sigma1 : p.sigma2;
    double sp = sigma.real(), spp = sigma.imag();

    Vec2 jr[2], ei[2];  // j~k' and e~k'' per excitation
    for (int k = 0; k < 2; ++k) {
      cd ex = -sols[k]->grad[ti][0] * rot[k];
      cd ey = -sols[k]->grad[ti][1] * rot[k];
      cd jx = sigma * ex, jy = sigma * ey;
      jr[k] = {jx.real(), jy.real()};
      ei[k] = {ex.imag(), ey.imag()};
    }
    // v . D v' with D = (1/s')[[I, s'' I],[s'' I, |s|^2 I]]
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        double quad = (jr[j].dot(jr[k]) + spp * (jr[j].dot(ei[k]) + ei[j].dot(jr[k])) +
                       (sp * sp + spp * spp) * ei[j].dot(ei[k])) / sp;
        out.a[j][k] += quad * w;
        out.s[j][k] += (jr[j].dot(ei[k]) + ei[j].dot(jr[k])) * w;
      }
    out.alpha1 += jr[0].cross(jr[1]) * w * -1.0;
    out.alpha2 += ei[0].cross(ei[1]) * w * -1.0;
    for (int k = 0; k < 2; ++k) {
      out.avg_j[k] = out.avg_j[k] + jr[k] * w;
      out.avg_e[k] = out.avg_e[k] + ei[k] * w;
    }
  }
  return out;
}

std::pair<CauchyPair, CauchyPair> fem_cauchy_xy(const Mesh& m, const PhasePair& p) {
  DirichletSolver solver(m, p);
  auto grid = std::make_shared<BoundaryGrid>(boundary_grid(m));
  std::vector<cd> phi1(m.boundary_loop.size()), phi2(m.boundary_loop.size());
  for (size_t i = 0; i < m.boundary_loop.size(); ++i) {
    Vec2 pt = m.nodes[m.boundary_loop[i]];
    phi1[i] = cd(pt.x, 0.0);
    phi2[i] = cd(pt.y, 0.0);
  }
  FieldSolution u1 = solver.solve(phi1, "phi=x");
  FieldSolution u2 = solver.solve(phi2, "phi=y");

  CauchyPair c1, c2;
  c1.grid = grid;
  c2.grid = grid;
  c1.phi = std::move(phi1);
  c2.phi = std::move(phi2);
  c1.q = recover_neumann(u1);
  c2.q = recover_neumann(u2);
  c1.label = "phi=x";
  c2.label = "phi=y";
  c1.dirichlet_coeff = Vec2{1.0, 0.0};
  c2.dirichlet_coeff = Vec2{0.0, 1.0};
  return {std::move(c1), std::move(c2)};
}

}  // namespace volfrac
