#pragma once

#include <memory>
#include <string>

#include "volfrac/cauchy.hpp"
#include "volfrac/mesh.hpp"
#include "volfrac/moments.hpp"

namespace volfrac {

struct FieldSolution {
  const Mesh* mesh = nullptr;
  PhasePair phases;
  std::vector<cd> u;                     // nodal potentials
  std::vector<std::array<cd, 2>> grad;   // constant per-triangle gradient
  std::string label;
  double residual = 0.0;                 // relative residual of the reduced solve
};

struct FemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// P1 Dirichlet solve of div(sigma grad u) = 0 with boundary values eliminated.
// Factorises the interior block once; solve() may be called per excitation.
class DirichletSolver {
 public:
  DirichletSolver(const Mesh& mesh, const PhasePair& phases);
  ~DirichletSolver();
  DirichletSolver(DirichletSolver&&) noexcept;

  // phi: one complex value per boundary-loop node, in loop order.
  FieldSolution solve(const std::vector<cd>& phi, const std::string& label) const;

  const Mesh& mesh() const { return *mesh_; }

 private:
  struct Impl;
  const Mesh* mesh_;
  std::unique_ptr<Impl> impl_;
};

FieldSolution solve_dirichlet(const Mesh& m, const PhasePair& p, const std::vector<cd>& phi);

// Consistent boundary flux: the stiffness residual tested against boundary hat
// functions, divided by the lumped arc weights. One value per boundary node.
std::vector<cd> recover_neumann(const FieldSolution& sol);

BoundaryGrid boundary_grid(const Mesh& m);

// Volume-quadrature counterparts of the boundary functionals, for
// null-Lagrangian cross-checks.
struct VolumeFunctionals {
  double a[2][2] = {{0, 0}, {0, 0}};
  double s[2][2] = {{0, 0}, {0, 0}};
  double alpha1 = 0.0, alpha2 = 0.0;
  Vec2 avg_j[2];
  Vec2 avg_e[2];
};

VolumeFunctionals volume_functionals(const FieldSolution& s1, const FieldSolution& s2,
                                     double theta1, double theta2, const PhasePair& p);

// Full forward pipeline for phi1 = x, phi2 = y: solve, recover fluxes, and
// package Cauchy pairs on the mesh boundary grid.
std::pair<CauchyPair, CauchyPair> fem_cauchy_xy(const Mesh& m, const PhasePair& p);

}  // namespace volfrac
