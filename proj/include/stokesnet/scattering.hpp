#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "stokesnet/biharmonic.hpp"
#include "stokesnet/geometry.hpp"

namespace stokesnet {

/// (m-1) x (m-1) map from outlet fluxes (ports 1..m-1, positive out of the
/// component) to pressure drops relative to port 0: entry (j-1, k-1) is
/// p_j - p_0 per unit flux exiting port k (entering at port 0). Symmetric
/// (reciprocity) and negative definite (dissipation).
struct ScatteringMatrix {
  std::string component;
  Eigen::MatrixXd S;
  double mu = 1.0;
  double solve_tol = 1e-13;
  std::uint64_t geometry_hash = 0;
  std::vector<double> port_widths;
  std::vector<double> port_straight_runs;

  int port_count() const { return static_cast<int>(S.rows()) + 1; }
};

/// Solved basis flows: density j-1 carries unit flux in at port 0 and out at
/// port j. port_pressures(i, j-1) is the port-plane centerline pressure at
/// port i for basis flow j.
struct ComponentBasis {
  std::vector<SLDensity> densities;
  Eigen::MatrixXd port_pressures;  // m x (m-1)
};

/// Dirichlet data of basis problem `target_port` (1-based within 0..m-1):
/// Poiseuille inflow of unit flux on the cap of port 0, unit outflow on the
/// cap of the target port, no slip elsewhere.
BoundaryData basis_boundary_data(const ComponentGeometry& geom,
                                 int target_port);

/// Pressure at the port-plane centerline point.
double port_pressure(const ComponentGeometry& geom, const SLDensity& density,
                     const Port& port, double mu, const SolverConfig& cfg);

std::pair<ScatteringMatrix, ComponentBasis> compute_scattering_matrix(
    const ComponentGeometry& geom, const SolverConfig& cfg);

/// Superposition of basis flows with outflow coefficients alpha (size m-1):
/// the local field for a component whose port fluxes are
/// F_0 = -sum(alpha), F_j = alpha_j. Pressure carries the combined basis
/// constant; networks fix it during assembly.
FieldSample local_field(const ComponentGeometry& geom,
                        const ComponentBasis& basis,
                        const Eigen::VectorXd& alpha, Complex z, double mu,
                        const SolverConfig& cfg);

std::vector<FieldSample> local_fields(const ComponentGeometry& geom,
                                      const ComponentBasis& basis,
                                      const Eigen::VectorXd& alpha,
                                      const std::vector<Complex>& points,
                                      double mu, const SolverConfig& cfg,
                                      bool check = true);

}  // namespace stokesnet
