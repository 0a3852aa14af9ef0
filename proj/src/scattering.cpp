#include "stokesnet/scattering.hpp"

#include <cmath>

#include "stokesnet/errors.hpp"
#include "stokesnet/poiseuille.hpp"

namespace stokesnet {

BoundaryData basis_boundary_data(const ComponentGeometry& geom,
                                 int target_port) {
  const int m = static_cast<int>(geom.ports.size());
  if (target_port < 1 || target_port >= m)
    fail(ErrorCode::DimensionMismatch, "basis target port out of range");

  BoundaryData data;
  data.h.assign(geom.node_count(), Complex(0.0, 0.0));
  for (int i = 0; i < geom.node_count(); ++i) {
    const int pid = geom.cap_port_of[i];
    if (pid < 0) continue;
    double flux_out = 0.0;
    if (pid == 0)
      flux_out = -1.0;  // unit flux into the component
    else if (pid == target_port)
      flux_out = 1.0;
    else
      continue;
    const Port& port = geom.ports[pid];
    PoiseuilleProfile prof{port.half_width, flux_out, 1.0};
    const double y =
        std::imag(std::conj(port.axis) * (geom.nodes[i].z - port.center));
    // The cap bulges past the port plane but stays inside the straight
    // channel band, so the x-independent Poiseuille field restricts cleanly.
    const Complex uv = prof.velocity(y) * port.axis;
    data.h[i] = Complex(0.0, 1.0) * uv;
  }
  return data;
}

double port_pressure(const ComponentGeometry& geom, const SLDensity& density,
                     const Port& port, double mu, const SolverConfig& cfg) {
  return eval_field(geom, density, port.center, mu, cfg).pressure;
}

std::pair<ScatteringMatrix, ComponentBasis> compute_scattering_matrix(
    const ComponentGeometry& geom, const SolverConfig& cfg) {
  const int m = static_cast<int>(geom.ports.size());
  if (m < 2)
    fail(ErrorCode::InvalidSkeleton,
         "scattering needs a component with at least two ports");

  ScatteringMatrix sm;
  sm.component = geom.name;
  sm.S.resize(m - 1, m - 1);
  sm.mu = cfg.mu;
  sm.solve_tol = cfg.tol;
  sm.geometry_hash = geom.hash();
  for (const Port& p : geom.ports) {
    sm.port_widths.push_back(2.0 * p.half_width);
    sm.port_straight_runs.push_back(p.straight_run);
  }

  ComponentBasis basis;
  basis.port_pressures.resize(m, m - 1);

  const SLOperator op(geom);
  for (int j = 1; j < m; ++j) {
    const BoundaryData data = basis_boundary_data(geom, j);
    SLDensity density = solve_bvp(geom, data, cfg, &op);
    for (int i = 0; i < m; ++i)
      basis.port_pressures(i, j - 1) =
          port_pressure(geom, density, geom.ports[i], cfg.mu, cfg);
    for (int i = 1; i < m; ++i)
      sm.S(i - 1, j - 1) =
          basis.port_pressures(i, j - 1) - basis.port_pressures(0, j - 1);
    basis.densities.push_back(std::move(density));
  }
  return {std::move(sm), std::move(basis)};
}

namespace {

SLDensity combine_densities(const ComponentBasis& basis,
                            const Eigen::VectorXd& alpha, int node_count) {
  SLDensity combined;
  combined.omega.assign(node_count, Complex(0.0, 0.0));
  if (static_cast<int>(basis.densities.size()) != alpha.size())
    fail(ErrorCode::DimensionMismatch, "outflow vector size mismatch");
  for (int j = 0; j < alpha.size(); ++j) {
    const SLDensity& d = basis.densities[j];
    for (int i = 0; i < node_count; ++i)
      combined.omega[i] += alpha[j] * d.omega[i];
  }
  return combined;
}

}  // namespace

std::vector<FieldSample> local_fields(const ComponentGeometry& geom,
                                      const ComponentBasis& basis,
                                      const Eigen::VectorXd& alpha,
                                      const std::vector<Complex>& points,
                                      double mu, const SolverConfig& cfg,
                                      bool check) {
  const SLDensity combined =
      combine_densities(basis, alpha, geom.node_count());
  return eval_fields(geom, combined, points, mu, cfg, check);
}

FieldSample local_field(const ComponentGeometry& geom,
                        const ComponentBasis& basis,
                        const Eigen::VectorXd& alpha, Complex z, double mu,
                        const SolverConfig& cfg) {
  return local_fields(geom, basis, alpha, {z}, mu, cfg).front();
}

}  // namespace stokesnet
