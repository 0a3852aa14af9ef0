#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "stokesnet/biharmonic.hpp"
#include "stokesnet/errors.hpp"
#include "stokesnet/scattering.hpp"
#include "support/fixtures.hpp"

using namespace stokesnet;
using namespace stokesnet::testing;

namespace {

// One shared Y-junction scattering computation (reused across cases).
struct YScatter {
  ComponentGeometry geom;
  ScatteringMatrix sm;
  ComponentBasis basis;
  SolverConfig cfg;
  YScatter() : geom(build_component(y_symmetric_spec())) {
    auto [m, b] = compute_scattering_matrix(geom, cfg);
    sm = std::move(m);
    basis = std::move(b);
  }
};

const YScatter& y_scatter() {
  static YScatter y;
  return y;
}

}  // namespace

TEST_SUITE_BEGIN("scattering");

TEST_CASE("straight channel matches the analytic Poiseuille resistance") {
  ComponentGeometry g = build_component(straight_spec(1.0, 10.0));
  SolverConfig cfg;
  auto [sm, basis] = compute_scattering_matrix(g, cfg);
  REQUIRE(sm.S.rows() == 1);
  const double L = 0.5, ell = 10.0;
  const double exact = -3.0 * cfg.mu * ell / (2.0 * L * L * L);
  CHECK(std::abs(sm.S(0, 0) - exact) < 1e-8 * std::abs(exact));
  CHECK(sm.S(0, 0) < 0.0);
}

TEST_CASE("basis data has zero net flux by construction") {
  const ComponentGeometry& g = y_scatter().geom;
  for (int j = 1; j < 3; ++j) {
    const BoundaryData d = basis_boundary_data(g, j);
    CHECK(std::abs(boundary_net_flux(g, d)) < 1e-13);
  }
  // target port is the only difference between the two basis data sets
  const BoundaryData d1 = basis_boundary_data(g, 1);
  const BoundaryData d2 = basis_boundary_data(g, 2);
  for (int i = 0; i < g.node_count(); ++i) {
    const int pid = g.cap_port_of[i];
    if (pid == 0 || pid < 0)
      CHECK(std::abs(d1.h[i] - d2.h[i]) == 0.0);
  }
}

TEST_CASE("Y junction: symmetry, reciprocity, definiteness, basis fluxes") {
  const YScatter& y = y_scatter();
  const Eigen::MatrixXd& S = y.sm.S;
  REQUIRE(S.rows() == 2);

  // mirror symmetry of the geometry
  CHECK(std::abs(S(0, 0) - S(1, 1)) < 1e-8 * std::abs(S(0, 0)));
  // reciprocity
  CHECK((S - S.transpose()).norm() < 1e-8 * S.norm());
  // negative definite
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (S + S.transpose()));
  CHECK(es.eigenvalues().maxCoeff() < 0.0);
  // dissipation for random outflow vectors
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd F(2);
    F << uni(rng), uni(rng);
    if (F.norm() < 1e-3) continue;
    CHECK(F.dot(S * F) < 0.0);
  }

  // solved basis flows reproduce their imposed unit fluxes
  for (int j = 1; j < 3; ++j) {
    const SLDensity& den = y.basis.densities[j - 1];
    for (int p = 0; p < 3; ++p) {
      const double expect = (p == 0) ? -1.0 : (p == j ? 1.0 : 0.0);
      CHECK(std::abs(port_flux(y.geom, den, y.geom.ports[p], y.cfg) -
                     expect) < 1e-10);
    }
  }
}

TEST_CASE("scattering matrix is invariant under rigid motion") {
  const YScatter& y = y_scatter();
  const Placement pl{1.1, Complex(-3.0, 2.0)};
  ComponentGeometry gp = apply_placement(y.geom, pl);
  auto [smp, basisp] = compute_scattering_matrix(gp, y.cfg);
  CHECK((smp.S - y.sm.S).lpNorm<Eigen::Infinity>() <
        1e-10 * y.sm.S.lpNorm<Eigen::Infinity>() * 10.0);
}

TEST_CASE("viscosity linearity and dilation law") {
  const YScatter& y = y_scatter();

  SUBCASE("S scales linearly in mu") {
    SolverConfig cfg2 = y.cfg;
    cfg2.mu = 2.0;
    auto [sm2, basis2] = compute_scattering_matrix(y.geom, cfg2);
    CHECK((sm2.S - 2.0 * y.sm.S).norm() < 1e-10 * sm2.S.norm());
  }

  SUBCASE("uniform dilation by s scales S by 1/s^2") {
    const double s = 1.7;
    ComponentGeometry gs =
        build_component(y_symmetric_spec(1.0 * s, 6.0 * s));
    auto [sms, basiss] = compute_scattering_matrix(gs, y.cfg);
    CHECK((sms.S - y.sm.S / (s * s)).norm() < 1e-8 * sms.S.norm());
  }
}

TEST_CASE("port pressures: differences are constant-free and analytic") {
  ComponentGeometry g = build_component(straight_spec(1.0, 10.0));
  SolverConfig cfg;
  SLDensity den = solve_bvp(g, basis_boundary_data(g, 1), cfg);
  const double p_out = port_pressure(g, den, g.ports[1], cfg.mu, cfg);
  const double p_in = port_pressure(g, den, g.ports[0], cfg.mu, cfg);
  // unit flux enters port 0 and exits port 1 across separation 10
  const double exact = -3.0 * cfg.mu * 10.0 / (2.0 * 0.125);
  CHECK(std::abs((p_out - p_in) - exact) < 1e-9 * std::abs(exact));

  // averaging a few transverse samples changes nothing measurable
  const Port& p = g.ports[1];
  double avg = 0.0;
  for (int k = -2; k <= 2; ++k) {
    const Complex z = p.center + 0.12 * k * Complex(0, 1) * p.axis;
    avg += eval_field(g, den, z, cfg.mu, cfg).pressure;
  }
  avg /= 5.0;
  CHECK(std::abs(avg - p_out) < 2e-8 * std::abs(exact));
}

TEST_CASE("local fields superpose") {
  const YScatter& y = y_scatter();
  const Complex probe(-2.0, 0.0);

  SUBCASE("unit coefficient reproduces the basis flow") {
    Eigen::VectorXd e1(2);
    e1 << 1.0, 0.0;
    const FieldSample f = local_field(y.geom, y.basis, e1, probe, 1.0, y.cfg);
    const FieldSample fb =
        eval_field(y.geom, y.basis.densities[0], probe, 1.0, y.cfg);
    CHECK(std::abs(f.velocity - fb.velocity) < 1e-14);
  }

  SUBCASE("zero coefficients give the zero field") {
    Eigen::VectorXd z0 = Eigen::VectorXd::Zero(2);
    const FieldSample f = local_field(y.geom, y.basis, z0, probe, 1.0, y.cfg);
    CHECK(std::abs(f.velocity) == 0.0);
  }

  SUBCASE("alpha = (1,1) doubles the inflow") {
    Eigen::VectorXd a(2);
    a << 1.0, 1.0;
    SLDensity combined;
    combined.omega.assign(y.geom.node_count(), Complex(0, 0));
    for (int i = 0; i < y.geom.node_count(); ++i)
      combined.omega[i] = y.basis.densities[0].omega[i] +
                          y.basis.densities[1].omega[i];
    CHECK(std::abs(port_flux(y.geom, combined, y.geom.ports[0], y.cfg) +
                   2.0) < 1e-10);
    CHECK(std::abs(port_flux(y.geom, combined, y.geom.ports[1], y.cfg) -
                   1.0) < 1e-10);
    CHECK(std::abs(port_flux(y.geom, combined, y.geom.ports[2], y.cfg) -
                   1.0) < 1e-10);
  }
}

TEST_SUITE_END();
