#pragma once

#include <vector>

#include "stokesnet/geometry.hpp"
#include "stokesnet/gmres.hpp"
#include "stokesnet/simd.hpp"

namespace stokesnet {

/// Velocity Dirichlet data, one complex value h = h1 + i h2 per boundary
/// node, with u = h2 and v = -h1 (equivalently h = i (u + i v)).
struct BoundaryData {
  std::vector<Complex> h;
};

/// Solved Sherman-Lauricella density plus the per-hole constants of the
/// multiply connected ansatz. C_k and b_k are quadratures of omega over the
/// hole contours, stored for convenience.
struct SLDensity {
  std::vector<Complex> omega;
  std::vector<Complex> hole_C;
  std::vector<double> hole_b;
  std::vector<Complex> hole_points;
};

struct SolverConfig {
  double tol = 1e-13;
  int max_iter = 600;
  double mu = 1.0;
  double near_exclusion_factor = 5.0;  // node spacings
};

struct FieldSample {
  Complex velocity;  // u + i v
  double pressure = 0.0;
  double vorticity = 0.0;
  Complex phi, dphi, psi;
};

/// Dense Nystrom discretization of the Sherman-Lauricella boundary operator
/// for one geometry: identity plus smooth kernels (with curvature diagonal
/// limits) plus the hole terms of the multiply connected ansatz.
///
/// The operator has a one-dimensional null space (the Goursat gauge
/// phi -> phi + i*gamma*z); its null density carries nonzero net flux, so it
/// lies outside the range and GMRES on compatible data converges cleanly.
/// Any null admixture in the solved density generates identically zero
/// velocity and only shifts the arbitrary pressure constant.
class SLOperator {
 public:
  explicit SLOperator(const ComponentGeometry& geom);

  int size() const { return n_; }
  const ComponentGeometry& geometry() const { return *geom_; }

  std::vector<Complex> apply(const std::vector<Complex>& omega) const;
  void hole_constants(const std::vector<Complex>& omega,
                      std::vector<Complex>& C, std::vector<double>& b) const;

 private:
  const ComponentGeometry* geom_;
  int n_ = 0;
  std::vector<double> x_, y_, ar_, ai_;  // SoA node data, a = w * z'
  std::vector<double> diag1_;            // real diagonal limit of K1
  std::vector<Complex> diag2_;           // diagonal limit of K2
  std::vector<double> ds_;               // arclength weights
  double perimeter_ = 0.0;
};

/// Boundary limit of the representation applied to a density (the operator
/// of the integral equation). For a solved density this reproduces h.
std::vector<Complex> apply_sl_operator(const SLOperator& op,
                                       const SLDensity& density);

/// Net outward flux carried by boundary data (quadrature of u.n).
double boundary_net_flux(const ComponentGeometry& geom,
                         const BoundaryData& data);

BoundaryData boundary_data_from_velocity(const ComponentGeometry& geom,
                                         const std::vector<Complex>& uv);

SLDensity solve_bvp(const ComponentGeometry& geom, const BoundaryData& data,
                    const SolverConfig& cfg, const SLOperator* prebuilt = nullptr,
                    GmresResult* stats = nullptr);

/// Throws PointOutsideDomain / PointTooCloseToBoundary as appropriate.
void check_eval_point(const ComponentGeometry& geom, Complex z, double factor);

/// Batched field evaluation at interior points. With check=false the caller
/// guarantees the points are valid (used by sampling loops that pre-filter).
std::vector<FieldSample> eval_fields(const ComponentGeometry& geom,
                                     const SLDensity& density,
                                     const std::vector<Complex>& points,
                                     double mu, const SolverConfig& cfg,
                                     bool check = true);

FieldSample eval_field(const ComponentGeometry& geom, const SLDensity& density,
                       Complex z, double mu, const SolverConfig& cfg);

/// Goursat triple (phi, phi', psi) at an interior point.
FieldSample eval_goursat(const ComponentGeometry& geom,
                         const SLDensity& density, Complex z,
                         const SolverConfig& cfg);

Complex eval_velocity(const ComponentGeometry& geom, const SLDensity& density,
                      Complex z, const SolverConfig& cfg);

/// (pressure, vorticity); the pressure carries a per-solution constant.
std::pair<double, double> eval_pressure_vorticity(
    const ComponentGeometry& geom, const SLDensity& density, Complex z,
    double mu, const SolverConfig& cfg);

/// Flux through the port chord, positive out of the component. Velocity is
/// sampled on the exclusion-safe band |y| <= 0.8 L of the chord and
/// integrated with the no-slip-constrained basis (L^2-y^2) P_k(y/L).
double port_flux(const ComponentGeometry& geom, const SLDensity& density,
                 const Port& port, const SolverConfig& cfg, int samples = 32);

}  // namespace stokesnet
