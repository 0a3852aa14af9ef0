#pragma once

// Shared component fixtures and independent oracles for the test suites.

#include <Eigen/Dense>
#include <cmath>

#include "stokesnet/geometry.hpp"
#include "stokesnet/network.hpp"

namespace stokesnet::testing {

/// Analytic closed curve z(t) = c + a cos(2 pi t) + i b sin(2 pi t),
/// counterclockwise for positive radii, clockwise when `cw` is set.
class EllipseCurve : public Curve {
 public:
  EllipseCurve(Complex center, double a, double b, int panels, bool cw = false)
      : c_(center), a_(a), b_(b), panels_(panels), sign_(cw ? -1.0 : 1.0) {}
  void eval(double t, Complex& z, Complex& dz, Complex& ddz) const override {
    const double w = 2.0 * M_PI * sign_;
    z = c_ + Complex(a_ * std::cos(w * t), b_ * std::sin(w * t));
    dz = Complex(-a_ * w * std::sin(w * t), b_ * w * std::cos(w * t));
    ddz = Complex(-a_ * w * w * std::cos(w * t), -b_ * w * w * std::sin(w * t));
  }
  std::vector<double> panel_breaks(double, int refine) const override {
    const int n = panels_ * refine;
    std::vector<double> t(n + 1);
    for (int k = 0; k <= n; ++k) t[k] = double(k) / n;
    return t;
  }

 private:
  Complex c_;
  double a_, b_;
  int panels_;
  double sign_;
};

inline ComponentGeometry ellipse_geometry(double a, double b, int panels,
                                          int refine = 1) {
  CurveChain chain;
  chain.push_back({std::make_shared<EllipseCurve>(Complex(0, 0), a, b, panels),
                   PieceKind::Wall, -1});
  return geometry_from_chains({chain}, {}, {}, 1.0, 4, refine, "ellipse");
}

/// Annulus-like multiply connected test domain (outer CCW, hole CW).
inline ComponentGeometry annulus_geometry(double R, double r, int panels,
                                          int refine = 1) {
  CurveChain outer, inner;
  outer.push_back({std::make_shared<EllipseCurve>(Complex(0, 0), R, R, panels),
                   PieceKind::Wall, -1});
  inner.push_back(
      {std::make_shared<EllipseCurve>(Complex(0, 0), r, r,
                                      std::max(8, panels / 2), true),
       PieceKind::Wall, -1});
  return geometry_from_chains({outer, inner}, {}, {Complex(0.0, 0.0)}, 1.0, 4,
                              refine, "annulus");
}

/// Exact exterior Goursat pair for manufactured-solution checks:
/// phi = 1/(z - z0), psi = 1/(z - z0)^2 with z0 outside the fluid.
struct ManufacturedPair {
  Complex z0;
  Complex phi(Complex z) const { return 1.0 / (z - z0); }
  Complex dphi(Complex z) const { return -1.0 / ((z - z0) * (z - z0)); }
  Complex psi(Complex z) const { return 1.0 / ((z - z0) * (z - z0)); }
  Complex h(Complex z) const {
    return phi(z) + z * std::conj(dphi(z)) + std::conj(psi(z));
  }
  Complex velocity(Complex z) const { return Complex(0, -1) * h(z); }
  double pressure(Complex z, double mu) const {
    return -4.0 * mu * dphi(z).imag();
  }
  double vorticity(Complex z) const { return 4.0 * dphi(z).real(); }
};

/// Manufactured pair with the multiply connected log/rational structure of
/// a single hole at z_h (plus a regular part), single-valued velocity.
struct ManufacturedHolePair {
  Complex z_h;
  Complex C;
  double b = 0.0;
  Complex z_reg;  // far singularity for the regular part

  Complex phi(Complex z) const { return C * std::log(z - z_h) + 1.0 / (z - z_reg); }
  Complex dphi(Complex z) const {
    return C / (z - z_h) - 1.0 / ((z - z_reg) * (z - z_reg));
  }
  Complex psi(Complex z) const {
    return std::conj(C) * std::log(z - z_h) + b / (z - z_h) -
           C * std::conj(z_h) / (z - z_h) + 2.0 / (z - z_reg);
  }
  Complex h(Complex z) const {
    return phi(z) + z * std::conj(dphi(z)) + std::conj(psi(z));
  }
  Complex velocity(Complex z) const { return Complex(0, -1) * h(z); }
  double pressure(Complex z, double mu) const {
    return -4.0 * mu * dphi(z).imag();
  }
};

inline SkeletonSpec straight_spec(double width = 1.0, double length = 10.0,
                                  CapStyle cap = CapStyle::Smooth,
                                  int ppw = 4) {
  SkeletonSpec s;
  s.name = "straight";
  s.width = width;
  s.panels_per_width = ppw;
  s.vertices = {Complex(0.0, 0.0)};
  s.arms.push_back({0, Complex(1.0, 0.0), 0.5 * length, true, cap});
  s.arms.push_back({0, Complex(-1.0, 0.0), 0.5 * length, true, cap});
  return s;
}

/// Straight channel with a closed far end (the return-to-Poiseuille duct):
/// port 0 is the left inlet at x = 0, the wall cap sits at x = length.
inline SkeletonSpec closed_channel_spec(double width, double length,
                                        int ppw = 4) {
  SkeletonSpec s;
  s.name = "rtp_channel";
  s.width = width;
  s.panels_per_width = ppw;
  s.vertices = {Complex(0.5 * length, 0.0)};
  s.arms.push_back({0, Complex(-1.0, 0.0), 0.5 * length, true});
  s.arms.push_back({0, Complex(1.0, 0.0), 0.5 * length, false});
  s.min_straight_run = std::min(4.0 * width, 0.4 * length);
  return s;
}

/// Symmetric star Y-junction: inlet west, branches at +-60 degrees.
inline SkeletonSpec y_symmetric_spec(double width = 1.0, double arm = 6.0,
                                     int ppw = 4) {
  SkeletonSpec s;
  s.name = "y_symmetric";
  s.width = width;
  s.panels_per_width = ppw;
  s.vertices = {Complex(0.0, 0.0)};
  const double th = M_PI / 3.0;
  s.arms.push_back({0, Complex(-1.0, 0.0), arm, true});
  s.arms.push_back({0, Complex(std::cos(th), std::sin(th)), arm, true});
  s.arms.push_back({0, Complex(std::cos(th), -std::sin(th)), arm, true});
  return s;
}

/// 4-port cross, ports E, N, W, S in declaration order.
inline SkeletonSpec cross_spec(double width = 1.0, double arm = 5.5,
                               int ppw = 4) {
  SkeletonSpec s;
  s.name = "cross";
  s.width = width;
  s.panels_per_width = ppw;
  s.vertices = {Complex(0.0, 0.0)};
  s.arms.push_back({0, Complex(1.0, 0.0), arm, true});
  s.arms.push_back({0, Complex(0.0, 1.0), arm, true});
  s.arms.push_back({0, Complex(-1.0, 0.0), arm, true});
  s.arms.push_back({0, Complex(0.0, -1.0), arm, true});
  return s;
}

inline SkeletonSpec elbow_spec(double width = 1.0, double arm = 5.5,
                               int ppw = 4) {
  SkeletonSpec s;
  s.name = "elbow";
  s.width = width;
  s.panels_per_width = ppw;
  s.vertices = {Complex(0.0, 0.0)};
  s.arms.push_back({0, Complex(1.0, 0.0), arm, true});
  s.arms.push_back({0, Complex(0.0, 1.0), arm, true});
  return s;
}

/// Y with bent branches: inlet west at the fork, both branch ports facing
/// east at heights +-branch_dy, so two of them close a loop against the
/// west-facing twin. `stem` is the fork-to-branch-vertex distance.
inline SkeletonSpec ybent_east_spec(double width = 1.0, double stem = 2.5,
                                    double branch_dy = 1.5, double arm = 5.5,
                                    int ppw = 4,
                                    const char* name = "ybent_e") {
  SkeletonSpec s;
  s.name = name;
  s.width = width;
  s.panels_per_width = ppw;
  const double ex = std::sqrt(stem * stem - branch_dy * branch_dy);
  s.vertices = {Complex(0.0, 0.0), Complex(ex, branch_dy),
                Complex(ex, -branch_dy)};
  s.edges = {{0, 1}, {0, 2}};
  s.arms.push_back({0, Complex(-1.0, 0.0), arm, true});   // port 0: inlet W
  s.arms.push_back({1, Complex(1.0, 0.0), arm, true});    // port 1: upper E
  s.arms.push_back({2, Complex(1.0, 0.0), arm, true});    // port 2: lower E
  return s;
}

/// Authored mirror of ybent_east (reflections are not placements).
inline SkeletonSpec ybent_west_spec(double width = 1.0, double stem = 2.5,
                                    double branch_dy = 1.5, double arm = 5.5,
                                    int ppw = 4,
                                    const char* name = "ybent_w") {
  SkeletonSpec s;
  s.name = name;
  s.width = width;
  s.panels_per_width = ppw;
  const double ex = std::sqrt(stem * stem - branch_dy * branch_dy);
  s.vertices = {Complex(0.0, 0.0), Complex(-ex, branch_dy),
                Complex(-ex, -branch_dy)};
  s.edges = {{0, 1}, {0, 2}};
  s.arms.push_back({0, Complex(1.0, 0.0), arm, true});    // port 0: outlet E
  s.arms.push_back({1, Complex(-1.0, 0.0), arm, true});   // port 1: upper W
  s.arms.push_back({2, Complex(-1.0, 0.0), arm, true});   // port 2: lower W
  return s;
}

/// Two-Y loop: east-facing Y joined to a west-facing Y at both branches.
inline NetworkSpec two_y_loop_spec(const ComponentGeometry& ye,
                                   const ComponentGeometry& yw,
                                   double flux = 1.0) {
  NetworkSpec net;
  net.name = "two_y_loop";
  const Complex c = ye.ports[1].center - yw.ports[1].center;
  net.instances.push_back({ye.name, Placement{}});
  net.instances.push_back({yw.name, Placement{0.0, c}});
  net.interfaces.push_back({0, 1, 1, 1});
  net.interfaces.push_back({0, 2, 1, 2});
  net.externals.push_back({0, 0, -flux});
  net.externals.push_back({1, 0, flux});
  return net;
}

/// Three-Y tree: root feeds two downstream Y's (four outlets).
inline NetworkSpec three_y_tree_spec(const ComponentGeometry& ye,
                                     double f1, double f2, double f3,
                                     double f4) {
  NetworkSpec net;
  net.name = "three_y_tree";
  const Complex c1 = ye.ports[1].center - ye.ports[0].center;
  const Complex c2 = ye.ports[2].center - ye.ports[0].center;
  net.instances.push_back({ye.name, Placement{}});
  net.instances.push_back({ye.name, Placement{0.0, c1}});
  net.instances.push_back({ye.name, Placement{0.0, c2}});
  net.interfaces.push_back({0, 1, 1, 0});
  net.interfaces.push_back({0, 2, 2, 0});
  net.externals.push_back({0, 0, -(f1 + f2 + f3 + f4)});
  net.externals.push_back({1, 1, f1});
  net.externals.push_back({1, 2, f2});
  net.externals.push_back({2, 1, f3});
  net.externals.push_back({2, 2, f4});
  return net;
}

/// Hydraulic-resistor scattering matrix for a star component whose arm j has
/// resistance R_j (pressure drop R F along the arm): S = -(R_0 11^T + diag(R_j)).
/// Symmetric and negative definite; exact small-network solutions follow by
/// hand, which makes these ideal synthetic library entries.
inline ScatteringMatrix resistor_matrix(const std::string& name,
                                        const std::vector<double>& R,
                                        double width = 1.0) {
  const int m = static_cast<int>(R.size());
  ScatteringMatrix sm;
  sm.component = name;
  sm.S = Eigen::MatrixXd::Zero(m - 1, m - 1);
  for (int i = 1; i < m; ++i)
    for (int j = 1; j < m; ++j)
      sm.S(i - 1, j - 1) = -R[0] - (i == j ? R[i] : 0.0);
  sm.port_widths.assign(m, width);
  sm.port_straight_runs.assign(m, 4.0 * width);
  return sm;
}

/// Independent nodal-formulation oracle: unknown pressures at every
/// interface and external port, per-instance fluxes eliminated through
/// S^{-1}, flux matching at interfaces, prescribed flux at externals, first
/// external pressure pinned to zero. Returns interface fluxes (a->b).
inline Eigen::VectorXd nodal_oracle_fluxes(const ValidatedNetwork& net,
                                           const ComponentLibrary& lib) {
  const int E = static_cast<int>(net.spec.interfaces.size());
  const int X = static_cast<int>(net.spec.externals.size());
  const int V = static_cast<int>(net.spec.instances.size());
  const int NP = E + X;  // node pressures; node id: interfaces then externals

  auto node_of = [&](int inst, int port) {
    if (net.port_interface[inst][port] >= 0)
      return net.port_interface[inst][port];
    return E + net.port_external[inst][port];
  };

  // Port outflow of instance v as a linear form in node pressures:
  // F = S^{-1} (p_ports1.. - p_port0), F_0 = -sum F.
  // Row structure: for each instance and each port, a linear form.
  std::vector<Eigen::MatrixXd> Sinv(V);
  for (int v = 0; v < V; ++v)
    Sinv[v] = lib.matrix_for(net.spec.instances[v].component).S.inverse();

  // Equations: one per interface (outflow_a + outflow_b = 0) and one per
  // external (outflow = flux). Unknowns: NP pressures with the first
  // external pinned (solve least squares; one equation is dependent).
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(E + X, NP);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(E + X);

  // port > 0: F_port = sum_q Sinv(port-1, q-1)(p_q - p_0)
  // port = 0: F_0 = -sum_l F_l
  auto add_outflow = [&](int row, int inst, int port, double scale) {
    const int m = net.port_counts[inst];
    for (int q = 1; q < m; ++q) {
      double coeff;
      if (port > 0)
        coeff = Sinv[inst](port - 1, q - 1);
      else {
        coeff = 0.0;
        for (int l = 1; l < m; ++l) coeff -= Sinv[inst](l - 1, q - 1);
      }
      A(row, node_of(inst, q)) += scale * coeff;
      A(row, node_of(inst, 0)) -= scale * coeff;
    }
  };

  for (int k = 0; k < E; ++k) {
    const InterfaceSpec& f = net.spec.interfaces[k];
    add_outflow(k, f.inst_a, f.port_a, 1.0);
    add_outflow(k, f.inst_b, f.port_b, 1.0);
  }
  for (int x = 0; x < X; ++x) {
    const ExternalSpec& e = net.spec.externals[x];
    add_outflow(E + x, e.inst, e.port, 1.0);
    b[E + x] = e.flux;
  }
  // pin the first external node pressure to zero: drop that column
  const int pin = E + 0;
  Eigen::MatrixXd Ar(E + X, NP - 1);
  Ar << A.leftCols(pin), A.rightCols(NP - 1 - pin);
  const Eigen::VectorXd pr = Ar.colPivHouseholderQr().solve(b);
  Eigen::VectorXd p(NP);
  p << pr.head(pin), 0.0, pr.tail(NP - 1 - pin);

  // interface fluxes a->b = outflow of instance a at port_a
  Eigen::VectorXd flux(E);
  for (int k = 0; k < E; ++k) {
    const InterfaceSpec& f = net.spec.interfaces[k];
    const int m = net.port_counts[f.inst_a];
    double F = 0.0;
    for (int q = 1; q < m; ++q) {
      double coeff;
      if (f.port_a > 0)
        coeff = Sinv[f.inst_a](f.port_a - 1, q - 1);
      else {
        coeff = 0.0;
        for (int l = 1; l < m; ++l) coeff -= Sinv[f.inst_a](l - 1, q - 1);
      }
      F += coeff * (p[node_of(f.inst_a, q)] - p[node_of(f.inst_a, 0)]);
    }
    flux[k] = F;
  }
  return flux;
}

}  // namespace stokesnet::testing
