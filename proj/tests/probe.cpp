// Scratch driver used while bringing up the solver core; not a shipped test.
#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cstdio>

#include "stokesnet/errors.hpp"
#include "stokesnet/biharmonic.hpp"
#include "stokesnet/geometry.hpp"

using namespace stokesnet;

namespace {

class Ellipse : public Curve {
 public:
  Ellipse(double a, double b, int panels) : a_(a), b_(b), panels_(panels) {}
  void eval(double t, Complex& z, Complex& dz, Complex& ddz) const override {
    const double w = 2.0 * M_PI;
    z = Complex(a_ * std::cos(w * t), b_ * std::sin(w * t));
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
  double a_, b_;
  int panels_;
};

ComponentGeometry ellipse_geom(double a, double b, int panels) {
  CurveChain chain;
  chain.push_back({std::make_shared<Ellipse>(a, b, panels), PieceKind::Wall, -1});
  return geometry_from_chains({chain}, {}, {}, 1.0, 4, 1, "ellipse");
}

struct Exact {
  Complex z0;
  Complex phi(Complex z) const { return 1.0 / (z - z0); }
  Complex dphi(Complex z) const { return -1.0 / ((z - z0) * (z - z0)); }
  Complex psi(Complex z) const { return 1.0 / ((z - z0) * (z - z0)); }
  Complex h(Complex z) const {
    return phi(z) + z * std::conj(dphi(z)) + std::conj(psi(z));
  }
  Complex velocity(Complex z) const { return Complex(0, -1) * h(z); }
};

// Interior boundary value G(z) of the representation for density omega,
// evaluated by plain quadrature at z strictly inside (accurate only away
// from the boundary).
Complex rep_G(const ComponentGeometry& g, const std::vector<Complex>& om,
              Complex z) {
  Complex phi = 0, dphi = 0, psi = 0;
  const Complex i2pi = 1.0 / (2.0 * M_PI * Complex(0, 1));
  for (int j = 0; j < g.node_count(); ++j) {
    const Complex a = g.nodes[j].weight * g.nodes[j].dz;
    const Complex d = g.nodes[j].z - z;
    phi += om[j] * a / d;
    dphi += om[j] * a / (d * d);
    psi += (std::conj(om[j]) * a + om[j] * std::conj(a)) / d -
           std::conj(g.nodes[j].z) * om[j] * a / (d * d);
  }
  phi *= i2pi;
  dphi *= i2pi;
  psi *= i2pi;
  return phi + z * std::conj(dphi) + std::conj(psi);
}

}  // namespace

int main() {
  // --- exact constants identity: A(c) should equal 2c (deflation off) ------
  {
    ComponentGeometry g = ellipse_geom(1.3, 0.8, 24);
    SLOperator op(g);
    
    std::vector<Complex> one(g.node_count(), Complex(1.0, 0.0));
    auto A1 = op.apply(one);
    double err = 0;
    for (auto v : A1) err = std::max(err, std::abs(v - 2.0));
    std::printf("A(1) vs 2: max err %.3e\n", err);
    std::vector<Complex> ic(g.node_count(), Complex(0.4, -1.1));
    auto A2 = op.apply(ic);
    err = 0;
    for (auto v : A2) err = std::max(err, std::abs(v - 2.0 * Complex(0.4, -1.1)));
    std::printf("A(c) vs 2c: max err %.3e\n", err);
    std::fflush(stdout);
  }

  // --- brute-force boundary limit vs operator -------------------------------
  {
    ComponentGeometry g = ellipse_geom(1.3, 0.8, 40);
    SLOperator op(g);
    
    std::vector<Complex> om(g.node_count());
    for (int j = 0; j < g.node_count(); ++j) {
      const Complex z = g.nodes[j].z;
      om[j] = std::exp(0.3 * z) + 0.5 * std::conj(z) * z;  // smooth test density
    }
    auto Aom = op.apply(om);
    // Approach node i from inside along -normal and Richardson extrapolate.
    for (int i : {7, 333}) {
      const Complex zi = g.nodes[i].z;
      const Complex nrm = g.nodes[i].normal;
      const double d0 = 0.25;
      const Complex g1 = rep_G(g, om, zi - d0 * nrm);
      const Complex g2 = rep_G(g, om, zi - 0.5 * d0 * nrm);
      const Complex g3 = rep_G(g, om, zi - 0.25 * d0 * nrm);
      // boundary value = omega_i + smooth part; compare operator result and
      // quadratic extrapolation of interior values
      const Complex extrap = g3 + (g3 - g2) + (g3 - 2.0 * g2 + g1);
      std::printf("node %d: A(om)=%.6f%+.6fi  G_extrap=%.6f%+.6fi  g1=%.6f%+.6fi g3=%.6f%+.6fi\n",
                  i, Aom[i].real(), Aom[i].imag(), extrap.real(),
                  extrap.imag(), g1.real(), g1.imag(), g3.real(), g3.imag());
    }
    std::fflush(stdout);
  }

  // --- null space structure -------------------------------------------------
  for (int defl = 0; defl <= 0; ++defl) {
    ComponentGeometry g = ellipse_geom(1.3, 0.8, 16);
    SLOperator op(g);
    
    const int n = op.size();
    Eigen::MatrixXd A(2 * n, 2 * n);
    std::vector<Complex> e(n), Ae;
    for (int col = 0; col < 2 * n; ++col) {
      std::fill(e.begin(), e.end(), Complex(0, 0));
      if (col < n)
        e[col] = 1.0;
      else
        e[col - n] = Complex(0, 1);
      Ae = op.apply(e);
      for (int i = 0; i < n; ++i) {
        A(i, col) = Ae[i].real();
        A(n + i, col) = Ae[i].imag();
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& s = svd.singularValues();
    std::printf("deflate=%d n=%d smallest sv:", defl, n);
    for (int k = 0; k < 6; ++k) std::printf(" %.3e", s[s.size() - 1 - k]);
    std::printf("  largest %.3e\n", s[0]);
    std::fflush(stdout);
  }

  // --- manufactured solution ------------------------------------------------
  Exact ex{Complex(2.4, 1.7)};
  for (int refine : {1, 2}) {
    ComponentGeometry g = ellipse_geom(1.3, 0.8, 16 * refine);
    SolverConfig cfg;
    cfg.max_iter = 700;
    BoundaryData data;
    data.h.resize(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) data.h[i] = ex.h(g.nodes[i].z);
    GmresResult st;
    try {
      SLDensity den = solve_bvp(g, data, cfg, nullptr, &st);
      std::printf("refine=%d iters=%d res=%.2e\n", refine, st.iterations,
                  st.relative_residual);
      std::vector<Complex> probes{{0.0, 0.0}, {0.5, 0.3}, {-0.7, -0.2},
                                  {0.2, -0.45}};
      auto fields = eval_fields(g, den, probes, 1.0, cfg);
      double verr = 0.0;
      for (size_t k = 0; k < probes.size(); ++k) {
        const Complex uex = ex.velocity(probes[k]);
        verr = std::max(verr,
                        std::abs(fields[k].velocity - uex) / std::abs(uex));
      }
      std::printf("  velocity rel err %.3e\n", verr);
    } catch (const stokesnet::Error& err) {
      std::printf("refine=%d FAILED: %s\n", refine, err.what());
    }
    std::fflush(stdout);
  }
  return 0;
}
