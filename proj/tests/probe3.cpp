#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cstdio>
#include <random>
#include "stokesnet/errors.hpp"
#include "stokesnet/biharmonic.hpp"
#include "stokesnet/geometry.hpp"
#include "stokesnet/gmres.hpp"
using namespace stokesnet;

namespace {
class Ellipse : public Curve {
 public:
  Ellipse(double a, double b, int panels) : a_(a), b_(b), panels_(panels) {}
  void eval(double t, Complex& z, Complex& dz, Complex& ddz) const override {
    const double w = 2.0 * M_PI;
    z = Complex(a_ * std::cos(w*t), b_ * std::sin(w*t));
    dz = Complex(-a_*w*std::sin(w*t), b_*w*std::cos(w*t));
    ddz = Complex(-a_*w*w*std::cos(w*t), -b_*w*w*std::sin(w*t));
  }
  std::vector<double> panel_breaks(double, int refine) const override {
    const int n = panels_ * refine;
    std::vector<double> t(n+1);
    for (int k = 0; k <= n; ++k) t[k] = double(k)/n;
    return t;
  }
 private: double a_, b_; int panels_;
};
ComponentGeometry ellipse_geom(double a, double b, int panels) {
  CurveChain c; c.push_back({std::make_shared<Ellipse>(a,b,panels), PieceKind::Wall, -1});
  return geometry_from_chains({c}, {}, {}, 1.0, 4, 1, "ellipse");
}
}

int main() {
  // 1) GMRES sanity on a random well-conditioned system
  {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> N(0,1);
    const int n = 80;
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n,n);
    for (int i = 0; i < n; ++i) for (int j = 0; j < n; ++j) M(i,j) += 0.05*N(rng);
    Eigen::VectorXd xs(n); for (int i = 0; i < n; ++i) xs[i] = N(rng);
    Eigen::VectorXd b = M*xs, x;
    auto ap = [&](const Eigen::VectorXd& v, Eigen::VectorXd& o){ o = M*v; };
    GmresResult r = gmres(ap, b, x, 1e-13, 200);
    std::printf("gmres random: conv=%d iters=%d res=%.2e xerr=%.2e\n",
                r.converged, r.iterations, r.relative_residual, (x-xs).norm()/xs.norm());
  }

  ComponentGeometry g = ellipse_geom(1.3, 0.8, 16);
  SLOperator op(g);
  
  const int n = op.size();

  // 2) flux of A(omega) for random smooth omega  (should be ~0)
  {
    std::vector<Complex> om(n);
    for (int i = 0; i < n; ++i) {
      const Complex z = g.nodes[i].z;
      om[i] = std::exp(0.4*z) + Complex(0,0.3)*std::conj(z*z);
    }
    auto Aom = op.apply(om);
    double flux = 0;
    for (int i = 0; i < n; ++i)
      flux += std::real(Aom[i]*std::conj(g.nodes[i].dz))*g.nodes[i].weight;
    std::printf("flux of A(omega): %.3e\n", flux);
  }

  // 3) GMRES on consistent b = A(omega_hat)
  {
    std::vector<Complex> omh(n);
    for (int i = 0; i < n; ++i) {
      const Complex z = g.nodes[i].z;
      omh[i] = std::sin(0.7*z.real()) + Complex(0,1)*std::cos(0.5*z.imag());
    }
    auto b_c = op.apply(omh);
    Eigen::VectorXd b(2*n), x;
    for (int i = 0; i < n; ++i) { b[i] = b_c[i].real(); b[n+i] = b_c[i].imag(); }
    std::vector<Complex> om(n), Ao;
    auto ap = [&](const Eigen::VectorXd& v, Eigen::VectorXd& o){
      for (int i = 0; i < n; ++i) om[i] = Complex(v[i], v[n+i]);
      Ao = op.apply(om);
      for (int i = 0; i < n; ++i) { o[i] = Ao[i].real(); o[n+i] = Ao[i].imag(); }
    };
    GmresResult r = gmres(ap, b, x, 1e-13, 600);
    std::printf("gmres consistent SL system: conv=%d iters=%d res=%.2e\n",
                r.converged, r.iterations, r.relative_residual);
  }

  // 4) least-squares structure of the manufactured system
  {
    Eigen::MatrixXd A(2*n, 2*n);
    std::vector<Complex> e(n), Ae;
    for (int col = 0; col < 2*n; ++col) {
      std::fill(e.begin(), e.end(), Complex(0,0));
      if (col < n) e[col] = 1.0; else e[col-n] = Complex(0,1);
      Ae = op.apply(e);
      for (int i = 0; i < n; ++i) { A(i,col) = Ae[i].real(); A(n+i,col) = Ae[i].imag(); }
    }
    const Complex z0(2.4, 1.7);
    Eigen::VectorXd b(2*n);
    for (int i = 0; i < n; ++i) {
      const Complex z = g.nodes[i].z;
      const Complex phi = 1.0/(z-z0), dphi = -1.0/((z-z0)*(z-z0)), psi = 1.0/((z-z0)*(z-z0));
      const Complex h = phi + z*std::conj(dphi) + std::conj(psi);
      b[i] = h.real(); b[n+i] = h.imag();
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd xls = svd.solve(b);
    Eigen::VectorXd resid = b - A*xls;
    std::printf("LS residual of manufactured system: %.3e (rel %.3e)\n",
                resid.norm(), resid.norm()/b.norm());
    // residual direction
    auto corr = [&](auto cand, const char* name) {
      Complex dot = 0; double nv = 0, nc = 0;
      for (int i = 0; i < n; ++i) {
        Complex vi(resid[i], resid[n+i]); Complex ci = cand(i);
        dot += std::conj(ci)*vi; nv += std::norm(vi); nc += std::norm(ci);
      }
      std::printf("  resid corr %-10s = %.4f\n", name, std::abs(dot)/std::sqrt(nv*nc));
    };
    if (resid.norm() > 1e-10) {
      corr([&](int i){ return Complex(1,0); }, "1");
      corr([&](int i){ return g.nodes[i].z; }, "xi");
      corr([&](int i){ return std::conj(g.nodes[i].z); }, "conj xi");
      corr([&](int i){ return g.nodes[i].normal; }, "normal");
      corr([&](int i){ return g.nodes[i].normal*std::abs(g.nodes[i].dz)*g.nodes[i].weight; }, "n ds");
      corr([&](int i){ return g.nodes[i].dz/std::abs(g.nodes[i].dz); }, "tangent");
      corr([&](int i){ return Complex(0,1)*g.nodes[i].z; }, "i xi");
    }
    // interior velocity from the LS solution
    SLDensity den;
    den.omega.resize(n);
    for (int i = 0; i < n; ++i) den.omega[i] = Complex(xls[i], xls[n+i]);
    SolverConfig cfg;
    std::vector<Complex> probes{{0.0,0.0},{0.5,0.3},{-0.7,-0.2}};
    auto fs = eval_fields(g, den, probes, 1.0, cfg);
    for (size_t k = 0; k < probes.size(); ++k) {
      const Complex z = probes[k];
      const Complex phi = 1.0/(z-z0), dphi = -1.0/((z-z0)*(z-z0)), psi = 1.0/((z-z0)*(z-z0));
      const Complex uex = Complex(0,-1)*(phi + z*std::conj(dphi) + std::conj(psi));
      std::printf("  probe %zu: vel err %.3e\n", k, std::abs(fs[k].velocity-uex)/std::abs(uex));
    }
  }
  return 0;
}
