// Disk identities + null-vector structure probe.
#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cstdio>
#include "stokesnet/errors.hpp"
#include "stokesnet/biharmonic.hpp"
#include "stokesnet/geometry.hpp"
using namespace stokesnet;

namespace {
class Circle : public Curve {
 public:
  Circle(double r, int panels) : r_(r), panels_(panels) {}
  void eval(double t, Complex& z, Complex& dz, Complex& ddz) const override {
    const double w = 2.0 * M_PI;
    const Complex e = std::polar(1.0, w * t);
    z = r_ * e; dz = r_ * w * Complex(0,1) * e; ddz = -r_ * w * w * e;
  }
  std::vector<double> panel_breaks(double, int refine) const override {
    const int n = panels_ * refine;
    std::vector<double> t(n + 1);
    for (int k = 0; k <= n; ++k) t[k] = double(k) / n;
    return t;
  }
 private: double r_; int panels_;
};
ComponentGeometry circle_geom(double r, int panels) {
  CurveChain c; c.push_back({std::make_shared<Circle>(r, panels), PieceKind::Wall, -1});
  return geometry_from_chains({c}, {}, {}, 1.0, 4, 1, "circle");
}
}

int main() {
  ComponentGeometry g = circle_geom(1.0, 24);
  SLOperator op(g);
  
  const int n = op.size();

  // A(xi) should be 2*xi ; A(conj(xi)) should be conj(xi)
  std::vector<Complex> om1(n), om2(n);
  for (int i = 0; i < n; ++i) { om1[i] = g.nodes[i].z; om2[i] = std::conj(g.nodes[i].z); }
  auto A1 = op.apply(om1);
  auto A2 = op.apply(om2);
  double e1 = 0, e2 = 0;
  for (int i = 0; i < n; ++i) {
    e1 = std::max(e1, std::abs(A1[i] - 2.0 * g.nodes[i].z));
    e2 = std::max(e2, std::abs(A2[i] - std::conj(g.nodes[i].z)));
  }
  std::printf("disk: |A(xi)-2xi| = %.3e   |A(conj xi)-conj xi| = %.3e\n", e1, e2);

  // full SVD: right and left null vectors
  Eigen::MatrixXd A(2 * n, 2 * n);
  std::vector<Complex> e(n), Ae;
  for (int col = 0; col < 2 * n; ++col) {
    std::fill(e.begin(), e.end(), Complex(0, 0));
    if (col < n) e[col] = 1.0; else e[col - n] = Complex(0, 1);
    Ae = op.apply(e);
    for (int i = 0; i < n; ++i) { A(i, col) = Ae[i].real(); A(n + i, col) = Ae[i].imag(); }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  std::printf("smallest svs: %.3e %.3e %.3e %.3e\n", s[2*n-1], s[2*n-2], s[2*n-3], s[2*n-4]);
  Eigen::VectorXd vr = svd.matrixV().col(2 * n - 1);
  Eigen::VectorXd vl = svd.matrixU().col(2 * n - 1);
  // complexify: omega0_i = vr[i] + i vr[n+i]; psi0_i similarly
  // correlate omega0 with candidates: 1, i, xi, conj xi, i*xi, tangent, normal
  auto corr = [&](const Eigen::VectorXd& v, auto cand, const char* name) {
    Complex dot = 0; double nv = 0, nc = 0;
    for (int i = 0; i < n; ++i) {
      Complex vi(v[i], v[n + i]);
      Complex ci = cand(i);
      dot += std::conj(ci) * vi; nv += std::norm(vi); nc += std::norm(ci);
    }
    std::printf("  corr with %-12s |dot|/(|v||c|) = %.4f\n", name,
                std::abs(dot) / std::sqrt(nv * nc));
  };
  std::printf("right null vector omega0:\n");
  corr(vr, [&](int i){ return Complex(1,0); }, "1");
  corr(vr, [&](int i){ return g.nodes[i].z; }, "xi");
  corr(vr, [&](int i){ return std::conj(g.nodes[i].z); }, "conj xi");
  corr(vr, [&](int i){ return g.nodes[i].normal; }, "normal");
  corr(vr, [&](int i){ return g.nodes[i].dz/std::abs(g.nodes[i].dz); }, "tangent");
  std::printf("left null vector psi0:\n");
  corr(vl, [&](int i){ return Complex(1,0); }, "1");
  corr(vl, [&](int i){ return g.nodes[i].z; }, "xi");
  corr(vl, [&](int i){ return std::conj(g.nodes[i].z); }, "conj xi");
  corr(vl, [&](int i){ return g.nodes[i].normal; }, "normal");
  corr(vl, [&](int i){ return g.nodes[i].normal*std::abs(g.nodes[i].dz)*g.nodes[i].weight; }, "normal*ds");
  corr(vl, [&](int i){ return g.nodes[i].dz/std::abs(g.nodes[i].dz); }, "tangent");
  // print a few entries of psi0 alongside node angle
  for (int i = 0; i < n; i += n/6) {
    std::printf("  node %3d angle %.3f  psi0 = (%.4f, %.4f)  omega0 = (%.4f, %.4f)\n",
        i, std::arg(g.nodes[i].z), vl[i], vl[n+i], vr[i], vr[n+i]);
  }
  return 0;
}
