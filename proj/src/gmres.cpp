#include "stokesnet/gmres.hpp"

#include <cmath>
#include <vector>

namespace stokesnet {

GmresResult gmres(
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
    const Eigen::VectorXd& b, Eigen::VectorXd& x, double tol, int max_iter) {
  using Eigen::VectorXd;
  GmresResult result;
  const int n = static_cast<int>(b.size());
  x = VectorXd::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    result.converged = true;
    return result;
  }

  std::vector<VectorXd> V;
  V.reserve(64);
  V.push_back(b / bnorm);
  std::vector<std::vector<double>> H;  // rotated columns of the Hessenberg
  std::vector<double> cs, sn, g{bnorm};

  VectorXd w(n);
  for (int k = 0; k < max_iter; ++k) {
    apply(V[k], w);
    std::vector<double> h(k + 2, 0.0);
    for (int i = 0; i <= k; ++i) {
      h[i] = w.dot(V[i]);
      w.noalias() -= h[i] * V[i];
    }
    const double hk1 = w.norm();
    h[k + 1] = hk1;

    for (int i = 0; i < k; ++i) {
      const double t = cs[i] * h[i] + sn[i] * h[i + 1];
      h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
      h[i] = t;
    }
    const double denom = std::hypot(h[k], h[k + 1]);
    const double c = (denom == 0.0) ? 1.0 : h[k] / denom;
    const double s = (denom == 0.0) ? 0.0 : h[k + 1] / denom;
    cs.push_back(c);
    sn.push_back(s);
    h[k] = denom;
    h[k + 1] = 0.0;
    g.push_back(-s * g[k]);
    g[k] = c * g[k];
    H.push_back(std::move(h));

    const double res = std::abs(g[k + 1]) / bnorm;
    const bool breakdown = (hk1 <= 1e-300);
    if (res <= tol || k + 1 == max_iter || breakdown) {
      const int m = k + 1;
      std::vector<double> y(m, 0.0);
      for (int i = m - 1; i >= 0; --i) {
        double acc = g[i];
        for (int j = i + 1; j < m; ++j) acc -= H[j][i] * y[j];
        y[i] = (H[i][i] != 0.0) ? acc / H[i][i] : 0.0;
      }
      for (int i = 0; i < m; ++i) x.noalias() += y[i] * V[i];
      result.iterations = m;
      result.relative_residual = res;
      result.converged = res <= tol;
      return result;
    }
    V.push_back(w / hk1);
  }
  return result;
}

}  // namespace stokesnet
