#pragma once

#include <Eigen/Dense>
#include <functional>

namespace stokesnet {

struct GmresResult {
  bool converged = false;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Unrestarted GMRES with modified Gram-Schmidt and Givens rotations.
/// Stops when ||b - A x|| <= tol * ||b||. x is overwritten (initial guess 0).
GmresResult gmres(
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
    const Eigen::VectorXd& b, Eigen::VectorXd& x, double tol, int max_iter);

}  // namespace stokesnet
