#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "stokesnet/curves.hpp"

namespace stokesnet {

/// Plane Poiseuille flow in a channel of half-width L carrying flux F:
/// u(y) = (3F / 4L^3) (L^2 - y^2), v = 0, with centerline pressure gradient
/// C = -3 mu F / (2 L^3).
struct PoiseuilleProfile {
  double half_width = 0.5;
  double flux = 1.0;
  double mu = 1.0;

  double pressure_gradient() const {
    const double L = half_width;
    return -3.0 * mu * flux / (2.0 * L * L * L);
  }
  /// Velocity at transverse offset y (throws OutOfChannel for |y| > L).
  double velocity(double y) const;
  /// Vorticity u_y at transverse offset y.
  double vorticity(double y) const {
    const double L = half_width;
    return -1.5 * flux * y / (L * L * L);
  }
};

/// Decay eigenvalues of the clamped-channel expansion: p_n = 2 z_n where the
/// z_n are the roots of sin^2(2z) - 4z^2 with positive real part (smallest
/// first, canonicalized to Im >= 0). Non-Poiseuille disturbances decay like
/// e^{-p_n x / (2L)}; Re p_1 = 4.2124.
struct PapkovichSpectrum {
  std::vector<Complex> p;
  std::vector<double> residual;  // |sin^2(2 z_n) - 4 z_n^2| at z_n = p_n / 2
};

/// Locate the `count` smallest roots by argument-principle box counting
/// followed by Newton polishing.
PapkovichSpectrum papkovich_roots(int count);

/// Spatial decay rate (per unit axial length) of the slowest mode in a
/// channel of full width W: Re(p_1) / W.
double decay_rate(double width);

/// Transverse velocity profile with exactly zero flux and exact endpoint
/// zeros: u(y) = sum a_k sin(k pi (y+L) / (2L)), coefficients drawn from the
/// seeded generator and projected onto the zero-flux hyperplane.
struct ZeroFluxProfile {
  double half_width = 0.5;
  std::vector<double> coeffs;
  double velocity(double y) const;
};

ZeroFluxProfile random_zero_flux_profile(double half_width,
                                         std::uint64_t seed, int modes);

struct ExponentialFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // rms of ln-residuals
};

/// Least-squares line through (x, ln value). Throws NonPositiveValues.
ExponentialFit fit_exponential(const std::vector<double>& xs,
                               const std::vector<double>& values);

}  // namespace stokesnet
