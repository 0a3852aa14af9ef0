#include "stokesnet/poiseuille.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "stokesnet/errors.hpp"
#include "stokesnet/quadrature.hpp"

namespace stokesnet {

double PoiseuilleProfile::velocity(double y) const {
  const double L = half_width;
  if (std::abs(y) > L * (1.0 + 1e-14))
    fail(ErrorCode::OutOfChannel, "transverse coordinate outside the channel");
  return 0.75 * flux * (L * L - y * y) / (L * L * L);
}

namespace {

Complex f_papkovich(Complex z) {
  const Complex s = std::sin(2.0 * z);
  return s * s - 4.0 * z * z;
}

Complex df_papkovich(Complex z) {
  return 4.0 * std::sin(2.0 * z) * std::cos(2.0 * z) - 8.0 * z;
}

// Winding number of f around a rectangle; box edges must stay clear of roots.
int count_roots(Complex lo, Complex hi) {
  const GaussRule& gl = gauss_legendre(24);
  const Complex corners[5] = {lo, Complex(hi.real(), lo.imag()), hi,
                              Complex(lo.real(), hi.imag()), lo};
  Complex total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const int cells = 24;
    for (int c = 0; c < cells; ++c) {
      const Complex a =
          corners[e] + (corners[e + 1] - corners[e]) * (double(c) / cells);
      const Complex b =
          corners[e] + (corners[e + 1] - corners[e]) * (double(c + 1) / cells);
      for (int q = 0; q < gl.n(); ++q) {
        const Complex z = a + 0.5 * (b - a) * (gl.x[q] + 1.0);
        total += 0.5 * (b - a) * gl.w[q] * df_papkovich(z) / f_papkovich(z);
      }
    }
  }
  const double count = (total / Complex(0.0, 2.0 * M_PI)).real();
  const double rounded = std::round(count);
  if (std::abs(count - rounded) > 0.15)
    fail(ErrorCode::RootSearchFailed,
         "argument-principle count did not settle on an integer");
  return static_cast<int>(rounded);
}

// Recursive box subdivision down to isolated roots, then Newton polish.
void isolate_roots(Complex lo, Complex hi, int depth,
                   std::vector<Complex>& roots) {
  if (depth > 40)
    fail(ErrorCode::RootSearchFailed, "box subdivision exhausted");
  int n;
  try {
    n = count_roots(lo, hi);
  } catch (const Error&) {
    // a root sits too close to the boundary; enlarge slightly and retry
    const Complex pad(0.013771, 0.0091237);
    lo -= pad;
    hi += pad;
    n = count_roots(lo, hi);
  }
  if (n == 0) return;
  const double w = hi.real() - lo.real(), h = hi.imag() - lo.imag();
  if (n == 1 && std::max(w, h) < 0.6) {
    Complex z = 0.5 * (lo + hi);
    for (int it = 0; it < 80; ++it) {
      const Complex step = f_papkovich(z) / df_papkovich(z);
      z -= step;
      if (std::abs(step) < 1e-13 * std::max(1.0, std::abs(z))) break;
    }
    const bool inside = z.real() > lo.real() - 0.05 &&
                        z.real() < hi.real() + 0.05 &&
                        z.imag() > lo.imag() - 0.05 &&
                        z.imag() < hi.imag() + 0.05;
    if (inside) {
      roots.push_back(z);
      return;
    }
    // Newton escaped the box; keep subdividing from a better center.
  }
  if (w >= h) {
    const double mid = lo.real() + 0.5 * w;
    isolate_roots(lo, Complex(mid, hi.imag()), depth + 1, roots);
    isolate_roots(Complex(mid, lo.imag()), hi, depth + 1, roots);
  } else {
    const double mid = lo.imag() + 0.5 * h;
    isolate_roots(lo, Complex(hi.real(), mid), depth + 1, roots);
    isolate_roots(Complex(lo.real(), mid), hi, depth + 1, roots);
  }
}

// Extended-precision Newton polish on the factored form sin(2z) -+ 2z, with
// the residual |sin^2(2z) - 4z^2| evaluated at the polished root. In pure
// double the residual of the outer roots saturates at |f'| * half-ulp(z)
// ~ 3e-12, above the 1e-12 contract, so the polish and the residual use
// 80-bit arithmetic; the returned root is the double rounding.
Complex polish_extended(Complex z, double& residual) {
  using CL = std::complex<long double>;
  CL zl(z.real(), z.imag());
  const CL s2z0 = std::sin(2.0L * zl);
  const long double sgn =
      (std::abs(s2z0 - 2.0L * zl) < std::abs(s2z0 + 2.0L * zl)) ? 1.0L : -1.0L;
  for (int it = 0; it < 40; ++it) {
    const CL gz = std::sin(2.0L * zl) - sgn * 2.0L * zl;
    const CL dgz = 2.0L * std::cos(2.0L * zl) - sgn * 2.0L;
    const CL step = gz / dgz;
    zl -= step;
    if (std::abs(step) < 1e-21L * std::max(1.0L, std::abs(zl))) break;
  }
  const CL s = std::sin(2.0L * zl);
  residual = static_cast<double>(std::abs(s * s - 4.0L * zl * zl));
  return Complex(static_cast<double>(zl.real()),
                 static_cast<double>(zl.imag()));
}

}  // namespace

PapkovichSpectrum papkovich_roots(int count) {
  if (count < 1)
    fail(ErrorCode::RootSearchFailed, "root count must be positive");
  std::vector<Complex> roots;
  // Roots in the upper-right quadrant march rightward with spacing ~pi/2 and
  // slowly growing imaginary part; scan widening windows until enough found.
  double re_max = 2.0 + 1.8 * count;
  for (int attempt = 0; attempt < 5 && static_cast<int>(roots.size()) < count;
       ++attempt) {
    roots.clear();
    isolate_roots(Complex(0.3, 0.411), Complex(re_max, 4.1), 0, roots);
    std::sort(roots.begin(), roots.end(),
              [](Complex a, Complex b) { return a.real() < b.real(); });
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](Complex a, Complex b) {
                              return std::abs(a - b) < 1e-9;
                            }),
                roots.end());
    re_max *= 1.6;
  }
  if (static_cast<int>(roots.size()) < count)
    fail(ErrorCode::RootSearchFailed, "could not isolate enough roots");

  PapkovichSpectrum spec;
  for (int k = 0; k < count; ++k) {
    double residual = 0.0;
    Complex z = polish_extended(
        Complex(roots[k].real(), std::abs(roots[k].imag())), residual);
    spec.p.push_back(2.0 * z);
    spec.residual.push_back(residual);
  }
  return spec;
}

double decay_rate(double width) {
  if (!(width > 0.0)) fail(ErrorCode::InvalidSkeleton, "width must be positive");
  static const double re_p1 = papkovich_roots(1).p[0].real();
  return re_p1 / width;
}

double ZeroFluxProfile::velocity(double y) const {
  const double L = half_width;
  if (std::abs(y) > L * (1.0 + 1e-14))
    fail(ErrorCode::OutOfChannel, "transverse coordinate outside the channel");
  // sin(pi x) with exact zeros at integer x, so u(+-L) = 0 exactly
  auto sinpi = [](double x) {
    return x == std::round(x) ? 0.0 : std::sin(M_PI * x);
  };
  const double t = (y + L) / (2.0 * L);
  double u = 0.0;
  for (size_t k = 0; k < coeffs.size(); ++k)
    u += coeffs[k] * sinpi((k + 1) * t);
  return u;
}

ZeroFluxProfile random_zero_flux_profile(double half_width, std::uint64_t seed,
                                         int modes) {
  if (modes < 2)
    fail(ErrorCode::InvalidSkeleton, "need at least two modes to cancel flux");
  ZeroFluxProfile prof;
  prof.half_width = half_width;
  prof.coeffs.resize(modes);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int k = 0; k < modes; ++k) prof.coeffs[k] = uni(rng);

  // Mode k carries flux I_k = 4L/(k pi) for odd k, 0 for even k; project the
  // coefficient vector onto the zero-flux hyperplane.
  std::vector<double> I(modes, 0.0);
  const double L = half_width;
  for (int k = 1; k <= modes; ++k)
    if (k % 2 == 1) I[k - 1] = 4.0 * L / (k * M_PI);
  double dot = 0.0, nrm = 0.0;
  for (int k = 0; k < modes; ++k) {
    dot += prof.coeffs[k] * I[k];
    nrm += I[k] * I[k];
  }
  for (int k = 0; k < modes; ++k) prof.coeffs[k] -= dot / nrm * I[k];
  return prof;
}

ExponentialFit fit_exponential(const std::vector<double>& xs,
                               const std::vector<double>& values) {
  if (xs.size() != values.size() || xs.size() < 2)
    fail(ErrorCode::DimensionMismatch, "fit needs matching x/value arrays");
  const int n = static_cast<int>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    if (!(values[i] > 0.0))
      fail(ErrorCode::NonPositiveValues,
           "exponential fit requires positive values");
    const double y = std::log(values[i]);
    sx += xs[i];
    sy += y;
    sxx += xs[i] * xs[i];
    sxy += xs[i] * y;
  }
  ExponentialFit fit;
  const double det = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy * sxx - sx * sxy) / det;
  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = std::log(values[i]) - (fit.slope * xs[i] + fit.intercept);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

}  // namespace stokesnet
