#include "stokesnet/curves.hpp"

#include <algorithm>
#include <cmath>

#include "stokesnet/errors.hpp"
#include "stokesnet/quadrature.hpp"

namespace stokesnet {

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }
double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

namespace {

// Antiderivative of the normal CDF: Psi' = Phi.
double normal_cdf_int(double x) { return x * normal_cdf(x) + normal_pdf(x); }

constexpr int kPrefixCells = 256;
constexpr int kPartialQuad = 12;

template <class Vel>
std::vector<Complex> build_prefix(Complex z0, double s_lo, double s_hi,
                                  const Vel& vel) {
  const GaussRule& gl = gauss_legendre(kPartialQuad);
  std::vector<Complex> prefix(kPrefixCells + 1);
  prefix[0] = z0;
  const double h = (s_hi - s_lo) / kPrefixCells;
  for (int k = 0; k < kPrefixCells; ++k) {
    const double a = s_lo + k * h;
    Complex acc = 0.0;
    for (int q = 0; q < gl.n(); ++q) {
      const double s = a + 0.5 * h * (gl.x[q] + 1.0);
      acc += gl.w[q] * vel(s);
    }
    prefix[k + 1] = prefix[k] + 0.5 * h * acc;
  }
  return prefix;
}

template <class Vel>
Complex prefix_position(const std::vector<Complex>& prefix, double s_lo,
                        double s_hi, double s, const Vel& vel) {
  const double h = (s_hi - s_lo) / kPrefixCells;
  int k = static_cast<int>(std::floor((s - s_lo) / h));
  k = std::clamp(k, 0, kPrefixCells - 1);
  const double a = s_lo + k * h;
  const GaussRule& gl = gauss_legendre(kPartialQuad);
  Complex acc = 0.0;
  const double span = s - a;
  for (int q = 0; q < gl.n(); ++q) {
    const double u = a + 0.5 * span * (gl.x[q] + 1.0);
    acc += gl.w[q] * vel(u);
  }
  return prefix[k] + 0.5 * span * acc;
}

// Panel boundaries for one zone [a, b] at target length h (>= 1 panel).
void append_zone(std::vector<double>& breaks, double a, double b, double h,
                 int refine) {
  const double len = b - a;
  if (len <= 0.0) return;
  const int n = std::max(1, static_cast<int>(std::ceil(len * refine / h)));
  for (int k = 1; k <= n; ++k) breaks.push_back(a + len * k / n);
}

std::vector<double> to_unit_param(const std::vector<double>& s_breaks,
                                  double s_lo, double s_hi) {
  std::vector<double> t;
  t.reserve(s_breaks.size());
  for (double s : s_breaks) t.push_back((s - s_lo) / (s_hi - s_lo));
  t.front() = 0.0;
  t.back() = 1.0;
  return t;
}

}  // namespace

double Curve::arclength() const {
  const GaussRule& gl = gauss_legendre(10);
  const int cells = 128;
  double len = 0.0;
  for (int k = 0; k < cells; ++k) {
    const double a = static_cast<double>(k) / cells;
    const double h = 1.0 / cells;
    for (int q = 0; q < gl.n(); ++q) {
      const double t = a + 0.5 * h * (gl.x[q] + 1.0);
      Complex z, dz, ddz;
      eval(t, z, dz, ddz);
      len += 0.5 * h * gl.w[q] * std::abs(dz);
    }
  }
  return len;
}

std::vector<double> LineSegment::panel_breaks(double h_wall,
                                              int refine) const {
  const double len = std::abs(b_ - a_);
  const int n =
      std::max(1, static_cast<int>(std::ceil(len * refine / h_wall)));
  std::vector<double> t(n + 1);
  for (int k = 0; k <= n; ++k) t[k] = static_cast<double>(k) / n;
  return t;
}

// ---------------------------------------------------------------------------
// MollifiedCorner
// ---------------------------------------------------------------------------

MollifiedCorner::MollifiedCorner(Complex entry, double theta_in, double dtheta,
                                 double delta)
    : entry_(entry), theta_in_(theta_in), dtheta_(dtheta), delta_(delta) {
  if (delta <= 0.0)
    fail(ErrorCode::SmoothingOverlap,
         "corner smoothing half-width must be positive");
  g_ = delta / 8.0;

  const Complex e_in = std::polar(1.0, theta_in_);
  const Complex e_out = std::polar(1.0, theta_in_ + dtheta_);

  // I(beta) = Ia + beta*Ib over s in [-delta, delta].
  const GaussRule& gl = gauss_legendre(kPartialQuad);
  Complex Ia = 0.0, Ib = 0.0;
  const double h = 2.0 * delta_ / kPrefixCells;
  for (int k = 0; k < kPrefixCells; ++k) {
    const double a = -delta_ + k * h;
    for (int q = 0; q < gl.n(); ++q) {
      const double s = a + 0.5 * h * (gl.x[q] + 1.0);
      const Complex ph = std::polar(1.0, theta(s));
      const double bump = std::exp(-0.5 * s * s / (g_ * g_));
      Ia += 0.5 * h * gl.w[q] * ph;
      Ib += 0.5 * h * gl.w[q] * bump * ph;
    }
  }
  const double num = std::imag(std::conj(e_out) * (Ia - delta_ * e_in));
  const double den = std::imag(std::conj(e_out) * Ib);
  beta_ = (std::abs(den) < 1e-14 * delta_) ? 0.0 : -num / den;
  if (1.0 - std::abs(beta_) < 0.05)
    fail(ErrorCode::SmoothingOverlap,
         "corner mollification is degenerate (turn too sharp for delta)");

  const Complex I = Ia + beta_ * Ib;
  exit_advance_ = std::real(std::conj(e_out) * (I - delta_ * e_in));

  prefix_ = build_prefix(entry_, -delta_, delta_,
                         [this](double s) { return velocity(s); });
}

double MollifiedCorner::theta(double s) const {
  return theta_in_ + dtheta_ * normal_cdf(s / g_);
}
double MollifiedCorner::dtheta_ds(double s) const {
  return dtheta_ * normal_pdf(s / g_) / g_;
}
double MollifiedCorner::sigma(double s) const {
  return 1.0 + beta_ * std::exp(-0.5 * s * s / (g_ * g_));
}
double MollifiedCorner::dsigma_ds(double s) const {
  return beta_ * std::exp(-0.5 * s * s / (g_ * g_)) * (-s / (g_ * g_));
}
Complex MollifiedCorner::velocity(double s) const {
  return sigma(s) * std::polar(1.0, theta(s));
}
Complex MollifiedCorner::position(double s) const {
  return prefix_position(prefix_, -delta_, delta_, s,
                         [this](double u) { return velocity(u); });
}

void MollifiedCorner::eval(double t, Complex& z, Complex& dz,
                           Complex& ddz) const {
  const double s = -delta_ + 2.0 * delta_ * t;
  z = position(s);
  const Complex ph = std::polar(1.0, theta(s));
  const double sg = sigma(s);
  dz = 2.0 * delta_ * sg * ph;
  const Complex dv = (dsigma_ds(s) + Complex(0.0, 1.0) * sg * dtheta_ds(s)) * ph;
  ddz = 4.0 * delta_ * delta_ * dv;
}

std::vector<double> MollifiedCorner::panel_breaks(double h_wall,
                                                  int refine) const {
  std::vector<double> s_breaks{-delta_};
  const double z4 = 4.0 * g_;
  append_zone(s_breaks, -delta_, -z4, std::min(h_wall, delta_ - z4), refine);
  append_zone(s_breaks, -z4, z4, 1.4 * g_, refine);
  append_zone(s_breaks, z4, delta_, std::min(h_wall, delta_ - z4), refine);
  return to_unit_param(s_breaks, -delta_, delta_);
}

// ---------------------------------------------------------------------------
// BlendedCap
// ---------------------------------------------------------------------------

BlendedCap::BlendedCap(Complex start_pt, double theta0, double width,
                       double blend)
    : start_(start_pt), theta0_(theta0), width_(width), r_(blend) {
  if (width <= 0.0 || blend <= 0.0)
    fail(ErrorCode::InvalidSkeleton, "cap width and blend must be positive");
  g_ = r_ / 8.0;

  const Complex e0 = std::polar(1.0, theta0_);
  const GaussRule& gl = gauss_legendre(kPartialQuad);

  // Total-turn normalization at trial arclength S.
  auto xi_total = [this](double S) {
    auto xi_term = [this](double s, double a) {
      return g_ * (normal_cdf_int((s - a) / g_) - normal_cdf_int(-a / g_));
    };
    return xi_term(S, r_) - xi_term(S, S - r_);
  };
  // Transverse landing span at trial S.
  auto landing = [&](double S) {
    const double km = M_PI / xi_total(S);
    auto theta_s = [&](double s) {
      const double xi =
          g_ * (normal_cdf_int((s - r_) / g_) - normal_cdf_int(-r_ / g_)) -
          g_ * (normal_cdf_int((s - (S - r_)) / g_) -
                normal_cdf_int(-(S - r_) / g_));
      return theta0_ + km * xi;
    };
    Complex I = 0.0;
    const double h = S / kPrefixCells;
    for (int k = 0; k < kPrefixCells; ++k) {
      const double a = k * h;
      for (int q = 0; q < gl.n(); ++q) {
        const double s = a + 0.5 * h * (gl.x[q] + 1.0);
        I += 0.5 * h * gl.w[q] * std::polar(1.0, theta_s(s));
      }
    }
    return I;
  };

  double s0 = 0.5 * M_PI * width_;
  double s1 = 1.06 * s0;
  double f0 = std::imag(std::conj(e0) * landing(s0)) - width_;
  double f1 = std::imag(std::conj(e0) * landing(s1)) - width_;
  for (int iter = 0; iter < 100 && std::abs(f1) > 1e-14 * width_; ++iter) {
    const double s2 = s1 - f1 * (s1 - s0) / (f1 - f0);
    s0 = s1;
    f0 = f1;
    s1 = s2;
    if (!(s1 > 0.2 * M_PI * width_ && s1 < 2.5 * M_PI * width_))
      fail(ErrorCode::InvalidSkeleton, "cap arclength solve diverged");
    f1 = std::imag(std::conj(e0) * landing(s1)) - width_;
  }
  if (std::abs(f1) > 1e-12 * width_)
    fail(ErrorCode::InvalidSkeleton, "cap arclength solve did not converge");
  S_ = s1;
  km_ = M_PI / xi_total(S_);

  const Complex I = landing(S_);
  if (std::abs(std::real(std::conj(e0) * I)) > 1e-11 * width_)
    fail(ErrorCode::InvalidSkeleton, "cap landing is not symmetric");

  prefix_ = build_prefix(start_, 0.0, S_, [this](double s) {
    return std::polar(1.0, theta(s));
  });
}

double BlendedCap::curvature(double s) const {
  return km_ * (normal_cdf((s - r_) / g_) - normal_cdf((s - (S_ - r_)) / g_));
}
double BlendedCap::dcurvature_ds(double s) const {
  return km_ *
         (normal_pdf((s - r_) / g_) - normal_pdf((s - (S_ - r_)) / g_)) / g_;
}
double BlendedCap::theta(double s) const {
  const double xi =
      g_ * (normal_cdf_int((s - r_) / g_) - normal_cdf_int(-r_ / g_)) -
      g_ * (normal_cdf_int((s - (S_ - r_)) / g_) -
            normal_cdf_int(-(S_ - r_) / g_));
  return theta0_ + km_ * xi;
}
Complex BlendedCap::position(double s) const {
  return prefix_position(prefix_, 0.0, S_, s, [this](double u) {
    return std::polar(1.0, theta(u));
  });
}

void BlendedCap::eval(double t, Complex& z, Complex& dz, Complex& ddz) const {
  const double s = S_ * t;
  z = position(s);
  const Complex ph = std::polar(1.0, theta(s));
  dz = S_ * ph;
  ddz = S_ * S_ * Complex(0.0, 1.0) * curvature(s) * ph;
}

std::vector<double> BlendedCap::panel_breaks(double h_wall, int refine) const {
  std::vector<double> s_breaks{0.0};
  const double z4 = 4.0 * g_;
  const double plateau_h = std::min(h_wall, 0.5 / km_);
  append_zone(s_breaks, 0.0, r_ - z4, std::min(h_wall, r_), refine);
  append_zone(s_breaks, r_ - z4, r_ + z4, 1.4 * g_, refine);
  append_zone(s_breaks, r_ + z4, S_ - r_ - z4, plateau_h, refine);
  append_zone(s_breaks, S_ - r_ - z4, S_ - r_ + z4, 1.4 * g_, refine);
  append_zone(s_breaks, S_ - r_ + z4, S_, std::min(h_wall, r_), refine);
  return to_unit_param(s_breaks, 0.0, S_);
}

// ---------------------------------------------------------------------------
// SemicircleCap
// ---------------------------------------------------------------------------

void SemicircleCap::eval(double t, Complex& z, Complex& dz,
                         Complex& ddz) const {
  const Complex e0 = std::polar(1.0, theta0_);
  const Complex center = start_ + Complex(0.0, 1.0) * radius_ * e0;
  const Complex arm = std::polar(radius_, theta0_ - 0.5 * M_PI + M_PI * t);
  z = center + arm;
  dz = Complex(0.0, M_PI) * arm;
  ddz = -M_PI * M_PI * arm;
}

std::vector<double> SemicircleCap::panel_breaks(double h_wall,
                                                int refine) const {
  const double len = M_PI * radius_;
  const double h = std::min(h_wall, 0.5 * radius_);
  const int n = std::max(4, static_cast<int>(std::ceil(len * refine / h)));
  std::vector<double> t(n + 1);
  for (int k = 0; k <= n; ++k) t[k] = static_cast<double>(k) / n;
  return t;
}

}  // namespace stokesnet
