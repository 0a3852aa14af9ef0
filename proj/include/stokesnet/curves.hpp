#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace stokesnet {

using Complex = std::complex<double>;

/// Orientation-preserving rigid motion z -> e^{i theta} z + c.
struct Placement {
  double theta = 0.0;
  Complex c = {0.0, 0.0};

  Complex rotor() const { return std::polar(1.0, theta); }
  Complex apply(Complex z) const { return rotor() * z + c; }
  Complex apply_vector(Complex v) const { return rotor() * v; }
  Placement inverse() const {
    return Placement{-theta, -std::polar(1.0, -theta) * c};
  }
  /// this ∘ other: apply `other` first, then this.
  Placement compose(const Placement& other) const {
    return Placement{theta + other.theta, rotor() * other.c + c};
  }
};

enum class PieceKind { Wall, Corner, Cap };

/// Smooth parametric boundary piece on t in [0, 1], traversed with the fluid
/// on the left. Derivatives are with respect to the parameter t.
class Curve {
 public:
  virtual ~Curve() = default;
  virtual void eval(double t, Complex& z, Complex& dz, Complex& ddz) const = 0;
  /// Panel boundaries in t (ascending, 0 and 1 included). `h_wall` is the
  /// target panel arclength away from curvature features; `refine` divides
  /// every target length.
  virtual std::vector<double> panel_breaks(double h_wall, int refine) const = 0;

  Complex start() const {
    Complex z, d, dd;
    eval(0.0, z, d, dd);
    return z;
  }
  Complex endpoint() const {
    Complex z, d, dd;
    eval(1.0, z, d, dd);
    return z;
  }
  double arclength() const;
};

class LineSegment : public Curve {
 public:
  LineSegment(Complex a, Complex b) : a_(a), b_(b) {}
  void eval(double t, Complex& z, Complex& dz, Complex& ddz) const override {
    z = a_ + t * (b_ - a_);
    dz = b_ - a_;
    ddz = 0.0;
  }
  std::vector<double> panel_breaks(double h_wall, int refine) const override;

 private:
  Complex a_, b_;
};

/// Corner mollification: the tangent angle sweeps from theta_in to
/// theta_in + dtheta through a Gaussian-CDF profile of scale g = delta/8, so
/// the curve meets the adjacent walls with all derivatives matched to machine
/// precision. A Gaussian speed bump (amplitude beta, solved at construction)
/// places the exit exactly on the outgoing wall line.
class MollifiedCorner : public Curve {
 public:
  /// `entry` lies on the incoming wall at arclength delta before the corner
  /// point; e_in = e^{i theta_in} is the walking direction.
  MollifiedCorner(Complex entry, double theta_in, double dtheta, double delta);

  void eval(double t, Complex& z, Complex& dz, Complex& ddz) const override;
  std::vector<double> panel_breaks(double h_wall, int refine) const override;

  /// Signed advance of the exit point past the corner point along e_out.
  double exit_advance() const { return exit_advance_; }

 private:
  double theta(double s) const;
  double dtheta_ds(double s) const;
  double sigma(double s) const;
  double dsigma_ds(double s) const;
  Complex velocity(double s) const;  // sigma * e^{i theta}
  Complex position(double s) const;

  Complex entry_;
  double theta_in_, dtheta_, delta_, g_;
  double beta_ = 0.0;
  double exit_advance_ = 0.0;
  std::vector<Complex> prefix_;  // cumulative position on a uniform s-grid
};

/// Outward-bulging smooth cap across a channel mouth of the given width. The
/// curvature profile ramps 0 -> k_max -> 0 through Gaussian-CDF blends of
/// length `blend` at both junctions (g = blend/8), with total turn pi. The
/// arc length is solved so the cap lands exactly on the far wall end.
class BlendedCap : public Curve {
 public:
  BlendedCap(Complex start_pt, double theta0, double width, double blend);

  void eval(double t, Complex& z, Complex& dz, Complex& ddz) const override;
  std::vector<double> panel_breaks(double h_wall, int refine) const override;

 private:
  double curvature(double s) const;
  double dcurvature_ds(double s) const;
  double theta(double s) const;
  Complex position(double s) const;

  Complex start_;
  double theta0_, width_, r_, g_;
  double S_ = 0.0, km_ = 0.0;
  std::vector<Complex> prefix_;
};

/// Exact semicircular cap of radius width/2 (curvature jumps at the
/// junctions; kept for geometries with a closed-form perimeter).
class SemicircleCap : public Curve {
 public:
  SemicircleCap(Complex start_pt, double theta0, double width)
      : start_(start_pt), theta0_(theta0), radius_(0.5 * width) {}
  void eval(double t, Complex& z, Complex& dz, Complex& ddz) const override;
  std::vector<double> panel_breaks(double h_wall, int refine) const override;

 private:
  Complex start_;
  double theta0_, radius_;
};

class PlacedCurve : public Curve {
 public:
  PlacedCurve(std::shared_ptr<const Curve> base, Placement placement)
      : base_(std::move(base)), placement_(placement) {}
  void eval(double t, Complex& z, Complex& dz, Complex& ddz) const override {
    base_->eval(t, z, dz, ddz);
    Complex r = placement_.rotor();
    z = r * z + placement_.c;
    dz *= r;
    ddz *= r;
  }
  std::vector<double> panel_breaks(double h_wall, int refine) const override {
    return base_->panel_breaks(h_wall, refine);
  }

 private:
  std::shared_ptr<const Curve> base_;
  Placement placement_;
};

/// One boundary piece of a closed contour, in traversal order.
struct ChainPiece {
  std::shared_ptr<const Curve> curve;
  PieceKind kind = PieceKind::Wall;
  int port_id = -1;  // >= 0 only for the cap of an open port
};

using CurveChain = std::vector<ChainPiece>;

/// Standard normal CDF/PDF used by the mollifiers.
double normal_cdf(double x);
double normal_pdf(double x);

}  // namespace stokesnet
