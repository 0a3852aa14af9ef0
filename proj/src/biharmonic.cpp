#include "stokesnet/biharmonic.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "stokesnet/errors.hpp"
#include "stokesnet/quadrature.hpp"

namespace stokesnet {

namespace {
constexpr Complex kI{0.0, 1.0};
}

// ---------------------------------------------------------------------------
// SLOperator
// ---------------------------------------------------------------------------

SLOperator::SLOperator(const ComponentGeometry& geom) : geom_(&geom) {
  n_ = geom.node_count();
  x_.resize(n_);
  y_.resize(n_);
  ar_.resize(n_);
  ai_.resize(n_);
  diag1_.resize(n_);
  diag2_.resize(n_);
  ds_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    const PanelNode& nd = geom.nodes[i];
    x_[i] = nd.z.real();
    y_[i] = nd.z.imag();
    const Complex a = nd.weight * nd.dz;
    ar_[i] = a.real();
    ai_[i] = a.imag();
    const Complex ratio = nd.ddz / nd.dz;
    diag1_[i] = nd.weight * std::imag(0.5 * ratio) / M_PI;
    diag2_[i] = -(nd.weight / (2.0 * M_PI)) * (nd.dz / std::conj(nd.dz)) *
                std::imag(ratio);
    ds_[i] = std::abs(nd.dz) * nd.weight;
    perimeter_ += ds_[i];
  }
}

void SLOperator::hole_constants(const std::vector<Complex>& omega,
                                std::vector<Complex>& C,
                                std::vector<double>& b) const {
  const int M = geom_->hole_count();
  C.assign(M, 0.0);
  b.assign(M, 0.0);
  for (int k = 0; k < M; ++k) {
    const auto [lo, hi] = geom_->contour_ranges[k + 1];
    Complex ck = 0.0, bk = 0.0;
    for (int j = lo; j < hi; ++j) {
      ck += omega[j] * ds_[j];
      bk += std::conj(omega[j]) * geom_->nodes[j].dz * geom_->nodes[j].weight;
    }
    C[k] = ck;
    b[k] = 2.0 * bk.imag();
  }
}

std::vector<Complex> SLOperator::apply(const std::vector<Complex>& omega) const {
  if (static_cast<int>(omega.size()) != n_)
    fail(ErrorCode::DimensionMismatch, "density size does not match geometry");
  std::vector<double> omr(n_), omi(n_), outr(n_, 0.0), outi(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    omr[i] = omega[i].real();
    omi[i] = omega[i].imag();
  }
  active_kernels().sl_apply(n_, x_.data(), y_.data(), ar_.data(), ai_.data(),
                            omr.data(), omi.data(), outr.data(), outi.data());
  std::vector<Complex> out(n_);
  for (int i = 0; i < n_; ++i) {
    out[i] = omega[i] + Complex(outr[i], outi[i]) + diag1_[i] * omega[i] +
             diag2_[i] * std::conj(omega[i]);
  }

  const int M = geom_->hole_count();
  if (M > 0) {
    std::vector<Complex> C;
    std::vector<double> b;
    hole_constants(omega, C, b);
    for (int i = 0; i < n_; ++i) {
      const Complex t = geom_->nodes[i].z;
      Complex acc = 0.0;
      for (int k = 0; k < M; ++k) {
        const Complex d = t - geom_->hole_points[k];
        acc += 2.0 * C[k] * std::log(std::abs(d)) +
               std::conj(C[k]) * d / std::conj(d) + b[k] / std::conj(d);
      }
      out[i] += acc;
    }
  }

  return out;
}

std::vector<Complex> apply_sl_operator(const SLOperator& op,
                                       const SLDensity& density) {
  return op.apply(density.omega);
}

// ---------------------------------------------------------------------------
// Boundary data helpers
// ---------------------------------------------------------------------------

double boundary_net_flux(const ComponentGeometry& geom,
                         const BoundaryData& data) {
  // flux = integral of u.n ds = integral of dW = Re[h conj(dz)] w
  double flux = 0.0;
  for (int i = 0; i < geom.node_count(); ++i)
    flux += std::real(data.h[i] * std::conj(geom.nodes[i].dz)) *
            geom.nodes[i].weight;
  return flux;
}

BoundaryData boundary_data_from_velocity(const ComponentGeometry& geom,
                                         const std::vector<Complex>& uv) {
  if (static_cast<int>(uv.size()) != geom.node_count())
    fail(ErrorCode::DimensionMismatch, "velocity data size mismatch");
  BoundaryData d;
  d.h.resize(uv.size());
  for (size_t i = 0; i < uv.size(); ++i) d.h[i] = kI * uv[i];
  return d;
}

// ---------------------------------------------------------------------------
// solve_bvp
// ---------------------------------------------------------------------------

SLDensity solve_bvp(const ComponentGeometry& geom, const BoundaryData& data,
                    const SolverConfig& cfg, const SLOperator* prebuilt,
                    GmresResult* stats) {
  const int n = geom.node_count();
  if (static_cast<int>(data.h.size()) != n)
    fail(ErrorCode::DimensionMismatch, "boundary data size mismatch");

  // Compatibility: net flux must vanish relative to the largest port flux.
  {
    const double net = boundary_net_flux(geom, data);
    double port_scale = 0.0;
    for (const Port& p : geom.ports) {
      double f = 0.0;
      for (int i = 0; i < n; ++i)
        if (geom.cap_port_of[i] == p.id)
          f += std::real(data.h[i] * std::conj(geom.nodes[i].dz)) *
               geom.nodes[i].weight;
      port_scale = std::max(port_scale, std::abs(f));
    }
    double habs = 0.0;
    for (const Complex& h : data.h) habs = std::max(habs, std::abs(h));
    const double scale = std::max(port_scale, habs * geom.width);
    if (std::abs(net) > 1e-12 * std::max(scale, 1e-30) && scale > 0.0)
      fail(ErrorCode::IncompatibleData,
           "net boundary flux " + std::to_string(net) +
               " violates the compatibility condition");
  }

  std::optional<SLOperator> local_op;
  if (!prebuilt) local_op.emplace(geom);
  const SLOperator& op = prebuilt ? *prebuilt : *local_op;

  Eigen::VectorXd b(2 * n);
  for (int i = 0; i < n; ++i) {
    b[i] = data.h[i].real();
    b[n + i] = data.h[i].imag();
  }

  std::vector<Complex> om(n), Aom;
  auto apply = [&](const Eigen::VectorXd& v, Eigen::VectorXd& out) {
    for (int i = 0; i < n; ++i) om[i] = Complex(v[i], v[n + i]);
    Aom = op.apply(om);
    for (int i = 0; i < n; ++i) {
      out[i] = Aom[i].real();
      out[n + i] = Aom[i].imag();
    }
  };

  Eigen::VectorXd xsol;
  GmresResult res = gmres(apply, b, xsol, cfg.tol, cfg.max_iter);
  if (stats) *stats = res;
  if (!res.converged)
    fail(ErrorCode::NoConvergence,
         "GMRES reached " + std::to_string(res.iterations) +
             " iterations with residual " +
             std::to_string(res.relative_residual));

  SLDensity density;
  density.omega.resize(n);
  for (int i = 0; i < n; ++i) density.omega[i] = Complex(xsol[i], xsol[n + i]);
  op.hole_constants(density.omega, density.hole_C, density.hole_b);
  density.hole_points = geom.hole_points;
  return density;
}

// ---------------------------------------------------------------------------
// Field evaluation
// ---------------------------------------------------------------------------

void check_eval_point(const ComponentGeometry& geom, Complex z, double factor) {
  if (!point_in_domain(geom, z))
    fail(ErrorCode::PointOutsideDomain, "evaluation point is outside the fluid");
  for (int i = 0; i < geom.node_count(); ++i) {
    const PanelNode& nd = geom.nodes[i];
    const double spacing = std::abs(nd.dz) * nd.weight;
    if (std::abs(z - nd.z) < factor * spacing)
      fail(ErrorCode::PointTooCloseToBoundary,
           "evaluation point is within the near-boundary exclusion zone");
  }
}

std::vector<FieldSample> eval_fields(const ComponentGeometry& geom,
                                     const SLDensity& density,
                                     const std::vector<Complex>& points,
                                     double mu, const SolverConfig& cfg,
                                     bool check) {
  const int n = geom.node_count();
  if (static_cast<int>(density.omega.size()) != n)
    fail(ErrorCode::DimensionMismatch, "density size mismatch");
  if (check)
    for (const Complex& z : points)
      check_eval_point(geom, z, cfg.near_exclusion_factor);

  // Per-source moments.
  std::vector<double> xs(n), ys(n), pr(n), pi(n), qr(n), qi(n), sr(n), si(n);
  for (int j = 0; j < n; ++j) {
    const PanelNode& nd = geom.nodes[j];
    const Complex a = nd.weight * nd.dz;
    const Complex w = density.omega[j];
    const Complex p = a * w;
    const Complex q = std::conj(w) * a + w * std::conj(a);
    const Complex s = std::conj(nd.z) * p;
    xs[j] = nd.z.real();
    ys[j] = nd.z.imag();
    pr[j] = p.real();
    pi[j] = p.imag();
    qr[j] = q.real();
    qi[j] = q.imag();
    sr[j] = s.real();
    si[j] = s.imag();
  }
  const int nt = static_cast<int>(points.size());
  std::vector<double> tx(nt), ty(nt), s1r(nt), s1i(nt), s2r(nt), s2i(nt),
      s3r(nt), s3i(nt);
  for (int t = 0; t < nt; ++t) {
    tx[t] = points[t].real();
    ty[t] = points[t].imag();
  }
  active_kernels().goursat_accum(n, xs.data(), ys.data(), pr.data(), pi.data(),
                                 qr.data(), qi.data(), sr.data(), si.data(),
                                 nt, tx.data(), ty.data(), s1r.data(),
                                 s1i.data(), s2r.data(), s2i.data(), s3r.data(),
                                 s3i.data());

  const Complex inv2pii = 1.0 / (2.0 * M_PI * kI);
  const int M = geom.hole_count();
  std::vector<FieldSample> out(nt);
  for (int t = 0; t < nt; ++t) {
    Complex phi = inv2pii * Complex(s1r[t], s1i[t]);
    Complex dphi = inv2pii * Complex(s2r[t], s2i[t]);
    Complex psi = inv2pii * Complex(s3r[t], s3i[t]);
    for (int k = 0; k < M; ++k) {
      const Complex C = density.hole_C[k];
      const double bk = density.hole_b[k];
      const Complex d = points[t] - density.hole_points[k];
      const Complex lg = std::log(d);
      phi += C * lg;
      dphi += C / d;
      psi += bk / d + std::conj(C) * lg -
             C * std::conj(density.hole_points[k]) / d;
    }
    FieldSample& f = out[t];
    f.phi = phi;
    f.dphi = dphi;
    f.psi = psi;
    f.velocity =
        -kI * (phi + points[t] * std::conj(dphi) + std::conj(psi));
    f.pressure = -4.0 * mu * dphi.imag();
    f.vorticity = 4.0 * dphi.real();
  }
  return out;
}

FieldSample eval_field(const ComponentGeometry& geom, const SLDensity& density,
                       Complex z, double mu, const SolverConfig& cfg) {
  return eval_fields(geom, density, {z}, mu, cfg).front();
}

FieldSample eval_goursat(const ComponentGeometry& geom,
                         const SLDensity& density, Complex z,
                         const SolverConfig& cfg) {
  return eval_field(geom, density, z, cfg.mu, cfg);
}

Complex eval_velocity(const ComponentGeometry& geom, const SLDensity& density,
                      Complex z, const SolverConfig& cfg) {
  return eval_field(geom, density, z, cfg.mu, cfg).velocity;
}

std::pair<double, double> eval_pressure_vorticity(
    const ComponentGeometry& geom, const SLDensity& density, Complex z,
    double mu, const SolverConfig& cfg) {
  const FieldSample f = eval_field(geom, density, z, mu, cfg);
  return {f.pressure, f.vorticity};
}

// ---------------------------------------------------------------------------
// port_flux
// ---------------------------------------------------------------------------

namespace {

double legendre(int k, double x) {
  double p0 = 1.0, p1 = x;
  if (k == 0) return p0;
  if (k == 1) return p1;
  for (int j = 2; j <= k; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

double port_flux(const ComponentGeometry& geom, const SLDensity& density,
                 const Port& port, const SolverConfig& cfg, int samples) {
  const double L = port.half_width;
  const double band = 0.8;
  const GaussRule& gl = gauss_legendre(samples);
  std::vector<Complex> pts(samples);
  const Complex transverse = kI * port.axis;
  for (int i = 0; i < samples; ++i)
    pts[i] = port.center + band * L * gl.x[i] * transverse;
  const std::vector<FieldSample> f =
      eval_fields(geom, density, pts, cfg.mu, cfg);

  // Fit u.axis = (1 - (y/L)^2) * sum c_k P_k(y/L) by least squares on the
  // safe band, then integrate the fit exactly over the whole chord.
  const int deg = std::min(16, samples / 2);
  Eigen::MatrixXd A(samples, deg);
  Eigen::VectorXd rhs(samples);
  for (int i = 0; i < samples; ++i) {
    const double xi = band * gl.x[i];  // y/L
    for (int k = 0; k < deg; ++k)
      A(i, k) = (1.0 - xi * xi) * legendre(k, xi);
    rhs[i] = std::real(std::conj(port.axis) * f[i].velocity);
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(rhs);

  // I_k = int_{-1}^{1} (1-x^2) P_k(x) dx, exact by high-order quadrature.
  const GaussRule& gq = gauss_legendre(40);
  double flux = 0.0;
  for (int k = 0; k < deg; ++k) {
    double Ik = 0.0;
    for (int q = 0; q < gq.n(); ++q)
      Ik += gq.w[q] * (1.0 - gq.x[q] * gq.x[q]) * legendre(k, gq.x[q]);
    flux += c[k] * Ik;
  }
  return flux * L;
}

}  // namespace stokesnet
