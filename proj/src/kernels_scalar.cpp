#include <cmath>

#include "stokesnet/simd.hpp"

namespace stokesnet {
namespace {

constexpr double kInvPi = 1.0 / M_PI;
constexpr double kInv2Pi = 1.0 / (2.0 * M_PI);

void sl_apply_scalar(int n, const double* x, const double* y, const double* ar,
                     const double* ai, const double* omr, const double* omi,
                     double* outr, double* outi) {
  for (int i = 0; i < n; ++i) {
    const double xi = x[i], yi = y[i];
    double accr = 0.0, acci = 0.0;
    for (int j = 0; j < n; ++j) {
      const double dr = x[j] - xi, di = y[j] - yi;
      const double r2 = dr * dr + di * di;
      if (r2 == 0.0) continue;
      const double inv = 1.0 / r2;
      // K1 = Im[a conj(d)] * inv / pi
      const double k1 = (ai[j] * dr - ar[j] * di) * inv * kInvPi;
      // e = 1/conj(d) = d * inv
      const double er = dr * inv, ei = di * inv;
      // A = a*e
      const double Ar = ar[j] * er - ai[j] * ei;
      const double Ai = ar[j] * ei + ai[j] * er;
      // e^2, d*e^2
      const double e2r = er * er - ei * ei, e2i = 2.0 * er * ei;
      const double der = dr * e2r - di * e2i, dei = dr * e2i + di * e2r;
      // B = conj(a) * (d e^2)
      const double Br = ar[j] * der + ai[j] * dei;
      const double Bi = ar[j] * dei - ai[j] * der;
      const double Cr = Ar - Br, Ci = Ai - Bi;
      const double k2r = -Ci * kInv2Pi, k2i = Cr * kInv2Pi;
      accr += k1 * omr[j] + k2r * omr[j] + k2i * omi[j];
      acci += k1 * omi[j] + k2i * omr[j] - k2r * omi[j];
    }
    outr[i] += accr;
    outi[i] += acci;
  }
}

void goursat_accum_scalar(int nsrc, const double* x, const double* y,
                          const double* pr, const double* pi, const double* qr,
                          const double* qi, const double* sr, const double* si,
                          int ntgt, const double* tx, const double* ty,
                          double* s1r, double* s1i, double* s2r, double* s2i,
                          double* s3r, double* s3i) {
  for (int t = 0; t < ntgt; ++t) {
    const double xt = tx[t], yt = ty[t];
    double a1r = 0.0, a1i = 0.0, a2r = 0.0, a2i = 0.0, a3r = 0.0, a3i = 0.0;
    for (int j = 0; j < nsrc; ++j) {
      const double dr = x[j] - xt, di = y[j] - yt;
      const double inv = 1.0 / (dr * dr + di * di);
      // g1 = 1/d = conj(d)*inv
      const double g1r = dr * inv, g1i = -di * inv;
      const double g2r = g1r * g1r - g1i * g1i, g2i = 2.0 * g1r * g1i;
      a1r += pr[j] * g1r - pi[j] * g1i;
      a1i += pr[j] * g1i + pi[j] * g1r;
      a2r += pr[j] * g2r - pi[j] * g2i;
      a2i += pr[j] * g2i + pi[j] * g2r;
      a3r += qr[j] * g1r - qi[j] * g1i - (sr[j] * g2r - si[j] * g2i);
      a3i += qr[j] * g1i + qi[j] * g1r - (sr[j] * g2i + si[j] * g2r);
    }
    s1r[t] = a1r;
    s1i[t] = a1i;
    s2r[t] = a2r;
    s2i[t] = a2i;
    s3r[t] = a3r;
    s3i[t] = a3i;
  }
}

}  // namespace

namespace detail {
const Kernels kernels_scalar{sl_apply_scalar, goursat_accum_scalar};
}  // namespace detail

}  // namespace stokesnet
