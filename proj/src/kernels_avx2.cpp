#include "stokesnet/simd.hpp"

#ifdef STOKESNET_HAVE_AVX2_TU

#include <immintrin.h>

#include <cmath>

namespace stokesnet {
namespace {

constexpr double kInvPi = 1.0 / M_PI;
constexpr double kInv2Pi = 1.0 / (2.0 * M_PI);

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void sl_apply_avx2(int n, const double* x, const double* y, const double* ar,
                   const double* ai, const double* omr, const double* omi,
                   double* outr, double* outi) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d inv_pi = _mm256_set1_pd(kInvPi);
  const __m256d inv_2pi = _mm256_set1_pd(kInv2Pi);
  const int n4 = n & ~3;
  for (int i = 0; i < n; ++i) {
    const __m256d xi = _mm256_set1_pd(x[i]);
    const __m256d yi = _mm256_set1_pd(y[i]);
    __m256d accr = zero, acci = zero;
    int j = 0;
    for (; j < n4; j += 4) {
      const __m256d dr = _mm256_sub_pd(_mm256_loadu_pd(x + j), xi);
      const __m256d di = _mm256_sub_pd(_mm256_loadu_pd(y + j), yi);
      const __m256d r2 = _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di));
      const __m256d mask = _mm256_cmp_pd(r2, zero, _CMP_NEQ_OQ);
      // guarded reciprocal: substitute 1.0 where d == 0, mask at the end
      const __m256d r2s =
          _mm256_blendv_pd(_mm256_set1_pd(1.0), r2, mask);
      const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), r2s);
      const __m256d arj = _mm256_loadu_pd(ar + j);
      const __m256d aij = _mm256_loadu_pd(ai + j);
      // k1 = (ai*dr - ar*di) * inv / pi
      const __m256d k1 = _mm256_mul_pd(
          _mm256_mul_pd(
              _mm256_fmsub_pd(aij, dr, _mm256_mul_pd(arj, di)), inv),
          inv_pi);
      const __m256d er = _mm256_mul_pd(dr, inv);
      const __m256d ei = _mm256_mul_pd(di, inv);
      const __m256d Ar = _mm256_fmsub_pd(arj, er, _mm256_mul_pd(aij, ei));
      const __m256d Ai = _mm256_fmadd_pd(arj, ei, _mm256_mul_pd(aij, er));
      const __m256d e2r = _mm256_fmsub_pd(er, er, _mm256_mul_pd(ei, ei));
      const __m256d e2i = _mm256_mul_pd(_mm256_set1_pd(2.0),
                                        _mm256_mul_pd(er, ei));
      const __m256d der = _mm256_fmsub_pd(dr, e2r, _mm256_mul_pd(di, e2i));
      const __m256d dei = _mm256_fmadd_pd(dr, e2i, _mm256_mul_pd(di, e2r));
      const __m256d Br = _mm256_fmadd_pd(arj, der, _mm256_mul_pd(aij, dei));
      const __m256d Bi = _mm256_fmsub_pd(arj, dei, _mm256_mul_pd(aij, der));
      const __m256d Cr = _mm256_sub_pd(Ar, Br);
      const __m256d Ci = _mm256_sub_pd(Ai, Bi);
      const __m256d k2r =
          _mm256_mul_pd(_mm256_sub_pd(zero, Ci), inv_2pi);
      const __m256d k2i = _mm256_mul_pd(Cr, inv_2pi);
      const __m256d wr = _mm256_loadu_pd(omr + j);
      const __m256d wi = _mm256_loadu_pd(omi + j);
      // re: k1*wr + k2r*wr + k2i*wi ; im: k1*wi + k2i*wr - k2r*wi
      __m256d cr = _mm256_fmadd_pd(k1, wr, _mm256_fmadd_pd(k2r, wr,
                                   _mm256_mul_pd(k2i, wi)));
      __m256d ci = _mm256_fmadd_pd(k1, wi, _mm256_fmsub_pd(k2i, wr,
                                   _mm256_mul_pd(k2r, wi)));
      accr = _mm256_add_pd(accr, _mm256_and_pd(cr, mask));
      acci = _mm256_add_pd(acci, _mm256_and_pd(ci, mask));
    }
    double sr = hsum(accr), si = hsum(acci);
    for (; j < n; ++j) {
      const double dr = x[j] - x[i], di = y[j] - y[i];
      const double r2 = dr * dr + di * di;
      if (r2 == 0.0) continue;
      const double inv = 1.0 / r2;
      const double k1 = (ai[j] * dr - ar[j] * di) * inv * kInvPi;
      const double er = dr * inv, ei = di * inv;
      const double Ar = ar[j] * er - ai[j] * ei;
      const double Ai = ar[j] * ei + ai[j] * er;
      const double e2r = er * er - ei * ei, e2i = 2.0 * er * ei;
      const double der = dr * e2r - di * e2i, dei = dr * e2i + di * e2r;
      const double Br = ar[j] * der + ai[j] * dei;
      const double Bi = ar[j] * dei - ai[j] * der;
      const double Cr = Ar - Br, Ci = Ai - Bi;
      const double k2r = -Ci * kInv2Pi, k2i = Cr * kInv2Pi;
      sr += k1 * omr[j] + k2r * omr[j] + k2i * omi[j];
      si += k1 * omi[j] + k2i * omr[j] - k2r * omi[j];
    }
    outr[i] += sr;
    outi[i] += si;
  }
}

void goursat_accum_avx2(int nsrc, const double* x, const double* y,
                        const double* pr, const double* pi, const double* qr,
                        const double* qi, const double* sr, const double* si,
                        int ntgt, const double* tx, const double* ty,
                        double* s1r, double* s1i, double* s2r, double* s2i,
                        double* s3r, double* s3i) {
  const __m256d one = _mm256_set1_pd(1.0);
  const int n4 = nsrc & ~3;
  for (int t = 0; t < ntgt; ++t) {
    const __m256d xt = _mm256_set1_pd(tx[t]);
    const __m256d yt = _mm256_set1_pd(ty[t]);
    __m256d a1r = _mm256_setzero_pd(), a1i = _mm256_setzero_pd();
    __m256d a2r = _mm256_setzero_pd(), a2i = _mm256_setzero_pd();
    __m256d a3r = _mm256_setzero_pd(), a3i = _mm256_setzero_pd();
    int j = 0;
    for (; j < n4; j += 4) {
      const __m256d dr = _mm256_sub_pd(_mm256_loadu_pd(x + j), xt);
      const __m256d di = _mm256_sub_pd(_mm256_loadu_pd(y + j), yt);
      const __m256d inv = _mm256_div_pd(
          one, _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di)));
      const __m256d g1r = _mm256_mul_pd(dr, inv);
      const __m256d g1i = _mm256_sub_pd(_mm256_setzero_pd(),
                                        _mm256_mul_pd(di, inv));
      const __m256d g2r = _mm256_fmsub_pd(g1r, g1r, _mm256_mul_pd(g1i, g1i));
      const __m256d g2i = _mm256_mul_pd(_mm256_set1_pd(2.0),
                                        _mm256_mul_pd(g1r, g1i));
      const __m256d prj = _mm256_loadu_pd(pr + j);
      const __m256d pij = _mm256_loadu_pd(pi + j);
      a1r = _mm256_add_pd(a1r, _mm256_fmsub_pd(prj, g1r,
                                               _mm256_mul_pd(pij, g1i)));
      a1i = _mm256_add_pd(a1i, _mm256_fmadd_pd(prj, g1i,
                                               _mm256_mul_pd(pij, g1r)));
      a2r = _mm256_add_pd(a2r, _mm256_fmsub_pd(prj, g2r,
                                               _mm256_mul_pd(pij, g2i)));
      a2i = _mm256_add_pd(a2i, _mm256_fmadd_pd(prj, g2i,
                                               _mm256_mul_pd(pij, g2r)));
      const __m256d qrj = _mm256_loadu_pd(qr + j);
      const __m256d qij = _mm256_loadu_pd(qi + j);
      const __m256d srj = _mm256_loadu_pd(sr + j);
      const __m256d sij = _mm256_loadu_pd(si + j);
      const __m256d t3r = _mm256_sub_pd(
          _mm256_fmsub_pd(qrj, g1r, _mm256_mul_pd(qij, g1i)),
          _mm256_fmsub_pd(srj, g2r, _mm256_mul_pd(sij, g2i)));
      const __m256d t3i = _mm256_sub_pd(
          _mm256_fmadd_pd(qrj, g1i, _mm256_mul_pd(qij, g1r)),
          _mm256_fmadd_pd(srj, g2i, _mm256_mul_pd(sij, g2r)));
      a3r = _mm256_add_pd(a3r, t3r);
      a3i = _mm256_add_pd(a3i, t3i);
    }
    double b1r = hsum(a1r), b1i = hsum(a1i);
    double b2r = hsum(a2r), b2i = hsum(a2i);
    double b3r = hsum(a3r), b3i = hsum(a3i);
    for (; j < nsrc; ++j) {
      const double dr = x[j] - tx[t], di = y[j] - ty[t];
      const double inv = 1.0 / (dr * dr + di * di);
      const double g1r = dr * inv, g1i = -di * inv;
      const double g2r = g1r * g1r - g1i * g1i, g2i = 2.0 * g1r * g1i;
      b1r += pr[j] * g1r - pi[j] * g1i;
      b1i += pr[j] * g1i + pi[j] * g1r;
      b2r += pr[j] * g2r - pi[j] * g2i;
      b2i += pr[j] * g2i + pi[j] * g2r;
      b3r += qr[j] * g1r - qi[j] * g1i - (sr[j] * g2r - si[j] * g2i);
      b3i += qr[j] * g1i + qi[j] * g1r - (sr[j] * g2i + si[j] * g2r);
    }
    s1r[t] = b1r;
    s1i[t] = b1i;
    s2r[t] = b2r;
    s2i[t] = b2i;
    s3r[t] = b3r;
    s3i[t] = b3i;
  }
}

}  // namespace

namespace detail {
const Kernels kernels_avx2{sl_apply_avx2, goursat_accum_avx2};
}  // namespace detail

}  // namespace stokesnet

#endif  // STOKESNET_HAVE_AVX2_TU
