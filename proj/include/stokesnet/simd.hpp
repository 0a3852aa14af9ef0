#pragma once

namespace stokesnet {

enum class SimdLevel { Scalar, Avx2 };

/// Kernel variants for the dense inner loops. All take SoA arrays; complex
/// values are split into (re, im) pairs.
struct Kernels {
  /// Dense part of the boundary operator: for every node i accumulate
  ///   out_i = sum_{j != i} K1_ij * om_j + K2_ij * conj(om_j)
  /// with K1 = Im[a_j / d] / pi (real) and
  /// K2 = (i/2pi) * (a_j e - conj(a_j) d e^2), d = z_j - z_i, e = 1/conj(d).
  /// a_j = w_j z'_j. The j == i term is skipped; diagonal limits are added
  /// by the caller.
  void (*sl_apply)(int n, const double* x, const double* y, const double* ar,
                   const double* ai, const double* omr, const double* omi,
                   double* outr, double* outi);

  /// Goursat sums at interior targets. With per-source moments
  ///   p_j = a_j om_j, q_j = conj(om_j) a_j + om_j conj(a_j),
  ///   s_j = conj(z_j) p_j,
  /// accumulates per target (d = z_j - z_t):
  ///   sum1 = sum p_j / d, sum2 = sum p_j / d^2, sum3 = sum (q_j/d - s_j/d^2).
  /// The caller divides by 2*pi*i.
  void (*goursat_accum)(int nsrc, const double* x, const double* y,
                        const double* pr, const double* pi, const double* qr,
                        const double* qi, const double* sr, const double* si,
                        int ntgt, const double* tx, const double* ty,
                        double* s1r, double* s1i, double* s2r, double* s2i,
                        double* s3r, double* s3i);
};

SimdLevel active_simd_level();
void set_simd_level(SimdLevel level);
const char* simd_level_name(SimdLevel level);
const Kernels& active_kernels();
const Kernels& kernels_for(SimdLevel level);

namespace detail {
extern const Kernels kernels_scalar;
#ifdef STOKESNET_HAVE_AVX2_TU
extern const Kernels kernels_avx2;
#endif
}  // namespace detail

}  // namespace stokesnet
