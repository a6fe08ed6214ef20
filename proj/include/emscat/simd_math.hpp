#pragma once

// Vectorized sin/cos for the AVX2 kernels.  Included only from translation
// units compiled with -mavx2 -mfma.

#include <immintrin.h>

namespace emscat::detail {

// Simultaneous sin(x) and cos(x) for four doubles.
//
// Argument reduction: x = n (pi/2) + r with |r| <= pi/4, using a two-part
// representation of pi/2 (33 + 53 significant bits) so n * pi/2 is removed
// exactly for |n| < 2^20; accurate for |x| up to ~1e6, far beyond the phase
// magnitudes the field kernels produce.  On |r| <= pi/4 plain Taylor series
// to r^15 (sin) and r^16 (cos) truncate below 5e-17 absolute error, so no
// minimax fit is needed.  The quadrant n mod 4 then permutes/signs the pair.
inline void sincos4(__m256d x, __m256d* s_out, __m256d* c_out) {
  const __m256d two_over_pi = _mm256_set1_pd(6.36619772367581382433e-01);
  const __m256d pio2_1 = _mm256_set1_pd(1.57079632673412561417e+00);
  const __m256d pio2_1t = _mm256_set1_pd(6.07710050650619224932e-11);

  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, two_over_pi),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, pio2_1, x);
  r = _mm256_fnmadd_pd(n, pio2_1t, r);
  const __m256d z = _mm256_mul_pd(r, r);

  // sin(r)/r on z = r^2: 1 - z/3! + z^2/5! - ... - z^7/15!
  __m256d sp = _mm256_set1_pd(-7.6471637318198164759e-13);
  sp = _mm256_fmadd_pd(sp, z, _mm256_set1_pd(1.6059043836821614599e-10));
  sp = _mm256_fmadd_pd(sp, z, _mm256_set1_pd(-2.5052108385441718775e-08));
  sp = _mm256_fmadd_pd(sp, z, _mm256_set1_pd(2.7557319223985890653e-06));
  sp = _mm256_fmadd_pd(sp, z, _mm256_set1_pd(-1.9841269841269841270e-04));
  sp = _mm256_fmadd_pd(sp, z, _mm256_set1_pd(8.3333333333333333333e-03));
  sp = _mm256_fmadd_pd(sp, z, _mm256_set1_pd(-1.6666666666666666667e-01));
  sp = _mm256_fmadd_pd(sp, z, _mm256_set1_pd(1.0));
  const __m256d sinr = _mm256_mul_pd(sp, r);

  // cos(r) on z: 1 - z/2! + z^2/4! - ... + z^8/16!
  __m256d cp = _mm256_set1_pd(4.7794773323873852974e-14);
  cp = _mm256_fmadd_pd(cp, z, _mm256_set1_pd(-1.1470745597729724714e-11));
  cp = _mm256_fmadd_pd(cp, z, _mm256_set1_pd(2.0876756987868098979e-09));
  cp = _mm256_fmadd_pd(cp, z, _mm256_set1_pd(-2.7557319223985890653e-07));
  cp = _mm256_fmadd_pd(cp, z, _mm256_set1_pd(2.4801587301587301587e-05));
  cp = _mm256_fmadd_pd(cp, z, _mm256_set1_pd(-1.3888888888888888889e-03));
  cp = _mm256_fmadd_pd(cp, z, _mm256_set1_pd(4.1666666666666666667e-02));
  cp = _mm256_fmadd_pd(cp, z, _mm256_set1_pd(-5.0e-01));
  cp = _mm256_fmadd_pd(cp, z, _mm256_set1_pd(1.0));
  const __m256d cosr = cp;

  // Quadrant logic on q = n mod 4 (as 64-bit lanes):
  //   q & 1      -> swap sin/cos
  //   q & 2      -> negate sin
  //   (q+1) & 2  -> negate cos
  const __m128i n32 = _mm256_cvtpd_epi32(n);
  const __m256i q = _mm256_cvtepi32_epi64(n32);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);

  const __m256i swap_bits = _mm256_and_si256(q, one);
  const __m256d swap_mask =
      _mm256_castsi256_pd(_mm256_sub_epi64(_mm256_setzero_si256(), swap_bits));

  const __m256i ssign_bits = _mm256_and_si256(q, two);             // 0 or 2
  const __m256i csign_bits = _mm256_and_si256(_mm256_add_epi64(q, one), two);
  const __m256d ssign = _mm256_castsi256_pd(_mm256_slli_epi64(ssign_bits, 62));
  const __m256d csign = _mm256_castsi256_pd(_mm256_slli_epi64(csign_bits, 62));

  const __m256d s_base = _mm256_blendv_pd(sinr, cosr, swap_mask);
  const __m256d c_base = _mm256_blendv_pd(cosr, sinr, swap_mask);
  *s_out = _mm256_xor_pd(s_base, ssign);
  *c_out = _mm256_xor_pd(c_base, csign);
}

// Horizontal sum of the four lanes.
inline double hsum4(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d sum2 = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(sum2, sum2);
  return _mm_cvtsd_f64(_mm_add_sd(sum2, swapped));
}

}  // namespace emscat::detail
