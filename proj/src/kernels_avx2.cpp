#include "emscat/kernels.hpp"

// AVX2 + FMA implementations of the pairwise field kernels.  This file is
// the only translation unit compiled with -mavx2; when the build targets a
// non-x86 architecture the functions forward to the scalar reference.

#if defined(EMSCAT_BUILD_AVX2)

#include <immintrin.h>

#include <cmath>

#include "emscat/simd_math.hpp"

namespace emscat::detail {

bool avx2_compiled_in() { return true; }

namespace {

constexpr double kInv4Pi = 0.07957747154594766788;

// Per-target accumulator for a complex 3-vector in lane-parallel form.
struct Acc6 {
  __m256d xr = _mm256_setzero_pd(), xi = _mm256_setzero_pd();
  __m256d yr = _mm256_setzero_pd(), yi = _mm256_setzero_pd();
  __m256d zr = _mm256_setzero_pd(), zi = _mm256_setzero_pd();

  CVec3 reduce() const {
    return CVec3(cplx(hsum4(xr), hsum4(xi)), cplx(hsum4(yr), hsum4(yi)),
                 cplx(hsum4(zr), hsum4(zi)));
  }
};

}  // namespace

void dipole_field_sum_avx2(double k, const std::vector<Vec3>& targets,
                           const SourceCloud& sources, CVec3* out, double excl) {
  const long long nt = static_cast<long long>(targets.size());
  const std::size_t ns = sources.size();
  const std::size_t ns4 = ns - (ns % 4);
  const __m256d vk = _mm256_set1_pd(k);
  const __m256d vinv4pi = _mm256_set1_pd(kInv4Pi);
  const __m256d vexcl2 = _mm256_set1_pd(excl * excl);
  const __m256d vtiny = _mm256_set1_pd(1e-300);
  const __m256d vone = _mm256_set1_pd(1.0);
  const __m256d vthree = _mm256_set1_pd(3.0);

#pragma omp parallel for schedule(static)
  for (long long t = 0; t < nt; ++t) {
    const __m256d tx = _mm256_set1_pd(targets[t].x);
    const __m256d ty = _mm256_set1_pd(targets[t].y);
    const __m256d tz = _mm256_set1_pd(targets[t].z);
    Acc6 acc;
    for (std::size_t s = 0; s < ns4; s += 4) {
      const __m256d dx = _mm256_sub_pd(tx, _mm256_loadu_pd(&sources.px[s]));
      const __m256d dy = _mm256_sub_pd(ty, _mm256_loadu_pd(&sources.py[s]));
      const __m256d dz = _mm256_sub_pd(tz, _mm256_loadu_pd(&sources.pz[s]));
      const __m256d r2 =
          _mm256_fmadd_pd(dx, dx, _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dz, dz)));
      const __m256d keep = _mm256_cmp_pd(r2, vexcl2, _CMP_GT_OQ);
      if (_mm256_movemask_pd(keep) == 0) continue;

      const __m256d r2s = _mm256_max_pd(r2, vtiny);
      const __m256d r = _mm256_sqrt_pd(r2s);
      const __m256d rinv = _mm256_div_pd(vone, r);
      const __m256d u = _mm256_mul_pd(vk, r);
      __m256d si, c;
      sincos4(u, &si, &c);

      const __m256d rinv2 = _mm256_mul_pd(rinv, rinv);
      const __m256d denom = _mm256_mul_pd(vinv4pi, _mm256_mul_pd(rinv2, rinv));
      const __m256d u2 = _mm256_mul_pd(u, u);
      const __m256d u2m1 = _mm256_sub_pd(u2, vone);
      const __m256d three_mu2 = _mm256_sub_pd(vthree, u2);
      const __m256d su = _mm256_mul_pd(si, u);
      const __m256d cu = _mm256_mul_pd(c, u);
      // s1 = (c+is)(u^2-1+iu) denom ; s2 = (c+is)(3-u^2-3iu) denom
      const __m256d s1r = _mm256_mul_pd(_mm256_fmsub_pd(c, u2m1, su), denom);
      const __m256d s1i = _mm256_mul_pd(_mm256_fmadd_pd(si, u2m1, cu), denom);
      const __m256d s2r = _mm256_mul_pd(
          _mm256_fmadd_pd(c, three_mu2, _mm256_mul_pd(vthree, su)), denom);
      const __m256d s2i = _mm256_mul_pd(
          _mm256_fmsub_pd(si, three_mu2, _mm256_mul_pd(vthree, cu)), denom);

      const __m256d rhx = _mm256_mul_pd(dx, rinv);
      const __m256d rhy = _mm256_mul_pd(dy, rinv);
      const __m256d rhz = _mm256_mul_pd(dz, rinv);

      const __m256d axr = _mm256_loadu_pd(&sources.ax_re[s]);
      const __m256d axi = _mm256_loadu_pd(&sources.ax_im[s]);
      const __m256d ayr = _mm256_loadu_pd(&sources.ay_re[s]);
      const __m256d ayi = _mm256_loadu_pd(&sources.ay_im[s]);
      const __m256d azr = _mm256_loadu_pd(&sources.az_re[s]);
      const __m256d azi = _mm256_loadu_pd(&sources.az_im[s]);

      // p = rh . A
      const __m256d pr = _mm256_fmadd_pd(
          rhx, axr, _mm256_fmadd_pd(rhy, ayr, _mm256_mul_pd(rhz, azr)));
      const __m256d pi = _mm256_fmadd_pd(
          rhx, axi, _mm256_fmadd_pd(rhy, ayi, _mm256_mul_pd(rhz, azi)));
      // q = s2 p
      const __m256d qr = _mm256_fmsub_pd(s2r, pr, _mm256_mul_pd(s2i, pi));
      const __m256d qi = _mm256_fmadd_pd(s2r, pi, _mm256_mul_pd(s2i, pr));

      // contribution = s1 A + q rh, masked by `keep`
      const __m256d cxr = _mm256_and_pd(
          _mm256_fmadd_pd(qr, rhx, _mm256_fmsub_pd(s1r, axr, _mm256_mul_pd(s1i, axi))),
          keep);
      const __m256d cxi = _mm256_and_pd(
          _mm256_fmadd_pd(qi, rhx, _mm256_fmadd_pd(s1r, axi, _mm256_mul_pd(s1i, axr))),
          keep);
      const __m256d cyr = _mm256_and_pd(
          _mm256_fmadd_pd(qr, rhy, _mm256_fmsub_pd(s1r, ayr, _mm256_mul_pd(s1i, ayi))),
          keep);
      const __m256d cyi = _mm256_and_pd(
          _mm256_fmadd_pd(qi, rhy, _mm256_fmadd_pd(s1r, ayi, _mm256_mul_pd(s1i, ayr))),
          keep);
      const __m256d czr = _mm256_and_pd(
          _mm256_fmadd_pd(qr, rhz, _mm256_fmsub_pd(s1r, azr, _mm256_mul_pd(s1i, azi))),
          keep);
      const __m256d czi = _mm256_and_pd(
          _mm256_fmadd_pd(qi, rhz, _mm256_fmadd_pd(s1r, azi, _mm256_mul_pd(s1i, azr))),
          keep);

      acc.xr = _mm256_add_pd(acc.xr, cxr);
      acc.xi = _mm256_add_pd(acc.xi, cxi);
      acc.yr = _mm256_add_pd(acc.yr, cyr);
      acc.yi = _mm256_add_pd(acc.yi, cyi);
      acc.zr = _mm256_add_pd(acc.zr, czr);
      acc.zi = _mm256_add_pd(acc.zi, czi);
    }
    CVec3 total = acc.reduce();

    // Scalar tail (same arithmetic as the reference kernel).
    const double excl2 = excl * excl;
    for (std::size_t s = ns4; s < ns; ++s) {
      const double dx = targets[t].x - sources.px[s];
      const double dy = targets[t].y - sources.py[s];
      const double dz = targets[t].z - sources.pz[s];
      const double r2 = dx * dx + dy * dy + dz * dz;
      if (r2 <= excl2) continue;
      const double r = std::sqrt(r2);
      const double rinv = 1.0 / r;
      const double u = k * r;
      const double cs = std::cos(u), sn = std::sin(u);
      const double denom = kInv4Pi * rinv * rinv * rinv;
      const double s1r = (cs * (u * u - 1.0) - sn * u) * denom;
      const double s1i = (sn * (u * u - 1.0) + cs * u) * denom;
      const double s2r = (cs * (3.0 - u * u) + 3.0 * sn * u) * denom;
      const double s2i = (sn * (3.0 - u * u) - 3.0 * cs * u) * denom;
      const double rhx = dx * rinv, rhy = dy * rinv, rhz = dz * rinv;
      const CVec3 A = sources.amplitude(s);
      const cplx s1(s1r, s1i), s2(s2r, s2i);
      const cplx p = rhx * A.x + rhy * A.y + rhz * A.z;
      const cplx q = s2 * p;
      total += CVec3(s1 * A.x + q * rhx, s1 * A.y + q * rhy, s1 * A.z + q * rhz);
    }
    out[t] += total;
  }
}

void curl_field_sum_avx2(double k, const std::vector<Vec3>& targets,
                         const SourceCloud& sources, CVec3* out, double excl) {
  const long long nt = static_cast<long long>(targets.size());
  const std::size_t ns = sources.size();
  const std::size_t ns4 = ns - (ns % 4);
  const __m256d vk = _mm256_set1_pd(k);
  const __m256d vinv4pi = _mm256_set1_pd(kInv4Pi);
  const __m256d vexcl2 = _mm256_set1_pd(excl * excl);
  const __m256d vtiny = _mm256_set1_pd(1e-300);
  const __m256d vone = _mm256_set1_pd(1.0);

#pragma omp parallel for schedule(static)
  for (long long t = 0; t < nt; ++t) {
    const __m256d tx = _mm256_set1_pd(targets[t].x);
    const __m256d ty = _mm256_set1_pd(targets[t].y);
    const __m256d tz = _mm256_set1_pd(targets[t].z);
    Acc6 acc;
    for (std::size_t s = 0; s < ns4; s += 4) {
      const __m256d dx = _mm256_sub_pd(tx, _mm256_loadu_pd(&sources.px[s]));
      const __m256d dy = _mm256_sub_pd(ty, _mm256_loadu_pd(&sources.py[s]));
      const __m256d dz = _mm256_sub_pd(tz, _mm256_loadu_pd(&sources.pz[s]));
      const __m256d r2 =
          _mm256_fmadd_pd(dx, dx, _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dz, dz)));
      const __m256d keep = _mm256_cmp_pd(r2, vexcl2, _CMP_GT_OQ);
      if (_mm256_movemask_pd(keep) == 0) continue;

      const __m256d r2s = _mm256_max_pd(r2, vtiny);
      const __m256d r = _mm256_sqrt_pd(r2s);
      const __m256d rinv = _mm256_div_pd(vone, r);
      const __m256d u = _mm256_mul_pd(vk, r);
      __m256d si, c;
      sincos4(u, &si, &c);

      // (g'/r) = e^{iu}(iu-1)/(4 pi r^3); grad g = (g'/r) d
      const __m256d rinv2 = _mm256_mul_pd(rinv, rinv);
      const __m256d denom = _mm256_mul_pd(vinv4pi, _mm256_mul_pd(rinv2, rinv));
      const __m256d su = _mm256_mul_pd(si, u);
      const __m256d cu = _mm256_mul_pd(c, u);
      const __m256d gr =
          _mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), _mm256_add_pd(c, su)), denom);
      const __m256d gi = _mm256_mul_pd(_mm256_sub_pd(cu, si), denom);

      const __m256d gxr = _mm256_mul_pd(gr, dx), gxi = _mm256_mul_pd(gi, dx);
      const __m256d gyr = _mm256_mul_pd(gr, dy), gyi = _mm256_mul_pd(gi, dy);
      const __m256d gzr = _mm256_mul_pd(gr, dz), gzi = _mm256_mul_pd(gi, dz);

      const __m256d axr = _mm256_loadu_pd(&sources.ax_re[s]);
      const __m256d axi = _mm256_loadu_pd(&sources.ax_im[s]);
      const __m256d ayr = _mm256_loadu_pd(&sources.ay_re[s]);
      const __m256d ayi = _mm256_loadu_pd(&sources.ay_im[s]);
      const __m256d azr = _mm256_loadu_pd(&sources.az_re[s]);
      const __m256d azi = _mm256_loadu_pd(&sources.az_im[s]);

      // G x A with complex lanes: (G x A)_x = Gy Az - Gz Ay, etc.
      const __m256d cxr = _mm256_and_pd(
          _mm256_sub_pd(_mm256_fmsub_pd(gyr, azr, _mm256_mul_pd(gyi, azi)),
                        _mm256_fmsub_pd(gzr, ayr, _mm256_mul_pd(gzi, ayi))),
          keep);
      const __m256d cxi = _mm256_and_pd(
          _mm256_sub_pd(_mm256_fmadd_pd(gyr, azi, _mm256_mul_pd(gyi, azr)),
                        _mm256_fmadd_pd(gzr, ayi, _mm256_mul_pd(gzi, ayr))),
          keep);
      const __m256d cyr = _mm256_and_pd(
          _mm256_sub_pd(_mm256_fmsub_pd(gzr, axr, _mm256_mul_pd(gzi, axi)),
                        _mm256_fmsub_pd(gxr, azr, _mm256_mul_pd(gxi, azi))),
          keep);
      const __m256d cyi = _mm256_and_pd(
          _mm256_sub_pd(_mm256_fmadd_pd(gzr, axi, _mm256_mul_pd(gzi, axr)),
                        _mm256_fmadd_pd(gxr, azi, _mm256_mul_pd(gxi, azr))),
          keep);
      const __m256d czr = _mm256_and_pd(
          _mm256_sub_pd(_mm256_fmsub_pd(gxr, ayr, _mm256_mul_pd(gxi, ayi)),
                        _mm256_fmsub_pd(gyr, axr, _mm256_mul_pd(gyi, axi))),
          keep);
      const __m256d czi = _mm256_and_pd(
          _mm256_sub_pd(_mm256_fmadd_pd(gxr, ayi, _mm256_mul_pd(gxi, ayr)),
                        _mm256_fmadd_pd(gyr, axi, _mm256_mul_pd(gyi, axr))),
          keep);

      acc.xr = _mm256_add_pd(acc.xr, cxr);
      acc.xi = _mm256_add_pd(acc.xi, cxi);
      acc.yr = _mm256_add_pd(acc.yr, cyr);
      acc.yi = _mm256_add_pd(acc.yi, cyi);
      acc.zr = _mm256_add_pd(acc.zr, czr);
      acc.zi = _mm256_add_pd(acc.zi, czi);
    }
    CVec3 total = acc.reduce();

    const double excl2 = excl * excl;
    for (std::size_t s = ns4; s < ns; ++s) {
      const double dx = targets[t].x - sources.px[s];
      const double dy = targets[t].y - sources.py[s];
      const double dz = targets[t].z - sources.pz[s];
      const double r2 = dx * dx + dy * dy + dz * dz;
      if (r2 <= excl2) continue;
      const double r = std::sqrt(r2);
      const double rinv = 1.0 / r;
      const double u = k * r;
      const double cs = std::cos(u), sn = std::sin(u);
      const double denom = kInv4Pi * rinv * rinv * rinv;
      const cplx gf(-(cs + sn * u) * denom, (cs * u - sn) * denom);
      const CVec3 G(gf * dx, gf * dy, gf * dz);
      total += cross(G, sources.amplitude(s));
    }
    out[t] += total;
  }
}

}  // namespace emscat::detail

#else  // !EMSCAT_BUILD_AVX2

namespace emscat::detail {

bool avx2_compiled_in() { return false; }

void dipole_field_sum_avx2(double k, const std::vector<Vec3>& targets,
                           const SourceCloud& sources, CVec3* out, double excl) {
  dipole_field_sum_scalar(k, targets, sources, out, excl);
}

void curl_field_sum_avx2(double k, const std::vector<Vec3>& targets,
                         const SourceCloud& sources, CVec3* out, double excl) {
  curl_field_sum_scalar(k, targets, sources, out, excl);
}

}  // namespace emscat::detail

#endif
