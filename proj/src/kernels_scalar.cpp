#include <cmath>

#include "emscat/kernels.hpp"

namespace emscat {

void SourceCloud::reserve(std::size_t n) {
  px.reserve(n); py.reserve(n); pz.reserve(n);
  ax_re.reserve(n); ax_im.reserve(n);
  ay_re.reserve(n); ay_im.reserve(n);
  az_re.reserve(n); az_im.reserve(n);
}

void SourceCloud::push_back(const Vec3& p, const CVec3& a) {
  px.push_back(p.x); py.push_back(p.y); pz.push_back(p.z);
  ax_re.push_back(a.x.real()); ax_im.push_back(a.x.imag());
  ay_re.push_back(a.y.real()); ay_im.push_back(a.y.imag());
  az_re.push_back(a.z.real()); az_im.push_back(a.z.imag());
}

void SourceCloud::set_amplitude(std::size_t i, const CVec3& a) {
  ax_re[i] = a.x.real(); ax_im[i] = a.x.imag();
  ay_re[i] = a.y.real(); ay_im[i] = a.y.imag();
  az_re[i] = a.z.real(); az_im[i] = a.z.imag();
}

CVec3 SourceCloud::amplitude(std::size_t i) const {
  return {cplx(ax_re[i], ax_im[i]), cplx(ay_re[i], ay_im[i]), cplx(az_re[i], az_im[i])};
}

Vec3 SourceCloud::position(std::size_t i) const { return {px[i], py[i], pz[i]}; }

namespace detail {

// Reference kernels.  Real/imaginary parts are carried explicitly (mirroring
// the SIMD variants) and sources are accumulated in index order per target,
// which makes results reproducible and independent of the thread count.

void dipole_field_sum_scalar(double k, const std::vector<Vec3>& targets,
                             const SourceCloud& sources, CVec3* out, double excl) {
  const double inv4pi = 1.0 / (16.0 * std::atan(1.0));
  const double excl2 = excl * excl;
  const long long nt = static_cast<long long>(targets.size());
  const std::size_t ns = sources.size();
#pragma omp parallel for schedule(static)
  for (long long t = 0; t < nt; ++t) {
    const double tx = targets[t].x, ty = targets[t].y, tz = targets[t].z;
    double oxr = 0, oxi = 0, oyr = 0, oyi = 0, ozr = 0, ozi = 0;
    for (std::size_t s = 0; s < ns; ++s) {
      const double dx = tx - sources.px[s];
      const double dy = ty - sources.py[s];
      const double dz = tz - sources.pz[s];
      const double r2 = dx * dx + dy * dy + dz * dz;
      if (r2 <= excl2) continue;
      const double r = std::sqrt(r2);
      const double rinv = 1.0 / r;
      const double u = k * r;
      const double c = std::cos(u), si = std::sin(u);
      const double denom = inv4pi * rinv * rinv * rinv;
      // s1 = e^{iu} (u^2 - 1 + iu) / (4 pi r^3)
      const double s1r = (c * (u * u - 1.0) - si * u) * denom;
      const double s1i = (si * (u * u - 1.0) + c * u) * denom;
      // s2 = e^{iu} (3 - u^2 - 3iu) / (4 pi r^3)
      const double s2r = (c * (3.0 - u * u) + 3.0 * si * u) * denom;
      const double s2i = (si * (3.0 - u * u) - 3.0 * c * u) * denom;
      const double rhx = dx * rinv, rhy = dy * rinv, rhz = dz * rinv;
      const double axr = sources.ax_re[s], axi = sources.ax_im[s];
      const double ayr = sources.ay_re[s], ayi = sources.ay_im[s];
      const double azr = sources.az_re[s], azi = sources.az_im[s];
      // p = rh . A
      const double pr = rhx * axr + rhy * ayr + rhz * azr;
      const double pi_ = rhx * axi + rhy * ayi + rhz * azi;
      // q = s2 * p
      const double qr = s2r * pr - s2i * pi_;
      const double qi = s2r * pi_ + s2i * pr;
      oxr += s1r * axr - s1i * axi + qr * rhx;
      oxi += s1r * axi + s1i * axr + qi * rhx;
      oyr += s1r * ayr - s1i * ayi + qr * rhy;
      oyi += s1r * ayi + s1i * ayr + qi * rhy;
      ozr += s1r * azr - s1i * azi + qr * rhz;
      ozi += s1r * azi + s1i * azr + qi * rhz;
    }
    out[t] += CVec3(cplx(oxr, oxi), cplx(oyr, oyi), cplx(ozr, ozi));
  }
}

void curl_field_sum_scalar(double k, const std::vector<Vec3>& targets,
                           const SourceCloud& sources, CVec3* out, double excl) {
  const double inv4pi = 1.0 / (16.0 * std::atan(1.0));
  const double excl2 = excl * excl;
  const long long nt = static_cast<long long>(targets.size());
  const std::size_t ns = sources.size();
#pragma omp parallel for schedule(static)
  for (long long t = 0; t < nt; ++t) {
    const double tx = targets[t].x, ty = targets[t].y, tz = targets[t].z;
    double oxr = 0, oxi = 0, oyr = 0, oyi = 0, ozr = 0, ozi = 0;
    for (std::size_t s = 0; s < ns; ++s) {
      const double dx = tx - sources.px[s];
      const double dy = ty - sources.py[s];
      const double dz = tz - sources.pz[s];
      const double r2 = dx * dx + dy * dy + dz * dz;
      if (r2 <= excl2) continue;
      const double r = std::sqrt(r2);
      const double rinv = 1.0 / r;
      const double u = k * r;
      const double c = std::cos(u), si = std::sin(u);
      // g' / r = e^{iu} (iu - 1) / (4 pi r^3); grad g = (g'/r) (x - y)
      const double denom = inv4pi * rinv * rinv * rinv;
      const double gr = (-c - si * u) * denom;
      const double gi = (c * u - si) * denom;
      const double gxr = gr * dx, gxi = gi * dx;
      const double gyr = gr * dy, gyi = gi * dy;
      const double gzr = gr * dz, gzi = gi * dz;
      const double axr = sources.ax_re[s], axi = sources.ax_im[s];
      const double ayr = sources.ay_re[s], ayi = sources.ay_im[s];
      const double azr = sources.az_re[s], azi = sources.az_im[s];
      // out += G x A (complex cross product, G and A both complex)
      oxr += gyr * azr - gyi * azi - (gzr * ayr - gzi * ayi);
      oxi += gyr * azi + gyi * azr - (gzr * ayi + gzi * ayr);
      oyr += gzr * axr - gzi * axi - (gxr * azr - gxi * azi);
      oyi += gzr * axi + gzi * axr - (gxr * azi + gxi * azr);
      ozr += gxr * ayr - gxi * ayi - (gyr * axr - gyi * axi);
      ozi += gxr * ayi + gxi * ayr - (gyr * axi + gyi * axr);
    }
    out[t] += CVec3(cplx(oxr, oxi), cplx(oyr, oyi), cplx(ozr, ozi));
  }
}

}  // namespace detail

}  // namespace emscat
