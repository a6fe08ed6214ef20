#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "emscat/vec3.hpp"

namespace emscat {

// Outgoing free-space Helmholtz kernel g(x,y) = e^{ikr}/(4*pi*r), r = |x-y|,
// together with the derivative combinations the solvers need.  All spatial
// derivatives are taken with respect to the first argument x.
//
// Radial derivative ladder used below (r > 0):
//   g   = e^{ikr} / (4 pi r)
//   g'  = e^{ikr} (ikr - 1) / (4 pi r^2)
//   g'' = e^{ikr} (2 - 2ikr - k^2 r^2) / (4 pi r^3)
// and in Cartesian form, with rh = (x-y)/r:
//   grad g  = g' rh
//   Hess g  = g'' rh rh^T + (g'/r) (I - rh rh^T)
//   curl curl (g A) = k^2 g A + (Hess g) A = s1 A + s2 (rh . A) rh
// with
//   s1 = e^{ikr} (k^2 r^2 + ikr - 1) / (4 pi r^3)
//   s2 = e^{ikr} (3 - 3ikr - k^2 r^2) / (4 pi r^3).

inline constexpr double kFourPi = 4.0 * 3.14159265358979323846;

// Distance with a coincidence guard: evaluating any kernel at (numerically)
// coincident points is a caller bug, reported as a domain error.
inline double pair_distance_checked(const Vec3& x, const Vec3& y) {
  const Vec3 d = x - y;
  const double r = norm(d);
  const double scale = std::max({1.0, norm(x), norm(y)});
  if (r < 1e-12 * scale) {
    throw std::domain_error("kernel evaluation at coincident points (r = " +
                            std::to_string(r) + ")");
  }
  return r;
}

inline cplx green(double k, const Vec3& x, const Vec3& y) {
  const double r = pair_distance_checked(x, y);
  return std::polar(1.0, k * r) / (kFourPi * r);
}

// d g / d r as a function of r.
inline cplx green_radial_derivative(double k, double r) {
  const cplx e = std::polar(1.0, k * r);
  return e * (cplx(0.0, k * r) - 1.0) / (kFourPi * r * r);
}

inline CVec3 grad_green(double k, const Vec3& x, const Vec3& y) {
  const double r = pair_distance_checked(x, y);
  const Vec3 rh = (x - y) / r;
  const cplx g1 = green_radial_derivative(k, r);
  return CVec3(rh) * g1;
}

struct DipoleCoeffs {
  cplx s1, s2;
};

inline DipoleCoeffs dipole_coeffs(double k, double r) {
  const cplx e = std::polar(1.0, k * r);
  const double u = k * r;
  const double denom = kFourPi * r * r * r;
  return {e * cplx(u * u - 1.0, u) / denom, e * cplx(3.0 - u * u, -3.0 * u) / denom};
}

// curl curl (g(x,y) A) for a constant vector A.
inline CVec3 dipole_apply(double k, const Vec3& x, const Vec3& y, const CVec3& A) {
  const double r = pair_distance_checked(x, y);
  const Vec3 rh = (x - y) / r;
  const auto [s1, s2] = dipole_coeffs(k, r);
  return s1 * A + (s2 * dot(rh, A)) * CVec3(rh);
}

// grad_x g(x,y) x A for a constant vector A (the field of a point source of
// curl type).
inline CVec3 curl_green_apply(double k, const Vec3& x, const Vec3& y, const CVec3& A) {
  const double r = pair_distance_checked(x, y);
  const Vec3 rh = (x - y) / r;
  const cplx g1 = green_radial_derivative(k, r);
  return g1 * cross(rh, A);
}

// (Hess_x g)(x,y) v for a constant real direction v.
inline CVec3 hessian_apply(double k, const Vec3& x, const Vec3& y, const Vec3& v) {
  const double r = pair_distance_checked(x, y);
  const Vec3 rh = (x - y) / r;
  const cplx e = std::polar(1.0, k * r);
  const double u = k * r;
  const cplx g1 = e * cplx(-1.0, u) / (kFourPi * r * r);
  const cplx g2 = e * cplx(2.0 - u * u, -2.0 * u) / (kFourPi * r * r * r);
  const double rv = dot(rh, v);
  return (g2 * rv) * CVec3(rh) + (g1 / r) * (CVec3(v) - rv * CVec3(rh));
}

}  // namespace emscat
