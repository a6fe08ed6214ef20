#pragma once

#include <cmath>

#include "emscat/green.hpp"
#include "emscat/plane_wave.hpp"
#include "emscat/vec3.hpp"

namespace emscat {

// Closed-form small-body (ka << 1) references for a perfectly conducting
// sphere of radius a centered at the origin.

// Leading-order scattering amplitude of the small conducting sphere: the
// sum of an electric-dipole part (induced moment ~ a^3 E) and a magnetic-
// dipole part of half that strength and opposite orientation,
//   A(beta) = k^2 a^3 [ (beta x pol) x beta + (1/2) beta x (alpha x pol) ].
inline CVec3 small_sphere_amplitude(double k, double a, const PlaneWave& pw,
                                    const Vec3& beta) {
  const double s = k * k * a * a * a;
  const CVec3 electric = cross(cross(beta, pw.pol), beta);
  const CVec3 magnetic = 0.5 * cross(beta, cross(pw.alpha, pw.pol));
  return s * (electric + magnetic);
}

// Leading-order total surface current Q = int_S J ds predicted by the
// asymptotic theory for the small conducting sphere at the origin:
//   Q_asym = -(4 pi / 3) i k a^3 (alpha x pol).
// The boundary-integral solution converges to 3/2 of this value (the
// asymptotic derivation keeps only one of two same-order contributions);
// the comparison is kept as stated so the discrepancy stays visible.
inline CVec3 asymptotic_total_current(double k, double a, const PlaneWave& pw) {
  const double c0 = kFourPi / 3.0;
  return cplx(0.0, -c0 * k * a * a * a) * cross(pw.alpha, pw.pol);
}

// Far-field amplitude generated by a point current Q at position x0:
//   A(beta) = (ik/4pi) e^{-ik beta.x0} [beta, Q].
inline CVec3 amplitude_from_current(double k, const CVec3& Q, const Vec3& beta,
                                    const Vec3& x0 = {}) {
  const cplx ph = std::polar(1.0, -k * dot(beta, x0));
  return (cplx(0.0, k / kFourPi) * ph) * cross(beta, Q);
}

}  // namespace emscat
