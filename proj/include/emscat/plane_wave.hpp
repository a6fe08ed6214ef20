#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "emscat/errors.hpp"
#include "emscat/vec3.hpp"

namespace emscat {

// Incident plane wave E0(x) = pol * e^{ik alpha.x} with |alpha| = 1 and
// pol.alpha = 0 (transverse).  Construct through make_plane_wave, which
// normalizes alpha and enforces transversality by projection.
struct PlaneWave {
  double k = 1.0;
  Vec3 alpha{0.0, 0.0, 1.0};
  CVec3 pol{cplx(1.0), cplx(0.0), cplx(0.0)};

  cplx phase(const Vec3& x) const { return std::polar(1.0, k * dot(alpha, x)); }

  CVec3 field(const Vec3& x) const { return phase(x) * pol; }

  // curl E0 = ik (alpha x pol) e^{ik alpha.x}
  CVec3 curl(const Vec3& x) const {
    return (cplx(0.0, k) * phase(x)) * cross(alpha, pol);
  }
};

// H = curl E / (i omega mu) for time-harmonic fields with convention
// curl E = i omega mu H.
inline CVec3 h_from_curl_e(const CVec3& curl_e, double omega, double mu) {
  return curl_e * (1.0 / cplx(0.0, omega * mu));
}

// Validates and normalizes the incident-wave data.  The polarization is
// projected onto the plane transverse to alpha: violations up to a relative
// 1e-8 are fixed silently, larger ones add a warning, and a polarization
// with no transverse part at all is rejected.
inline PlaneWave make_plane_wave(double k, Vec3 alpha, CVec3 pol,
                                 std::vector<std::string>* warnings = nullptr) {
  if (!(k > 0.0)) {
    throw ValidationError("wavenumber k must be positive");
  }
  const double alen = norm(alpha);
  if (alen < 1e-14) {
    throw ValidationError("incidence direction alpha must be nonzero");
  }
  alpha = alpha / alen;

  const double pnorm = norm(pol);
  if (pnorm < 1e-300) {
    throw ValidationError("polarization must be nonzero");
  }
  const cplx along = dot(alpha, pol);
  const CVec3 projected = pol - along * CVec3(alpha);
  const double violation = std::abs(along) / pnorm;
  if (norm(projected) < 1e-12 * pnorm) {
    throw ValidationError(
        "polarization violates the transversality constraint pol.alpha = 0 "
        "and has no transverse component");
  }
  if (violation > 1e-8 && warnings != nullptr) {
    warnings->push_back("polarization was not transverse (relative violation " +
                        std::to_string(violation) + "); projected onto alpha-perp");
  }
  return PlaneWave{k, alpha, projected};
}

}  // namespace emscat
