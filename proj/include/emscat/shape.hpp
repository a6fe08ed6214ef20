#pragma once

#include <cmath>

#include "emscat/errors.hpp"
#include "emscat/vec3.hpp"

namespace emscat {

// Origin-centered ellipsoid x^2/ax^2 + y^2/ay^2 + z^2/az^2 = 1; a sphere is
// the special case ax = ay = az.  Parametrized by spherical angles
// (theta, phi) with theta in (0, pi), phi in [0, 2 pi).
struct Shape {
  double ax = 1.0, ay = 1.0, az = 1.0;

  static Shape sphere(double a) {
    if (!(a > 0.0)) throw ValidationError("sphere radius must be positive");
    return {a, a, a};
  }

  static Shape ellipsoid(double a, double b, double c) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) {
      throw ValidationError("ellipsoid semi-axes must be positive");
    }
    return {a, b, c};
  }

  bool is_sphere() const { return ax == ay && ay == az; }

  // Volume-equivalent radius (used for leading-order comparisons).
  double equivalent_radius() const { return std::cbrt(ax * ay * az); }

  Vec3 point(double theta, double phi) const {
    const double st = std::sin(theta), ct = std::cos(theta);
    return {ax * st * std::cos(phi), ay * st * std::sin(phi), az * ct};
  }

  Vec3 tangent_theta(double theta, double phi) const {
    const double st = std::sin(theta), ct = std::cos(theta);
    return {ax * ct * std::cos(phi), ay * ct * std::sin(phi), -az * st};
  }

  Vec3 tangent_phi(double theta, double phi) const {
    const double st = std::sin(theta);
    return {-ax * st * std::sin(phi), ay * st * std::cos(phi), 0.0};
  }

  // Sum of principal curvatures (= div of the outward unit normal) at a
  // surface point p, computed from the implicit form F = sum x_i^2/a_i^2 - 1:
  //   div(grad F / |grad F|) = (lap F - grad F^T HF grad F / |grad F|^2) / |grad F|
  // with HF = diag(2/a_i^2).  For a sphere of radius a this equals 2/a.
  double curvature_sum(const Vec3& p) const {
    const double hx = 2.0 / (ax * ax), hy = 2.0 / (ay * ay), hz = 2.0 / (az * az);
    const Vec3 g{hx * p.x, hy * p.y, hz * p.z};
    const double gn2 = norm2(g);
    const double quad = (hx * g.x * g.x + hy * g.y * g.y + hz * g.z * g.z) / gn2;
    return (hx + hy + hz - quad) / std::sqrt(gn2);
  }
};

}  // namespace emscat
