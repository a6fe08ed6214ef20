#pragma once

#include <vector>

#include "emscat/kernels.hpp"
#include "emscat/vec3.hpp"

namespace emscat {

// Radiating cloud of curl-type point sources:
//   v(x) = sum_m grad_x g(x, y_m) x C_m,
// the common form of every scattered field in this library (surface
// quadrature nodes carrying w J, particles carrying Q, voxels carrying
// -c0 h^3 N W).  Amplitudes C are stored premultiplied.
struct DipoleCloud {
  double k = 1.0;
  SourceCloud sources;
};

CVec3 cloud_field(const DipoleCloud& cloud, const Vec3& x);

// Exact radial derivative d v / d|x| (each gradient differentiates to a
// Hessian application along the radial direction).
CVec3 cloud_radial_derivative(const DipoleCloud& cloud, const Vec3& x);

// Deterministic quasi-uniform directions on the unit sphere (spherical
// Fibonacci lattice).
std::vector<Vec3> fibonacci_directions(int n);

// Outgoing-radiation defect at radius r: max over directions of
//   | r ( dv/dr - ik v ) |,
// which decays like 1/r for an outgoing spherical wave.
double radiation_defect(const DipoleCloud& cloud, double radius, int n_dirs = 50);

// Relative L2 distance between two sampled vector fields.
double relative_l2(const std::vector<CVec3>& test, const std::vector<CVec3>& ref);

}  // namespace emscat
