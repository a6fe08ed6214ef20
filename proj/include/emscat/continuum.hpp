#pragma once

#include "emscat/density.hpp"
#include "emscat/fields.hpp"
#include "emscat/grid_field.hpp"
#include "emscat/many_body.hpp"
#include "emscat/plane_wave.hpp"

namespace emscat {

// Homogenized limit of the many-body problem: an integral equation on the
// whole domain, closed in the curl field W = curl E,
//
//   W(x) + c0 int N(y) [curl curl (g(x,y) W(y)) ] dy = W0(x),
//
// discretized on the density's voxel grid by midpoint collocation.  The
// self-voxel contribution uses the principal-value integral of the kernel
// over the volume-equivalent ball of the voxel,
//
//   int_{|y|<R} curlcurl(g W) dy  ->  -(2/3) (1 + e^{ikR}(ikR - 1)) W,
//
// which matches the excluded-self lattice limit this continuum model
// approximates (no additional delta term; validated against refining
// particle lattices).  E is reconstructed from W through
//   E(x) = E0(x) - c0 int N(y) grad g(x,y) x W(y) dy.
struct ContinuumSolution {
  double c0 = kDefaultC0;
  PlaneWave pw;
  ScalarGrid density;  // N sampled on the solve grid
  VectorGrid W;
  VectorGrid E;
  SolveInfo info;
};

ContinuumSolution solve_continuum(const ScalarGrid& density, const PlaneWave& pw,
                                  double c0 = kDefaultC0,
                                  const SolverOptions& opts = {});

// Pointwise check that E solves the equivalent Schroedinger-form equation
//   -lap E - k^2 E + q E = 0,  q = k^2 c0 N / (1 + c0 N),
// component-wise, using the 7-point finite-difference Laplacian on interior
// voxels.  Returns max_i |residual_i| / (k^2 max_i |E_i|).
double schrodinger_residual(const ContinuumSolution& sol);

// Same finite-difference residual for an arbitrary field/potential pair
// (used e.g. for the free-space consistency check with q = 0).
double schrodinger_residual(const VectorGrid& E, const ScalarGrid& q, double k);

// Scattered-field source cloud of the solved continuum (voxel amplitudes
// -c0 h^3 N_j W_j), for probing and radiation checks.
DipoleCloud continuum_cloud(const ContinuumSolution& sol);

}  // namespace emscat
