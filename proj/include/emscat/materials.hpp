#pragma once

#include "emscat/density.hpp"
#include "emscat/grid_field.hpp"

namespace emscat {

// Material interpretation of an embedded particle density N:
//   n^2(x)      = 1 / (1 + c0 N(x))     (refraction coefficient)
//   mu(x)/mu0   = 1 / (1 + c0 N(x))     (magnetic permeability, = n^2)
//   q(x)        = k^2 c0 N / (1 + c0 N) (equivalent Schroedinger potential)
// and the inverse problem N = (1/n^2 - 1) / c0, feasible iff 0 < n^2 <= 1.

ScalarGrid refraction_from_density(const ScalarGrid& N, double c0);

ScalarGrid mu_over_mu0_from_density(const ScalarGrid& N, double c0);

ScalarGrid potential_from_density(const ScalarGrid& N, double k, double c0);

// Inverse design; throws InfeasibleError naming the offending voxels when
// any target value leaves the reachable set (n^2 > 1 needs N < 0; n^2 <= 0
// is outside the model entirely).
ScalarGrid density_for_target(const ScalarGrid& n2, double c0);

// max_i |N'_i - N_i| / max(N) after N -> n^2 -> N'.
double refraction_round_trip(const ScalarGrid& N, double c0);

// The variable-permeability wave equation for E can be written with its
// first-order term either through grad(mu)/mu or through grad(N); the two
// right-hand sides are algebraically identical.  This evaluates both on the
// finite-difference grid and returns their maximal relative difference
// (a pure-algebra consistency check of the material maps).
double wave_rhs_consistency(const VectorGrid& E, const ScalarGrid& N, double k,
                            double c0);

// Residual of curl curl E = K^2 E + [grad(mu)/mu, curl E] with
// K^2 = k^2 n^2, evaluated by central differences on interior voxels
// (margin 2), normalized by k^2 max |E|.
double curl_curl_residual(const VectorGrid& E, const ScalarGrid& N, double k,
                          double c0);

}  // namespace emscat
