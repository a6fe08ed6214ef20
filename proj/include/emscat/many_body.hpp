#pragma once

#include <string>
#include <vector>

#include "emscat/ensemble.hpp"
#include "emscat/fields.hpp"
#include "emscat/green.hpp"
#include "emscat/plane_wave.hpp"
#include "emscat/vec3.hpp"

namespace emscat {

// Coupled point-interaction system for M small scatterers (and, with general
// weights, for its cube-reduced and voxel-discretized relatives):
//
//   A_j + c0 sum_{m != j} w_m [ s1 A_m + s2 (rh.A_m) rh ] = A0_j,
//   A0_j = curl E0 (x_j) = ik (alpha x pol) e^{ik alpha.x_j},
//
// i.e. (I + G) A = A0 where G is the dipole-interaction block matrix.  The
// induced moment of particle m is Q_m = -c0 w_m A_m and the total field is
//   E(x) = E0(x) + sum_m grad g(x, x_m) x Q_m.

inline constexpr double kDefaultC0 = kFourPi / 3.0;

struct SolverOptions {
  enum class Method { automatic, direct, iterative };
  Method method = Method::automatic;
  double tol = 1e-10;   // relative residual contract
  int max_iters = 500;
};

struct SolveInfo {
  std::string method;        // "direct", "picard", or "bicgstab"
  int iterations = 0;
  double residual = 0.0;     // achieved relative residual
  double rcond = 0.0;        // reciprocal condition estimate (direct only)
  double contraction = 0.0;  // observed Picard contraction factor estimate
};

struct ManyBodySolution {
  double c0 = kDefaultC0;
  PlaneWave pw;
  std::vector<Vec3> centers;
  std::vector<double> weights;
  std::vector<CVec3> A;
  SolveInfo info;
};

// Direct solves build the dense 3M x 3M system (limited to M <= 2048);
// iterative solves are matrix-free Picard with a BiCGSTAB fallback.
inline constexpr std::size_t kDirectLimit = 2048;

ManyBodySolution solve_weighted(const std::vector<Vec3>& centers,
                                const std::vector<double>& weights,
                                const PlaneWave& pw, double c0,
                                const SolverOptions& opts = {});

// Physical M-body problem: every particle carries weight a^3.
ManyBodySolution solve_many_body(const Placement& placement, const PlaneWave& pw,
                                 double c0 = kDefaultC0,
                                 const SolverOptions& opts = {});

// Q_m = -c0 w_m A_m.
std::vector<CVec3> dipole_moments(const ManyBodySolution& sol);

// Scattered-field source cloud (amplitudes Q_m at the centers).
DipoleCloud scattered_cloud(const ManyBodySolution& sol);

// Total field E0 + scattered; throws if x lies within w_m^{1/3} of a center
// (the field representation is not valid inside a scatterer).
CVec3 field_at(const ManyBodySolution& sol, const Vec3& x);

// Field acting on particle j: incident plus all other particles' dipoles.
CVec3 effective_field_at(const ManyBodySolution& sol, std::size_t j);

// Far-field amplitude A(beta) = (ik/4pi) sum_m e^{-ik beta.x_m} [beta, Q_m].
CVec3 far_amplitude(const ManyBodySolution& sol, const Vec3& beta);

}  // namespace emscat
