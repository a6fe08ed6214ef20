#pragma once

#include <vector>

#include "emscat/plane_wave.hpp"
#include "emscat/surface_mesh.hpp"
#include "emscat/vec3.hpp"

namespace emscat {

// Boundary-integral solver for scattering of a plane wave by a perfectly
// conducting body.  The unknown is the effective surface current J on S in
//
//   J/2 + (T J)(s) = -[N_s, E0(s)],        s on S,
//   (T J)(s) = int_S [N_s, [grad_s g(s,t), J(t)]] dt,
//
// discretized by Nystrom collocation on a SurfaceMesh with plain diagonal
// exclusion (the excluded self-cell contributions of the two expanded kernel
// terms cancel to leading order, so no diagonal correction is applied; this
// was validated against the analytic small-sphere solution).
//
// The scattered field is E_s(x) = curl int_S g(x,t) J(t) dt.

struct BieSolution {
  std::vector<CVec3> J;      // surface current at mesh nodes
  double rcond = 0.0;        // reciprocal condition estimate of the dense system
  double residual = 0.0;     // relative linear-system residual
  double tangential_defect = 0.0;  // max_i |N_i.J_i| / max_i |J_i|
};

BieSolution solve_surface_current(const SurfaceMesh& mesh, const PlaneWave& pw);

// Matrix-free application of the discretized T (same quadrature as the
// dense assembly; used for operator-norm estimation and consistency tests).
std::vector<CVec3> apply_boundary_operator(const SurfaceMesh& mesh, double k,
                                           const std::vector<CVec3>& J);

// Q = int_S J ds.
CVec3 total_current(const SurfaceMesh& mesh, const std::vector<CVec3>& J);

// Scattered field at an exterior point x.
CVec3 scattered_field(const SurfaceMesh& mesh, const std::vector<CVec3>& J,
                      double k, const Vec3& x);

// Far-field amplitude A(beta): E_s = e^{ikr}/r A(beta) + o(1/r), i.e.
// A(beta) = (ik/4pi) int_S e^{-ik beta.t} [beta, J(t)] dt.
CVec3 far_field(const SurfaceMesh& mesh, const std::vector<CVec3>& J, double k,
                const Vec3& beta);

// Spectral-norm estimate of the discretized T restricted to the tangential
// subspace (power iteration on T^H T).
double operator_norm(const SurfaceMesh& mesh, double k, int max_iters = 200,
                     double tol = 1e-10);

// Static potential-theory identity: for t on S,
//   - int_S dg0(s,t)/dN_s ds = 1/2,   g0 = 1/(4 pi |s-t|).
// Returns max_t | -(sum_{i != t} w_i dg0/dN_i - sigma_t) - 1/2 | over the
// mesh, the quadrature's self-consistency measure.
double gauss_identity_residual(const SurfaceMesh& mesh);

}  // namespace emscat
