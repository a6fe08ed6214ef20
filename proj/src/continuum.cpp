#include "emscat/continuum.hpp"

#include <cmath>
#include <string>

#include "emscat/detail/iterative.hpp"
#include "emscat/errors.hpp"
#include "emscat/green.hpp"
#include "emscat/kernels.hpp"

namespace emscat {

namespace {

// Principal-value self-voxel coefficient: the kernel integrated over the
// volume-equivalent ball of radius R, divided by W (it acts as a multiple of
// the identity):  -(2/3) (1 + e^{ikR} (ikR - 1)).
cplx self_coefficient(double k, double voxel_volume) {
  const double R = std::cbrt(voxel_volume * 3.0 / kFourPi);
  const cplx e = std::polar(1.0, k * R);
  return -(2.0 / 3.0) * (1.0 + e * (cplx(0.0, k * R) - 1.0));
}

}  // namespace

ContinuumSolution solve_continuum(const ScalarGrid& density, const PlaneWave& pw,
                                  double c0, const SolverOptions& opts) {
  const std::size_t n = density.size();
  if (n == 0) throw ValidationError("empty density grid");
  if (density.min_value() < 0.0) {
    throw ValidationError("density grid contains negative values");
  }

  ContinuumSolution sol;
  sol.c0 = c0;
  sol.pw = pw;
  sol.density = density;
  sol.W = VectorGrid::zeros(density.dims, density.box);
  sol.E = VectorGrid::zeros(density.dims, density.box);

  // Voxel geometry and per-voxel quadrature weights h^3 N_j.
  const Vec3 h = density.spacing();
  const double vol = h.x * h.y * h.z;
  const cplx selfc = self_coefficient(pw.k, vol) * c0;

  std::vector<Vec3> centers(n);
  {
    std::size_t idx = 0;
    for (int l = 0; l < density.dims[2]; ++l) {
      for (int j = 0; j < density.dims[1]; ++j) {
        for (int i = 0; i < density.dims[0]; ++i) {
          centers[idx++] = density.center(i, j, l);
        }
      }
    }
  }

  SourceCloud cloud;
  cloud.reserve(n);
  for (const Vec3& c : centers) cloud.push_back(c, CVec3());

  // G x = c0 sum_{j != i} vol N_j K_ij x_j + c0 selfcoef N_i x_i
  auto apply_g = [&](const std::vector<CVec3>& x, std::vector<CVec3>& out) {
    for (std::size_t j = 0; j < n; ++j) {
      cloud.set_amplitude(j, (c0 * vol * density.values[j]) * x[j]);
    }
    std::fill(out.begin(), out.end(), CVec3());
    dipole_field_sum(pw.k, centers, cloud, out.data(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      out[j] += (selfc * density.values[j]) * x[j];
    }
  };

  std::vector<CVec3> b(n);
  for (std::size_t j = 0; j < n; ++j) b[j] = pw.curl(centers[j]);

  // The continuum operator's residual contract is 1e-8 unless the caller
  // tightens it.
  const double tol = std::min(opts.tol, 1e-8);

  std::vector<CVec3>& w = sol.W.values;
  w = b;
  detail::IterStats pic = detail::picard_solve(apply_g, b, w, tol, opts.max_iters);
  sol.info.method = "picard";
  sol.info.iterations = pic.iterations;
  sol.info.contraction = pic.contraction;

  std::vector<CVec3> gx(n), r(n);
  auto residual_of = [&]() {
    apply_g(w, gx);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - w[i] - gx[i];
    return detail::vec_norm(r) / detail::vec_norm(b);
  };
  double residual = residual_of();
  if (!pic.converged || residual > tol) {
    detail::IterStats bi =
        detail::bicgstab_solve(apply_g, b, w, 0.1 * tol, opts.max_iters);
    residual = residual_of();
    sol.info.method = "bicgstab";
    sol.info.iterations = pic.iterations + bi.iterations;
  }
  if (residual > tol) {
    throw NumericalError("continuum solve stalled at relative residual " +
                         std::to_string(residual) + " (contract " +
                         std::to_string(tol) + "); is c0*max(N) too large?");
  }
  sol.info.residual = residual;

  // E(x_i) = E0(x_i) - c0 sum_{j != i} vol N_j grad g(x_i, y_j) x W_j.
  // The self-voxel term of this reconstruction vanishes by symmetry (the
  // integrand is odd over the ball), so plain exclusion is exact here.
  for (std::size_t j = 0; j < n; ++j) {
    cloud.set_amplitude(j, (-c0 * vol * density.values[j]) * w[j]);
  }
  std::vector<CVec3>& e = sol.E.values;
  std::fill(e.begin(), e.end(), CVec3());
  curl_field_sum(pw.k, centers, cloud, e.data(), 0.0);
  for (std::size_t j = 0; j < n; ++j) e[j] += pw.field(centers[j]);

  return sol;
}

double schrodinger_residual(const VectorGrid& E, const ScalarGrid& q, double k) {
  const auto& dims = E.dims;
  if (dims[0] < 3 || dims[1] < 3 || dims[2] < 3) {
    throw ValidationError("grid too small for an interior Laplacian (need >= 3 "
                          "voxels per axis)");
  }
  const Vec3 h = E.spacing();
  double emax = 0.0;
  for (const CVec3& v : E.values) emax = std::max(emax, norm(v));
  if (emax == 0.0) return 0.0;

  double worst = 0.0;
  for (int l = 1; l < dims[2] - 1; ++l) {
    for (int j = 1; j < dims[1] - 1; ++j) {
      for (int i = 1; i < dims[0] - 1; ++i) {
        const CVec3& c = E.at(i, j, l);
        const CVec3 lap =
            (E.at(i + 1, j, l) + E.at(i - 1, j, l) - 2.0 * c) * (1.0 / (h.x * h.x)) +
            (E.at(i, j + 1, l) + E.at(i, j - 1, l) - 2.0 * c) * (1.0 / (h.y * h.y)) +
            (E.at(i, j, l + 1) + E.at(i, j, l - 1) - 2.0 * c) * (1.0 / (h.z * h.z));
        const CVec3 res = -lap - (k * k) * c + q.at(i, j, l) * c;
        worst = std::max(worst, norm(res));
      }
    }
  }
  return worst / (k * k * emax);
}

double schrodinger_residual(const ContinuumSolution& sol) {
  ScalarGrid q = sol.density;
  const double k = sol.pw.k;
  for (double& v : q.values) {
    v = k * k * sol.c0 * v / (1.0 + sol.c0 * v);
  }
  return schrodinger_residual(sol.E, q, k);
}

DipoleCloud continuum_cloud(const ContinuumSolution& sol) {
  DipoleCloud cloud;
  cloud.k = sol.pw.k;
  const std::size_t n = sol.density.size();
  cloud.sources.reserve(n);
  const Vec3 h = sol.density.spacing();
  const double vol = h.x * h.y * h.z;
  std::size_t idx = 0;
  for (int l = 0; l < sol.density.dims[2]; ++l) {
    for (int j = 0; j < sol.density.dims[1]; ++j) {
      for (int i = 0; i < sol.density.dims[0]; ++i, ++idx) {
        const CVec3 amp =
            (-sol.c0 * vol * sol.density.values[idx]) * sol.W.values[idx];
        cloud.sources.push_back(sol.density.center(i, j, l), amp);
      }
    }
  }
  return cloud;
}

}  // namespace emscat
