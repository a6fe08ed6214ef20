#include "emscat/materials.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "emscat/errors.hpp"

namespace emscat {

namespace {

void check_c0(double c0) {
  if (!(c0 > 0.0)) throw ValidationError("normalization constant c0 must be positive");
}

// Central-difference curl of a vector grid at an interior voxel.
CVec3 fd_curl(const VectorGrid& E, int i, int j, int l) {
  const Vec3 h = E.spacing();
  const CVec3 dx = (E.at(i + 1, j, l) - E.at(i - 1, j, l)) * (0.5 / h.x);
  const CVec3 dy = (E.at(i, j + 1, l) - E.at(i, j - 1, l)) * (0.5 / h.y);
  const CVec3 dz = (E.at(i, j, l + 1) - E.at(i, j, l - 1)) * (0.5 / h.z);
  return {dy.z - dz.y, dz.x - dx.z, dx.y - dy.x};
}

Vec3 fd_grad(const ScalarGrid& N, int i, int j, int l) {
  const Vec3 h = N.spacing();
  return {(N.at(i + 1, j, l) - N.at(i - 1, j, l)) * (0.5 / h.x),
          (N.at(i, j + 1, l) - N.at(i, j - 1, l)) * (0.5 / h.y),
          (N.at(i, j, l + 1) - N.at(i, j, l - 1)) * (0.5 / h.z)};
}

void require_same_grid(const VectorGrid& E, const ScalarGrid& N) {
  if (E.dims != N.dims) {
    throw ValidationError("field and density grids have mismatched dims");
  }
}

}  // namespace

ScalarGrid refraction_from_density(const ScalarGrid& N, double c0) {
  check_c0(c0);
  ScalarGrid out = N;
  for (double& v : out.values) {
    if (v < 0.0) throw ValidationError("density must be nonnegative");
    v = 1.0 / (1.0 + c0 * v);
  }
  return out;
}

ScalarGrid mu_over_mu0_from_density(const ScalarGrid& N, double c0) {
  // The homogenized medium keeps its permittivity; the embedded currents
  // act as a magnetic permeability mu/mu0 = 1/(1 + c0 N), which is exactly
  // the refraction coefficient n^2.
  return refraction_from_density(N, c0);
}

ScalarGrid potential_from_density(const ScalarGrid& N, double k, double c0) {
  check_c0(c0);
  ScalarGrid out = N;
  for (double& v : out.values) {
    v = k * k * c0 * v / (1.0 + c0 * v);
  }
  return out;
}

ScalarGrid density_for_target(const ScalarGrid& n2, double c0) {
  check_c0(c0);
  ScalarGrid out = n2;
  std::string offending;
  std::size_t bad = 0;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double v = out.values[i];
    // Reachable set: 0 < n^2 <= 1 (densities are nonnegative).  Allow 1 up
    // to roundoff, mapping to N = 0.
    if (!(v > 0.0) || v > 1.0 + 1e-12) {
      if (bad < 10) {
        offending += (bad ? ", " : "") + std::to_string(i) + " (n2 = " +
                     std::to_string(v) + ")";
      }
      ++bad;
      continue;
    }
    out.values[i] = std::max(0.0, (1.0 / v - 1.0) / c0);
  }
  if (bad > 0) {
    throw InfeasibleError(
        "refraction target infeasible at " + std::to_string(bad) +
        " voxel(s): values must satisfy 0 < n2 <= 1 (need nonnegative density); "
        "first offenders: " + offending);
  }
  return out;
}

double refraction_round_trip(const ScalarGrid& N, double c0) {
  const ScalarGrid n2 = refraction_from_density(N, c0);
  const ScalarGrid back = density_for_target(n2, c0);
  const double scale = std::max(N.max_value(), 1e-300);
  double worst = 0.0;
  for (std::size_t i = 0; i < N.values.size(); ++i) {
    worst = std::max(worst, std::abs(back.values[i] - N.values[i]));
  }
  return worst / scale;
}

double wave_rhs_consistency(const VectorGrid& E, const ScalarGrid& N, double k,
                            double c0) {
  check_c0(c0);
  require_same_grid(E, N);
  const auto& dims = E.dims;
  double worst = 0.0, scale = 0.0;
  for (int l = 1; l < dims[2] - 1; ++l) {
    for (int j = 1; j < dims[1] - 1; ++j) {
      for (int i = 1; i < dims[0] - 1; ++i) {
        const CVec3 curl_e = fd_curl(E, i, j, l);
        const Vec3 grad_n = fd_grad(N, i, j, l);
        const double denom = 1.0 + c0 * N.at(i, j, l);
        const double k2eff = k * k / denom;
        // Through the permeability gradient: K^2 E + [grad(mu)/mu, curl E].
        const Vec3 grad_mu_over_mu = (-c0 / denom) * grad_n;
        const CVec3 form_mu =
            k2eff * E.at(i, j, l) + cross(grad_mu_over_mu, curl_e);
        // Through the density gradient directly.
        const CVec3 form_n =
            k2eff * E.at(i, j, l) - (c0 / denom) * cross(grad_n, curl_e);
        worst = std::max(worst, norm(form_mu - form_n));
        scale = std::max(scale, norm(form_n));
      }
    }
  }
  return scale > 0.0 ? worst / scale : worst;
}

double curl_curl_residual(const VectorGrid& E, const ScalarGrid& N, double k,
                          double c0) {
  check_c0(c0);
  require_same_grid(E, N);
  const auto& dims = E.dims;
  if (dims[0] < 5 || dims[1] < 5 || dims[2] < 5) {
    throw ValidationError("grid too small for a margin-2 interior curl-curl "
                          "(need >= 5 voxels per axis)");
  }
  VectorGrid C = VectorGrid::zeros(E.dims, E.box);
  for (int l = 1; l < dims[2] - 1; ++l) {
    for (int j = 1; j < dims[1] - 1; ++j) {
      for (int i = 1; i < dims[0] - 1; ++i) {
        C.at(i, j, l) = fd_curl(E, i, j, l);
      }
    }
  }
  double emax = 0.0;
  for (const CVec3& v : E.values) emax = std::max(emax, norm(v));
  if (emax == 0.0) return 0.0;

  double worst = 0.0;
  for (int l = 2; l < dims[2] - 2; ++l) {
    for (int j = 2; j < dims[1] - 2; ++j) {
      for (int i = 2; i < dims[0] - 2; ++i) {
        const CVec3 curlcurl = fd_curl(C, i, j, l);
        const double denom = 1.0 + c0 * N.at(i, j, l);
        const Vec3 grad_mu_over_mu = (-c0 / denom) * fd_grad(N, i, j, l);
        const CVec3 rhs = (k * k / denom) * E.at(i, j, l) +
                          cross(grad_mu_over_mu, C.at(i, j, l));
        worst = std::max(worst, norm(curlcurl - rhs));
      }
    }
  }
  return worst / (k * k * emax);
}

}  // namespace emscat
