#include "emscat/many_body.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <string>

#include "emscat/detail/iterative.hpp"
#include "emscat/errors.hpp"
#include "emscat/green.hpp"

namespace emscat {

namespace {

using detail::vec_norm;

// Matrix-free application of the interaction block G:
//   (G x)_j = c0 sum_{m != j} w_m [s1 x_m + s2 (rh.x_m) rh].
class Interaction {
 public:
  Interaction(double k, const std::vector<Vec3>& centers,
              const std::vector<double>& weights, double c0)
      : k_(k), c0_(c0), centers_(centers), weights_(weights) {
    cloud_.reserve(centers.size());
    for (const Vec3& c : centers) cloud_.push_back(c, CVec3());
  }

  void apply(const std::vector<CVec3>& x, std::vector<CVec3>& y) {
    for (std::size_t m = 0; m < x.size(); ++m) {
      cloud_.set_amplitude(m, (c0_ * weights_[m]) * x[m]);
    }
    std::fill(y.begin(), y.end(), CVec3());
    dipole_field_sum(k_, centers_, cloud_, y.data(), 0.0);
  }

 private:
  double k_, c0_;
  const std::vector<Vec3>& centers_;
  const std::vector<double>& weights_;
  SourceCloud cloud_;
};

}  // namespace

ManyBodySolution solve_weighted(const std::vector<Vec3>& centers,
                                const std::vector<double>& weights,
                                const PlaneWave& pw, double c0,
                                const SolverOptions& opts) {
  if (centers.empty()) throw ValidationError("no scatterers to solve for");
  if (centers.size() != weights.size()) {
    throw ValidationError("centers/weights size mismatch");
  }
  for (double w : weights) {
    if (!(w > 0.0)) throw ValidationError("scatterer weights must be positive");
  }

  const std::size_t m = centers.size();
  ManyBodySolution sol;
  sol.c0 = c0;
  sol.pw = pw;
  sol.centers = centers;
  sol.weights = weights;

  std::vector<CVec3> b(m);
  for (std::size_t i = 0; i < m; ++i) b[i] = pw.curl(centers[i]);

  SolverOptions::Method method = opts.method;
  if (method == SolverOptions::Method::automatic) {
    method = m <= 512 ? SolverOptions::Method::direct
                      : SolverOptions::Method::iterative;
  }

  if (method == SolverOptions::Method::direct) {
    if (m > kDirectLimit) {
      throw ValidationError("direct method supports at most " +
                            std::to_string(kDirectLimit) + " scatterers (got " +
                            std::to_string(m) + "); use the iterative method");
    }
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(3 * m, 3 * m);
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t s = 0; s < m; ++s) {
        if (s == j) continue;
        const Vec3 d = centers[j] - centers[s];
        const double r = norm(d);
        const Vec3 rh = d / r;
        const auto [s1, s2] = dipole_coeffs(pw.k, r);
        const double cw = c0 * weights[s];
        for (int a = 0; a < 3; ++a) {
          for (int bb = 0; bb < 3; ++bb) {
            cplx v = s2 * rh[a] * rh[bb];
            if (a == bb) v += s1;
            A(3 * j + a, 3 * s + bb) = cw * v;
          }
        }
      }
    }
    Eigen::VectorXcd rhs(3 * m);
    for (std::size_t i = 0; i < m; ++i) {
      rhs(3 * i) = b[i].x;
      rhs(3 * i + 1) = b[i].y;
      rhs(3 * i + 2) = b[i].z;
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-12)) {
      throw NumericalError("many-body system numerically singular (rcond = " +
                           std::to_string(rcond) + ")");
    }
    const Eigen::VectorXcd x = lu.solve(rhs);
    const double residual = (A * x - rhs).norm() / rhs.norm();
    if (!(residual <= opts.tol)) {
      throw NumericalError("direct solve residual " + std::to_string(residual) +
                           " exceeds contract " + std::to_string(opts.tol));
    }
    sol.A.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      sol.A[i] = CVec3(x(3 * i), x(3 * i + 1), x(3 * i + 2));
    }
    sol.info.method = "direct";
    sol.info.rcond = rcond;
    sol.info.residual = residual;
    return sol;
  }

  // Iterative path.
  Interaction G(pw.k, centers, weights, c0);
  auto apply_g = [&G](const std::vector<CVec3>& in, std::vector<CVec3>& out) {
    G.apply(in, out);
  };
  sol.A = b;
  detail::IterStats pic = detail::picard_solve(apply_g, b, sol.A, opts.tol,
                                               opts.max_iters);
  sol.info.method = "picard";
  sol.info.iterations = pic.iterations;
  sol.info.contraction = pic.contraction;

  std::vector<CVec3> gx(m), r(m);
  auto residual_of = [&](const std::vector<CVec3>& x) {
    G.apply(x, gx);
    for (std::size_t i = 0; i < m; ++i) r[i] = b[i] - x[i] - gx[i];
    return vec_norm(r) / vec_norm(b);
  };

  double residual = residual_of(sol.A);
  if (!pic.converged || residual > opts.tol) {
    detail::IterStats bi = detail::bicgstab_solve(apply_g, b, sol.A,
                                                  0.1 * opts.tol, opts.max_iters);
    residual = residual_of(sol.A);
    sol.info.method = "bicgstab";
    sol.info.iterations = pic.iterations + bi.iterations;
  }
  if (residual > opts.tol) {
    throw NumericalError("iterative solve stalled at relative residual " +
                         std::to_string(residual) + " (contract " +
                         std::to_string(opts.tol) + ", " +
                         std::to_string(sol.info.iterations) + " iterations)");
  }
  sol.info.residual = residual;
  return sol;
}

ManyBodySolution solve_many_body(const Placement& placement, const PlaneWave& pw,
                                 double c0, const SolverOptions& opts) {
  const double w = placement.a * placement.a * placement.a;
  return solve_weighted(placement.centers,
                        std::vector<double>(placement.centers.size(), w), pw, c0,
                        opts);
}

std::vector<CVec3> dipole_moments(const ManyBodySolution& sol) {
  std::vector<CVec3> q(sol.A.size());
  for (std::size_t m = 0; m < q.size(); ++m) {
    q[m] = (-sol.c0 * sol.weights[m]) * sol.A[m];
  }
  return q;
}

DipoleCloud scattered_cloud(const ManyBodySolution& sol) {
  DipoleCloud cloud;
  cloud.k = sol.pw.k;
  cloud.sources.reserve(sol.centers.size());
  const std::vector<CVec3> q = dipole_moments(sol);
  for (std::size_t m = 0; m < sol.centers.size(); ++m) {
    cloud.sources.push_back(sol.centers[m], q[m]);
  }
  return cloud;
}

CVec3 field_at(const ManyBodySolution& sol, const Vec3& x) {
  for (std::size_t m = 0; m < sol.centers.size(); ++m) {
    const double r = norm(x - sol.centers[m]);
    const double rmin = std::cbrt(sol.weights[m]);
    if (r < rmin) {
      throw NumericalError("field evaluation point lies inside scatterer " +
                           std::to_string(m) + " (distance " + std::to_string(r) +
                           " < " + std::to_string(rmin) + ")");
    }
  }
  const DipoleCloud cloud = scattered_cloud(sol);
  return sol.pw.field(x) + cloud_field(cloud, x);
}

CVec3 effective_field_at(const ManyBodySolution& sol, std::size_t j) {
  const std::vector<CVec3> q = dipole_moments(sol);
  CVec3 acc = sol.pw.field(sol.centers[j]);
  for (std::size_t m = 0; m < sol.centers.size(); ++m) {
    if (m == j) continue;
    acc += curl_green_apply(sol.pw.k, sol.centers[j], sol.centers[m], q[m]);
  }
  return acc;
}

CVec3 far_amplitude(const ManyBodySolution& sol, const Vec3& beta) {
  const std::vector<CVec3> q = dipole_moments(sol);
  CVec3 acc;
  for (std::size_t m = 0; m < sol.centers.size(); ++m) {
    const cplx ph = std::polar(1.0, -sol.pw.k * dot(beta, sol.centers[m]));
    acc += ph * cross(beta, q[m]);
  }
  return cplx(0.0, sol.pw.k / kFourPi) * acc;
}

}  // namespace emscat
