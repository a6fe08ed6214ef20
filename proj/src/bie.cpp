#include "emscat/bie.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <string>

#include "emscat/errors.hpp"
#include "emscat/green.hpp"

namespace emscat {

namespace {

// Dense Nystrom matrix of J/2 + T J.  Unknown ordering: node-major,
// components fastest (row 3i+a is component a at node i).
Eigen::MatrixXcd assemble_system(const SurfaceMesh& mesh, double k,
                                 bool include_identity) {
  const std::size_t n = mesh.size();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(3 * n, 3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& xi = mesh.points[i];
    const Vec3& ni = mesh.normals[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      // [N_i, [G, J_j]] = G (N_i . J_j) - J_j (N_i . G),
      // G = grad_s g(s_i, t_j).
      const CVec3 G = grad_green(k, xi, mesh.points[j]);
      const cplx ndg = dot(ni, G);
      const double w = mesh.weights[j];
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          cplx v = G[a] * ni[b];
          if (a == b) v -= ndg;
          A(3 * i + a, 3 * j + b) = w * v;
        }
      }
    }
    if (include_identity) {
      for (int a = 0; a < 3; ++a) A(3 * i + a, 3 * i + a) = 0.5;
    }
  }
  return A;
}

}  // namespace

BieSolution solve_surface_current(const SurfaceMesh& mesh, const PlaneWave& pw) {
  const std::size_t n = mesh.size();
  Eigen::MatrixXcd A = assemble_system(mesh, pw.k, true);

  Eigen::VectorXcd rhs(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const CVec3 r = -cross(mesh.normals[i], pw.field(mesh.points[i]));
    rhs(3 * i + 0) = r.x;
    rhs(3 * i + 1) = r.y;
    rhs(3 * i + 2) = r.z;
  }

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-12)) {
    throw NumericalError("boundary system is numerically singular (rcond = " +
                         std::to_string(rcond) + ")");
  }
  const Eigen::VectorXcd x = lu.solve(rhs);
  const double residual = (A * x - rhs).norm() / rhs.norm();
  if (!(residual <= 1e-10)) {
    throw NumericalError("boundary solve residual " + std::to_string(residual) +
                         " exceeds contract 1e-10");
  }

  BieSolution sol;
  sol.J.resize(n);
  sol.rcond = rcond;
  sol.residual = residual;
  double max_nj = 0.0, max_j = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sol.J[i] = CVec3(x(3 * i + 0), x(3 * i + 1), x(3 * i + 2));
    max_nj = std::max(max_nj, std::abs(dot(mesh.normals[i], sol.J[i])));
    max_j = std::max(max_j, norm(sol.J[i]));
  }
  sol.tangential_defect = max_nj / max_j;
  return sol;
}

std::vector<CVec3> apply_boundary_operator(const SurfaceMesh& mesh, double k,
                                           const std::vector<CVec3>& J) {
  const std::size_t n = mesh.size();
  std::vector<CVec3> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    CVec3 acc;
    const Vec3& xi = mesh.points[i];
    const Vec3& ni = mesh.normals[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const CVec3 G = grad_green(k, xi, mesh.points[j]);
      acc += mesh.weights[j] * cross(ni, cross(G, J[j]));
    }
    out[i] = acc;
  }
  return out;
}

CVec3 total_current(const SurfaceMesh& mesh, const std::vector<CVec3>& J) {
  CVec3 q;
  for (std::size_t i = 0; i < mesh.size(); ++i) q += mesh.weights[i] * J[i];
  return q;
}

CVec3 scattered_field(const SurfaceMesh& mesh, const std::vector<CVec3>& J,
                      double k, const Vec3& x) {
  CVec3 v;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    v += mesh.weights[i] * curl_green_apply(k, x, mesh.points[i], J[i]);
  }
  return v;
}

CVec3 far_field(const SurfaceMesh& mesh, const std::vector<CVec3>& J, double k,
                const Vec3& beta) {
  CVec3 acc;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const cplx ph = std::polar(1.0, -k * dot(beta, mesh.points[i]));
    acc += (mesh.weights[i] * ph) * cross(beta, J[i]);
  }
  return cplx(0.0, k / kFourPi) * acc;
}

double operator_norm(const SurfaceMesh& mesh, double k, int max_iters, double tol) {
  const std::size_t n = mesh.size();
  const Eigen::MatrixXcd T = assemble_system(mesh, k, false);

  // Power iteration on P T^H T P, where P projects onto the tangential
  // subspace (currents have no normal component).
  const auto project = [&](Eigen::VectorXcd& v) {
    for (std::size_t i = 0; i < n; ++i) {
      const CVec3 vi(v(3 * i), v(3 * i + 1), v(3 * i + 2));
      const cplx nv = dot(mesh.normals[i], vi);
      const CVec3 t = vi - nv * CVec3(mesh.normals[i]);
      v(3 * i) = t.x;
      v(3 * i + 1) = t.y;
      v(3 * i + 2) = t.z;
    }
  };

  std::mt19937 rng(12345);
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXcd v(3 * n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(dist(rng), dist(rng));
  project(v);
  v /= v.norm();

  double sigma = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    const Eigen::VectorXcd w = T * v;
    const double s = w.norm();
    Eigen::VectorXcd u = T.adjoint() * w;
    project(u);
    const double un = u.norm();
    if (un == 0.0) return 0.0;
    v = u / un;
    if (it > 0 && std::abs(s - sigma) <= tol * s) {
      sigma = s;
      break;
    }
    sigma = s;
  }
  return sigma;
}

double gauss_identity_residual(const SurfaceMesh& mesh) {
  const std::size_t n = mesh.size();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Vec3& t = mesh.points[j];
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      const Vec3 d = mesh.points[i] - t;
      const double r = norm(d);
      // d g0 / d N_s at s_i for g0 = 1/(4 pi r): -(N_i . d) / (4 pi r^3)
      acc += mesh.weights[i] * (-dot(mesh.normals[i], d) /
                                (kFourPi * r * r * r));
    }
    // sigma_j estimates the excluded self-cell contribution of the same
    // kernel; the corrected sum should equal -1/2.
    const double value = -(acc - mesh.sigma[j]) - 0.5;
    worst = std::max(worst, std::abs(value));
  }
  return worst;
}

}  // namespace emscat
