#include "emscat/surface_mesh.hpp"

#include <algorithm>
#include <cmath>

#include "emscat/errors.hpp"

namespace emscat {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double pi = 3.14159265358979323846;
  // Nodes come in +/- pairs; solve for the first half from asymptotic
  // starting guesses and mirror.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence: P_j(x), j = 0..n, and derivative at x.
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

namespace {

// Integral of 1/rho over an axis-aligned rectangle [0,A] x [0,B] with the
// singularity at the origin corner: F(A,B) = A asinh(B/A) + B asinh(A/B).
double corner_integral(double A, double B) {
  if (A <= 0.0 || B <= 0.0) return 0.0;
  return A * std::asinh(B / A) + B * std::asinh(A / B);
}

}  // namespace

SurfaceMesh build_mesh(const Shape& shape, int level) {
  if (level < 1 || level > 8) {
    throw ValidationError("mesh level must be between 1 and 8");
  }
  const int n_theta = 1 << (level + 1);
  const int n_phi = 1 << (level + 2);
  const double pi = 3.14159265358979323846;

  std::vector<double> u, gw;
  gauss_legendre(n_theta, u, gw);

  // theta angles in increasing order; u is increasing so theta = acos(u)
  // decreases -- reverse.
  std::vector<double> theta(n_theta), tw(n_theta);
  for (int i = 0; i < n_theta; ++i) {
    theta[i] = std::acos(u[n_theta - 1 - i]);
    tw[i] = gw[n_theta - 1 - i];
  }

  // theta-cell edges: midpoints between adjacent nodes, closed by 0 and pi.
  // Gauss nodes are not midpoints of these cells, so the cells are used only
  // for the weakly singular self-cell estimate below.
  std::vector<double> edges(n_theta + 1);
  edges.front() = 0.0;
  edges.back() = pi;
  for (int i = 1; i < n_theta; ++i) edges[i] = 0.5 * (theta[i - 1] + theta[i]);

  SurfaceMesh mesh;
  mesh.shape = shape;
  mesh.level = level;
  const std::size_t n = static_cast<std::size_t>(n_theta) * n_phi;
  mesh.points.reserve(n);
  mesh.normals.reserve(n);
  mesh.weights.reserve(n);
  mesh.sigma.reserve(n);

  const double dphi = 2.0 * pi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double th = theta[i];
    const double st = std::sin(th);
    for (int j = 0; j < n_phi; ++j) {
      const double ph = (j + 0.5) * dphi;
      const Vec3 p = shape.point(th, ph);
      const Vec3 tth = shape.tangent_theta(th, ph);
      const Vec3 tph = shape.tangent_phi(th, ph);
      const Vec3 cr = cross(tth, tph);
      const double jac = norm(cr);
      Vec3 nrm = cr / jac;
      if (dot(nrm, p) < 0.0) nrm = -nrm;

      // Quadrature weight: Gauss-Legendre in u = cos(theta) converted back
      // to the theta measure (d theta = du / sin theta), uniform in phi.
      const double w = jac * (tw[i] / st) * dphi;

      // Self-cell coefficient for kernels with local behaviour
      // (kappa1+kappa2)/(16 pi rho): integrate 1/rho over the (generally
      // off-center) metric rectangle around the node, by corner
      // decomposition, then halve.  The half-factor is calibrated against
      // the classical double-layer potential identity on spheres and
      // ellipsoids (Gauss nodes are interior but not central in their cells,
      // and the flat-rectangle model overestimates the curved patch).
      const double lth = norm(tth);
      const double lph = norm(tph);
      const double h1m = lth * (th - edges[i]);
      const double h1p = lth * (edges[i + 1] - th);
      const double h2 = lph * (0.5 * dphi);
      const double cell =
          2.0 * (corner_integral(h1m, h2) + corner_integral(h1p, h2));
      const double ksum = shape.curvature_sum(p);
      const double sigma = 0.5 * ksum / (16.0 * pi) * cell;

      mesh.points.push_back(p);
      mesh.normals.push_back(nrm);
      mesh.weights.push_back(w);
      mesh.sigma.push_back(sigma);
    }
  }
  return mesh;
}

}  // namespace emscat
