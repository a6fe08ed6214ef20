#pragma once

#include <cstddef>
#include <vector>

#include "emscat/shape.hpp"
#include "emscat/vec3.hpp"

namespace emscat {

// Nystrom quadrature mesh on an ellipsoid surface.
//
// Nodes form a latitude/longitude product rule: Gauss-Legendre nodes in
// u = cos(theta) (so no node sits on a pole) times a uniform midpoint rule in
// phi.  Refinement level L uses n_theta = 2^(L+1) bands and n_phi = 2^(L+2)
// longitudes, i.e. 2^(2L+3) nodes total.
//
// `sigma` holds a per-node near-diagonal correction coefficient for weakly
// singular integrands of local form 1/(8 pi rho): the kernel value integrated
// over the node's own quadrature cell, estimated from the cell extents and
// the local curvature.  The potential-theory identity check consumes it; the
// boundary-operator assembly does not need it (see bie.cpp).
struct SurfaceMesh {
  Shape shape;
  int level = 0;
  std::vector<Vec3> points;
  std::vector<Vec3> normals;   // outward unit normals
  std::vector<double> weights; // quadrature weights (surface measure)
  std::vector<double> sigma;   // self-cell coefficients, see above

  std::size_t size() const { return points.size(); }

  double area() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

// Gauss-Legendre rule on [-1, 1] (Newton iteration on the Legendre
// recurrence; standard textbook construction).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

SurfaceMesh build_mesh(const Shape& shape, int level);

}  // namespace emscat
