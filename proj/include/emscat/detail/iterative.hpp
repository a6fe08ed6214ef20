#pragma once

// Shared matrix-free iterative machinery for systems of the form
// (I + G) x = b over arrays of complex 3-vectors.  `apply_g` computes G x.

#include <cmath>
#include <limits>
#include <vector>

#include "emscat/vec3.hpp"

namespace emscat::detail {

inline double vec_norm(const std::vector<CVec3>& v) {
  double acc = 0.0;
  for (const CVec3& x : v) acc += norm2(x);
  return std::sqrt(acc);
}

inline double vec_dist(const std::vector<CVec3>& a, const std::vector<CVec3>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += norm2(a[i] - b[i]);
  return std::sqrt(acc);
}

inline cplx vec_hdot(const std::vector<CVec3>& a, const std::vector<CVec3>& b) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += dot(conj(a[i]), b[i]);
  return acc;
}

struct IterStats {
  int iterations = 0;
  double contraction = 0.0;
  bool converged = false;
};

// Fixed-point iteration x <- b - G x; contracts when ||G|| < 1, which the
// dilute-regime assumptions guarantee in practice.  Returns early without
// convergence when the iteration is observed not to contract.
template <class ApplyG>
IterStats picard_solve(ApplyG&& apply_g, const std::vector<CVec3>& b,
                       std::vector<CVec3>& x, double tol, int max_iters) {
  IterStats res;
  const double bnorm = vec_norm(b);
  std::vector<CVec3> gx(x.size()), xnew(x.size());
  double prev_step = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= max_iters; ++it) {
    apply_g(x, gx);
    for (std::size_t i = 0; i < x.size(); ++i) xnew[i] = b[i] - gx[i];
    const double step = vec_dist(xnew, x);
    const double rho = step / prev_step;
    x = xnew;
    res.iterations = it;
    if (std::isfinite(rho)) res.contraction = rho;
    if (step <= 0.05 * tol * bnorm) {
      res.converged = true;
      return res;
    }
    if (it >= 3 && rho >= 0.9) return res;
    prev_step = step;
  }
  return res;
}

// Textbook BiCGSTAB on (I + G) x = b, used when Picard does not contract.
template <class ApplyG>
IterStats bicgstab_solve(ApplyG&& apply_g, const std::vector<CVec3>& b,
                         std::vector<CVec3>& x, double tol, int max_iters) {
  IterStats res;
  const std::size_t n = b.size();
  const double bnorm = vec_norm(b);
  std::vector<CVec3> gx(n), r(n), rhat(n), p(n), v(n), s(n), t(n);

  auto amul = [&](const std::vector<CVec3>& in, std::vector<CVec3>& out) {
    apply_g(in, gx);
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i] + gx[i];
  };

  amul(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  rhat = r;
  cplx rho = 1.0, alpha = 1.0, omega = 1.0;

  for (int it = 1; it <= max_iters; ++it) {
    res.iterations = it;
    const cplx rho1 = vec_hdot(rhat, r);
    if (std::abs(rho1) < 1e-300) break;
    const cplx beta = (rho1 / rho) * (alpha / omega);
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    amul(p, v);
    alpha = rho1 / vec_hdot(rhat, v);
    for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
    if (vec_norm(s) <= tol * bnorm) {
      for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
      res.converged = true;
      return res;
    }
    amul(s, t);
    omega = vec_hdot(t, s) / vec_hdot(t, t);
    for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i] + omega * s[i];
    for (std::size_t i = 0; i < n; ++i) r[i] = s[i] - omega * t[i];
    if (vec_norm(r) <= tol * bnorm) {
      res.converged = true;
      return res;
    }
    rho = rho1;
  }
  return res;
}

}  // namespace emscat::detail
