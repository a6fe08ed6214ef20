#include "emscat/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "emscat/errors.hpp"

namespace emscat {

namespace {

// Exact minimal pairwise distance (brute force; placements used here stay
// small enough that O(M^2) is acceptable and it avoids any approximation).
double min_pair_distance(const std::vector<Vec3>& pts) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t m = pts.size();
#pragma omp parallel for schedule(static) reduction(min : best)
  for (long long ii = 0; ii < static_cast<long long>(m); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    double local = std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < m; ++j) {
      local = std::min(local, norm2(pts[i] - pts[j]));
    }
    best = std::min(best, local);
  }
  return std::sqrt(best);
}

void append_voxel_lattice(std::vector<Vec3>& centers, const Vec3& lo,
                          const Vec3& side, std::size_t count) {
  if (count == 0) return;
  // q^3 sublattice, thinned by a fixed stride rule to exactly `count`
  // points: keep l-th point iff it is selected by idx = floor(m q^3 / count).
  const int q = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(count))));
  const std::size_t q3 = static_cast<std::size_t>(q) * q * q;
  for (std::size_t m = 0; m < count; ++m) {
    const std::size_t idx = (m * q3) / count;
    const int i = static_cast<int>(idx % q);
    const int j = static_cast<int>((idx / q) % q);
    const int l = static_cast<int>(idx / (static_cast<std::size_t>(q) * q));
    centers.push_back({lo.x + (i + 0.5) * side.x / q, lo.y + (j + 0.5) * side.y / q,
                       lo.z + (l + 0.5) * side.z / q});
  }
}

}  // namespace

double predicted_count(const Density& density, const Box& domain, double a) {
  if (!(a > 0.0)) throw ValidationError("particle radius a must be positive");
  const Vec3 s = domain.side();
  if (!(s.x > 0.0) || !(s.y > 0.0) || !(s.z > 0.0)) {
    throw ValidationError("domain box must have positive extent per axis");
  }
  const double integral = density.integral_over(domain);
  if (!(integral > 0.0)) {
    throw ValidationError("density is identically zero over the domain; "
                          "no particles to place");
  }
  return integral / (a * a * a);
}

Placement place_particles(const Density& density, const Box& domain, double a) {
  const double predicted = predicted_count(density, domain, a);

  Placement placement;
  placement.a = a;
  placement.domain = domain;

  if (density.is_constant()) {
    // Cubic lattice with target spacing d = a / N^{1/3}, fitted per axis.
    const double d = a / std::cbrt(density.at(domain.min));
    const Vec3 s = domain.side();
    const int nx = std::max(1, static_cast<int>(std::llround(s.x / d)));
    const int ny = std::max(1, static_cast<int>(std::llround(s.y / d)));
    const int nz = std::max(1, static_cast<int>(std::llround(s.z / d)));
    placement.centers.reserve(static_cast<std::size_t>(nx) * ny * nz);
    for (int l = 0; l < nz; ++l) {
      for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
          placement.centers.push_back({domain.min.x + (i + 0.5) * s.x / nx,
                                       domain.min.y + (j + 0.5) * s.y / ny,
                                       domain.min.z + (l + 0.5) * s.z / nz});
        }
      }
    }
    placement.min_separation = std::min({s.x / nx, s.y / ny, s.z / nz});
  } else {
    // Per-voxel sublattices: each density voxel b receives
    // n_b = round(N(c_b) |b| / a^3) particles.
    const ScalarGrid& g = density.grid();
    const Vec3 h = g.spacing();
    const double vol = h.x * h.y * h.z;
    for (int l = 0; l < g.dims[2]; ++l) {
      for (int j = 0; j < g.dims[1]; ++j) {
        for (int i = 0; i < g.dims[0]; ++i) {
          const double nb = g.at(i, j, l) * vol / (a * a * a);
          const auto count = static_cast<std::size_t>(std::llround(nb));
          const Vec3 c = g.center(i, j, l);
          append_voxel_lattice(placement.centers,
                               {c.x - 0.5 * h.x, c.y - 0.5 * h.y, c.z - 0.5 * h.z},
                               h, count);
        }
      }
    }
    if (placement.centers.empty()) {
      throw ValidationError("density grid too dilute: every voxel rounded to "
                            "zero particles");
    }
    placement.min_separation = min_pair_distance(placement.centers);
  }

  const double realized = static_cast<double>(placement.centers.size());
  const double rel = std::abs(realized - predicted) / predicted;
  if (rel > 0.05) {
    throw ValidationError(
        "realized particle count " + std::to_string(placement.centers.size()) +
        " deviates from predicted " + std::to_string(predicted) + " by " +
        std::to_string(100.0 * rel) +
        "% (> 5%); refine the density grid or adjust a");
  }

  if (!(placement.min_separation > 2.0 * a)) {
    throw ValidationError(
        "infeasible packing: minimal separation d = " +
        std::to_string(placement.min_separation) + " violates d > 2a = " +
        std::to_string(2.0 * a) + "; lower the density or shrink a");
  }
  return placement;
}

std::size_t count_in_region(const Placement& placement, const Box& region) {
  std::size_t n = 0;
  for (const Vec3& c : placement.centers) {
    if (region.contains(c)) ++n;
  }
  return n;
}

RegimeCheck check_regime(double k, double a, double d) {
  RegimeCheck rc;
  rc.ka = k * a;
  rc.a_over_d = d > 0.0 ? a / d : std::numeric_limits<double>::infinity();
  rc.score = rc.ka + rc.a_over_d;
  rc.admissible = rc.score <= kRegimeThreshold;
  return rc;
}

}  // namespace emscat
