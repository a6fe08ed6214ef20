#include "emscat/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "emscat/errors.hpp"

namespace emscat {

ReducedModel build_reduced(const Placement& placement, const Density& density,
                           int p_per_side) {
  if (p_per_side < 1) throw ValidationError("P_per_side must be >= 1");
  const std::size_t M = placement.centers.size();
  const std::size_t P =
      static_cast<std::size_t>(p_per_side) * p_per_side * p_per_side;
  if (P > M) {
    throw ValidationError("reduction needs P = " + std::to_string(P) +
                          " <= M = " + std::to_string(M));
  }

  ReducedModel model;
  model.p_per_side = p_per_side;
  model.domain = placement.domain;
  if (P > M / 8) {
    model.warnings.push_back(
        "P = " + std::to_string(P) + " is not small against M = " +
        std::to_string(M) + " (P > M/8); the reduced model is only expected "
        "to be accurate for P << M or P = M");
  }

  // Bin particles into the P cells.
  const Vec3 lo = placement.domain.min;
  const Vec3 side = placement.domain.side();
  std::vector<std::size_t> counts(P, 0);
  for (const Vec3& c : placement.centers) {
    const int i = std::clamp(
        static_cast<int>((c.x - lo.x) / side.x * p_per_side), 0, p_per_side - 1);
    const int j = std::clamp(
        static_cast<int>((c.y - lo.y) / side.y * p_per_side), 0, p_per_side - 1);
    const int l = std::clamp(
        static_cast<int>((c.z - lo.z) / side.z * p_per_side), 0, p_per_side - 1);
    counts[static_cast<std::size_t>(i) +
           static_cast<std::size_t>(p_per_side) *
               (static_cast<std::size_t>(j) +
                static_cast<std::size_t>(p_per_side) * l)]++;
  }

  const double cell_vol = placement.domain.volume() / static_cast<double>(P);
  const double a3 = placement.a * placement.a * placement.a;
  double weight_sum = 0.0;
  for (int l = 0; l < p_per_side; ++l) {
    for (int j = 0; j < p_per_side; ++j) {
      for (int i = 0; i < p_per_side; ++i) {
        const std::size_t idx =
            static_cast<std::size_t>(i) +
            static_cast<std::size_t>(p_per_side) *
                (static_cast<std::size_t>(j) +
                 static_cast<std::size_t>(p_per_side) * l);
        if (counts[idx] == 0) continue;
        const Vec3 center{lo.x + (i + 0.5) * side.x / p_per_side,
                          lo.y + (j + 0.5) * side.y / p_per_side,
                          lo.z + (l + 0.5) * side.z / p_per_side};
        const double w = density.at(center) * cell_vol;
        model.centers.push_back(center);
        model.weights.push_back(w);
        model.counts.push_back(counts[idx]);
        weight_sum += w;
      }
    }
  }
  if (model.centers.empty()) {
    throw ValidationError("reduction produced no occupied cells");
  }

  // Mass-consistency invariant: the analytic weights should reproduce the
  // total particle volume a^3 M.
  const double rel = std::abs(weight_sum - a3 * static_cast<double>(M)) /
                     (a3 * static_cast<double>(M));
  if (rel > 0.10) {
    model.warnings.push_back(
        "reduced weights sum deviates from a^3 M by " +
        std::to_string(100.0 * rel) + "% (> 10%); density and placement are "
        "inconsistent at this cell size");
  }
  return model;
}

ManyBodySolution reduced_solve(const ReducedModel& model, const PlaneWave& pw,
                               double c0, const SolverOptions& opts) {
  return solve_weighted(model.centers, model.weights, pw, c0, opts);
}

}  // namespace emscat
