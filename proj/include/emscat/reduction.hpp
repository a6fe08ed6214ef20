#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "emscat/density.hpp"
#include "emscat/ensemble.hpp"
#include "emscat/many_body.hpp"

namespace emscat {

// Order reduction: partition the domain into P = P_per_side^3 cells, place
// one representative at each occupied cell center, and give it the weight
// w_p = N(x_p) |cell| that the asymptotic theory assigns to the cell's
// particle population.  When P equals the particle count of a conforming
// lattice the representatives coincide with the particles and w_p = a^3, so
// the reduced system degenerates to the full one.
struct ReducedModel {
  int p_per_side = 0;
  Box domain;
  std::vector<Vec3> centers;        // occupied cell centers
  std::vector<double> weights;      // w_p = N(x_p) |cell|
  std::vector<std::size_t> counts;  // particles per occupied cell
  std::vector<std::string> warnings;
};

ReducedModel build_reduced(const Placement& placement, const Density& density,
                           int p_per_side);

ManyBodySolution reduced_solve(const ReducedModel& model, const PlaneWave& pw,
                               double c0 = kDefaultC0,
                               const SolverOptions& opts = {});

}  // namespace emscat
