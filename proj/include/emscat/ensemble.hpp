#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "emscat/density.hpp"
#include "emscat/vec3.hpp"

namespace emscat {

// Deterministic particle placement: M = a^{-3} int_Omega N dx identical
// particles of radius a arranged on regular sublattices so that the local
// count per region tracks the prescribed density.  Placement is seedless;
// identical inputs give identical configurations.
struct Placement {
  double a = 0.0;
  Box domain;
  std::vector<Vec3> centers;
  double min_separation = 0.0;  // exact minimal center-to-center distance
  std::vector<std::string> warnings;
};

// Predicted particle count a^{-3} int_Omega N dx (not rounded).
double predicted_count(const Density& density, const Box& domain, double a);

Placement place_particles(const Density& density, const Box& domain, double a);

// Number of placed centers inside a closed box.
std::size_t count_in_region(const Placement& placement, const Box& region);

// Small-particle / dilute regime gate: score = ka + a/d with d the minimal
// separation; admissible when score <= 0.2.
struct RegimeCheck {
  double ka = 0.0;
  double a_over_d = 0.0;
  double score = 0.0;
  bool admissible = false;
};

inline constexpr double kRegimeThreshold = 0.2;

RegimeCheck check_regime(double k, double a, double d);

}  // namespace emscat
