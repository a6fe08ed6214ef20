#pragma once

// Scene files are JSON documents describing one run of the tool.  Parsing is
// strict about types and value ranges so that a bad scene fails with a
// message naming the offending field, and lenient about extra keys (they
// produce warnings, not errors).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "emscat/density.hpp"
#include "emscat/many_body.hpp"
#include "emscat/plane_wave.hpp"
#include "emscat/shape.hpp"
#include "emscat/vec3.hpp"

namespace emscat {

struct ProbeSpec {
  Box box;
  std::array<int, 3> dims{};
};

struct FarFieldSpec {
  int n_theta = 6;
  int n_phi = 12;
};

struct Scene {
  std::string raw_text;  // exact bytes of the scene file, echoed in reports

  std::optional<double> k;
  std::optional<Vec3> direction;
  std::optional<CVec3> polarization;
  std::optional<PlaneWave> wave_;  // present when k/direction/polarization are

  std::optional<Shape> shape;
  int mesh_level = 3;
  std::vector<double> ka_values;

  std::optional<double> particle_radius;
  std::optional<Density> density;
  std::optional<Box> domain;
  std::optional<std::array<int, 3>> grid_dims;

  std::optional<int> p_per_side;
  bool compare_full = true;

  std::optional<ProbeSpec> probe;
  FarFieldSpec far_field;
  std::vector<double> radiation_radii;

  std::optional<ScalarGrid> target_refraction;

  SolverOptions solver;
  double c0 = kDefaultC0;

  std::vector<std::string> warnings;  // accumulated while parsing

  // Accessors that throw ValidationError naming the missing field.
  const PlaneWave& wave() const;
  const Shape& require_shape() const;
  const Density& require_density() const;
  const Box& require_domain() const;
  double require_particle_radius() const;
  const std::array<int, 3>& require_grid_dims() const;
  int require_p_per_side() const;
  const ScalarGrid& require_target_refraction() const;
};

// Parse a scene from raw JSON text.  `base_dir` resolves relative paths of
// referenced files (density grids, refraction targets).
Scene parse_scene(const std::string& text, const std::string& base_dir);

// Read the file and parse it; the raw bytes are retained for echoing.
Scene load_scene(const std::string& path);

}  // namespace emscat
