#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <vector>

#include "emscat/vec3.hpp"

namespace emscat {

// Axis-aligned box.
struct Box {
  Vec3 min, max;

  Vec3 side() const { return max - min; }
  double volume() const {
    const Vec3 s = side();
    return s.x * s.y * s.z;
  }
  bool contains(const Vec3& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
           p.z >= min.z && p.z <= max.z;
  }
};

// Scalar field sampled at voxel centers of a regular grid over a box.
// Storage is row-major with x fastest: index = i + nx*(j + ny*l).
struct ScalarGrid {
  std::array<int, 3> dims{0, 0, 0};
  Box box;
  std::vector<double> values;

  static ScalarGrid uniform(std::array<int, 3> dims, const Box& box, double v);

  std::size_t size() const { return values.size(); }
  std::size_t index(int i, int j, int l) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(dims[0]) *
               (static_cast<std::size_t>(j) +
                static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(l));
  }
  double at(int i, int j, int l) const { return values[index(i, j, l)]; }
  double& at(int i, int j, int l) { return values[index(i, j, l)]; }

  Vec3 spacing() const {
    const Vec3 s = box.side();
    return {s.x / dims[0], s.y / dims[1], s.z / dims[2]};
  }
  Vec3 center(int i, int j, int l) const {
    const Vec3 h = spacing();
    return {box.min.x + (i + 0.5) * h.x, box.min.y + (j + 0.5) * h.y,
            box.min.z + (l + 0.5) * h.z};
  }

  // Piecewise-constant voxel lookup, clamped to the grid.
  double value_at(const Vec3& p) const;

  double min_value() const;
  double max_value() const;
};

// Grid file I/O.  Format: JSON object
//   {"dims": [nx,ny,nz], "box": {"min": [..], "max": [..]}, "values": [..]}
// with values row-major, x fastest.  Writes are atomic (temp + rename) and
// use 17 significant digits.
ScalarGrid read_grid(const std::filesystem::path& path);
void write_grid(const ScalarGrid& grid, const std::filesystem::path& path);

// Particle number density N >= 0: either a constant or a tabulated grid
// interpreted as piecewise constant per voxel.
class Density {
 public:
  static Density constant(double value);
  static Density tabulated(ScalarGrid grid);

  bool is_constant() const { return constant_; }
  double at(const Vec3& p) const { return constant_ ? value_ : grid_.value_at(p); }
  double max_value() const { return constant_ ? value_ : grid_.max_value(); }
  double min_value() const { return constant_ ? value_ : grid_.min_value(); }
  const ScalarGrid& grid() const { return grid_; }

  // Exact integral of the (piecewise-constant) density over a box.
  double integral_over(const Box& region) const;

 private:
  bool constant_ = true;
  double value_ = 0.0;
  ScalarGrid grid_;
};

}  // namespace emscat
