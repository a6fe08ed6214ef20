#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "emscat/density.hpp"
#include "emscat/vec3.hpp"

namespace emscat {

// Complex vector field sampled at voxel centers of a regular grid; same
// layout conventions as ScalarGrid (row-major, x fastest).
struct VectorGrid {
  std::array<int, 3> dims{0, 0, 0};
  Box box;
  std::vector<CVec3> values;

  static VectorGrid zeros(std::array<int, 3> dims, const Box& box) {
    VectorGrid g;
    g.dims = dims;
    g.box = box;
    g.values.assign(static_cast<std::size_t>(dims[0]) * dims[1] * dims[2], CVec3());
    return g;
  }

  std::size_t size() const { return values.size(); }
  std::size_t index(int i, int j, int l) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(dims[0]) *
               (static_cast<std::size_t>(j) +
                static_cast<std::size_t>(dims[1]) * static_cast<std::size_t>(l));
  }
  const CVec3& at(int i, int j, int l) const { return values[index(i, j, l)]; }
  CVec3& at(int i, int j, int l) { return values[index(i, j, l)]; }

  Vec3 spacing() const {
    const Vec3 s = box.side();
    return {s.x / dims[0], s.y / dims[1], s.z / dims[2]};
  }
  Vec3 center(int i, int j, int l) const {
    const Vec3 h = spacing();
    return {box.min.x + (i + 0.5) * h.x, box.min.y + (j + 0.5) * h.y,
            box.min.z + (l + 0.5) * h.z};
  }
};

}  // namespace emscat
