#include "emscat/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "json.hpp"

#include "emscat/errors.hpp"
#include "emscat/fsio.hpp"

namespace emscat {

namespace {

int clamp_index(double t, int n) {
  const int i = static_cast<int>(std::floor(t));
  return std::clamp(i, 0, n - 1);
}

void validate_grid(const ScalarGrid& g, const std::string& what) {
  if (g.dims[0] < 1 || g.dims[1] < 1 || g.dims[2] < 1) {
    throw ValidationError(what + ": dims must all be >= 1");
  }
  const Vec3 s = g.box.side();
  if (!(s.x > 0.0) || !(s.y > 0.0) || !(s.z > 0.0)) {
    throw ValidationError(what + ": box must have positive extent per axis");
  }
  const std::size_t expect = static_cast<std::size_t>(g.dims[0]) * g.dims[1] * g.dims[2];
  if (g.values.size() != expect) {
    throw ValidationError(what + ": values size " + std::to_string(g.values.size()) +
                          " does not match dims product " + std::to_string(expect));
  }
  for (double v : g.values) {
    if (!std::isfinite(v)) throw ValidationError(what + ": non-finite value");
  }
}

}  // namespace

ScalarGrid ScalarGrid::uniform(std::array<int, 3> dims, const Box& box, double v) {
  ScalarGrid g;
  g.dims = dims;
  g.box = box;
  g.values.assign(static_cast<std::size_t>(dims[0]) * dims[1] * dims[2], v);
  validate_grid(g, "grid");
  return g;
}

double ScalarGrid::value_at(const Vec3& p) const {
  const Vec3 h = spacing();
  const int i = clamp_index((p.x - box.min.x) / h.x, dims[0]);
  const int j = clamp_index((p.y - box.min.y) / h.y, dims[1]);
  const int l = clamp_index((p.z - box.min.z) / h.z, dims[2]);
  return at(i, j, l);
}

double ScalarGrid::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

double ScalarGrid::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

ScalarGrid read_grid(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("cannot read grid file: ") + e.what());
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("grid file " + path.string() + ": " + e.what());
  }
  ScalarGrid g;
  try {
    const auto& dims = j.at("dims");
    for (int d = 0; d < 3; ++d) g.dims[d] = dims.at(d).get<int>();
    const auto& box = j.at("box");
    for (int d = 0; d < 3; ++d) {
      const double lo = box.at("min").at(d).get<double>();
      const double hi = box.at("max").at(d).get<double>();
      (d == 0 ? g.box.min.x : d == 1 ? g.box.min.y : g.box.min.z) = lo;
      (d == 0 ? g.box.max.x : d == 1 ? g.box.max.y : g.box.max.z) = hi;
    }
    g.values = j.at("values").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("grid file " + path.string() + ": " + e.what());
  }
  validate_grid(g, "grid file " + path.string());
  return g;
}

void write_grid(const ScalarGrid& grid, const std::filesystem::path& path) {
  validate_grid(grid, "grid");
  std::string out;
  out.reserve(grid.values.size() * 24 + 256);
  char buf[64];
  out += "{\n  \"dims\": [";
  out += std::to_string(grid.dims[0]) + ", " + std::to_string(grid.dims[1]) + ", " +
         std::to_string(grid.dims[2]);
  out += "],\n  \"box\": {\"min\": [";
  const double mins[3] = {grid.box.min.x, grid.box.min.y, grid.box.min.z};
  const double maxs[3] = {grid.box.max.x, grid.box.max.y, grid.box.max.z};
  for (int d = 0; d < 3; ++d) {
    std::snprintf(buf, sizeof(buf), "%.17g", mins[d]);
    out += buf;
    if (d < 2) out += ", ";
  }
  out += "], \"max\": [";
  for (int d = 0; d < 3; ++d) {
    std::snprintf(buf, sizeof(buf), "%.17g", maxs[d]);
    out += buf;
    if (d < 2) out += ", ";
  }
  out += "]},\n  \"values\": [";
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", grid.values[i]);
    if (i) out += ", ";
    out += buf;
  }
  out += "]\n}\n";
  write_file_atomic(path, out);
}

Density Density::constant(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ValidationError("density must be a finite nonnegative number");
  }
  Density d;
  d.constant_ = true;
  d.value_ = value;
  return d;
}

Density Density::tabulated(ScalarGrid grid) {
  validate_grid(grid, "density grid");
  if (grid.min_value() < 0.0) {
    throw ValidationError("density grid contains negative values");
  }
  Density d;
  d.constant_ = false;
  d.grid_ = std::move(grid);
  return d;
}

double Density::integral_over(const Box& region) const {
  if (constant_) return value_ * region.volume();
  // Sum of value * overlap(voxel, region) over all voxels; exact for the
  // piecewise-constant interpretation.
  const Vec3 h = grid_.spacing();
  double acc = 0.0;
  for (int l = 0; l < grid_.dims[2]; ++l) {
    for (int j = 0; j < grid_.dims[1]; ++j) {
      for (int i = 0; i < grid_.dims[0]; ++i) {
        const Vec3 c = grid_.center(i, j, l);
        const double ox = std::max(0.0, std::min(region.max.x, c.x + 0.5 * h.x) -
                                            std::max(region.min.x, c.x - 0.5 * h.x));
        const double oy = std::max(0.0, std::min(region.max.y, c.y + 0.5 * h.y) -
                                            std::max(region.min.y, c.y - 0.5 * h.y));
        const double oz = std::max(0.0, std::min(region.max.z, c.z + 0.5 * h.z) -
                                            std::max(region.min.z, c.z - 0.5 * h.z));
        acc += grid_.at(i, j, l) * ox * oy * oz;
      }
    }
  }
  return acc;
}

}  // namespace emscat
