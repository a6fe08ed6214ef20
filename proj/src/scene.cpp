#include "emscat/scene.hpp"

#include <cmath>
#include <filesystem>
#include <set>
#include <string>

#include "json.hpp"

#include "emscat/errors.hpp"
#include "emscat/fsio.hpp"

namespace emscat {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ValidationError("scene field \"" + field + "\": " + what);
}

double as_finite_double(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "must be finite");
  return v;
}

int as_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<int>();
}

Vec3 as_vec3(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) fail(field, "expected an array of 3 numbers");
  return {as_finite_double(j[0], field), as_finite_double(j[1], field),
          as_finite_double(j[2], field)};
}

std::array<int, 3> as_dims(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) fail(field, "expected an array of 3 integers");
  std::array<int, 3> d{};
  for (int a = 0; a < 3; ++a) {
    d[a] = as_int(j[a], field);
    if (d[a] < 1) fail(field, "entries must be positive");
  }
  return d;
}

CVec3 as_polarization(const json& j, const std::string& field) {
  if (j.is_array()) return CVec3(as_vec3(j, field));
  if (j.is_object()) {
    Vec3 re{0, 0, 0}, im{0, 0, 0};
    bool any = false;
    if (j.contains("re")) { re = as_vec3(j.at("re"), field + ".re"); any = true; }
    if (j.contains("im")) { im = as_vec3(j.at("im"), field + ".im"); any = true; }
    if (!any) fail(field, "object form needs \"re\" and/or \"im\" arrays");
    return {cplx(re.x, im.x), cplx(re.y, im.y), cplx(re.z, im.z)};
  }
  fail(field, "expected an array of 3 numbers or {\"re\":[..],\"im\":[..]}");
}

Box as_box(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("min") || !j.contains("max")) {
    fail(field, "expected {\"min\":[..],\"max\":[..]}");
  }
  Box b{as_vec3(j.at("min"), field + ".min"), as_vec3(j.at("max"), field + ".max")};
  const Vec3 s = b.side();
  if (!(s.x > 0.0 && s.y > 0.0 && s.z > 0.0)) {
    fail(field, "max must exceed min along every axis");
  }
  return b;
}

Shape as_shape(const json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("type")) {
    fail(field, "expected {\"type\": \"sphere\"|\"ellipsoid\", ...}");
  }
  const std::string type = j.at("type").is_string()
                               ? j.at("type").get<std::string>()
                               : std::string();
  if (type == "sphere") {
    if (!j.contains("radius")) fail(field, "sphere needs \"radius\"");
    return Shape::sphere(as_finite_double(j.at("radius"), field + ".radius"));
  }
  if (type == "ellipsoid") {
    if (!j.contains("semi_axes")) fail(field, "ellipsoid needs \"semi_axes\"");
    const Vec3 ax = as_vec3(j.at("semi_axes"), field + ".semi_axes");
    return Shape::ellipsoid(ax.x, ax.y, ax.z);
  }
  fail(field, "unknown type \"" + type + "\" (want \"sphere\" or \"ellipsoid\")");
}

ScalarGrid load_grid_ref(const json& j, const std::string& field,
                         const fs::path& base_dir) {
  if (!j.is_object() || !j.contains("grid_path") || !j.at("grid_path").is_string()) {
    fail(field, "expected {\"grid_path\": \"...\"}");
  }
  fs::path p = j.at("grid_path").get<std::string>();
  if (p.is_relative()) p = base_dir / p;
  try {
    return read_grid(p);
  } catch (const ValidationError& e) {
    fail(field, std::string("failed to load grid: ") + e.what());
  }
}

std::vector<double> as_positive_list(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a nonempty array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    const double v = as_finite_double(e, field);
    if (!(v > 0.0)) fail(field, "entries must be positive");
    out.push_back(v);
  }
  return out;
}

}  // namespace

const PlaneWave& Scene::wave() const {
  if (!wave_) {
    throw ValidationError(
        "scene must provide \"k\", \"direction\" and \"polarization\" to "
        "define the incident wave");
  }
  return *wave_;
}

const Shape& Scene::require_shape() const {
  if (!shape) throw ValidationError("scene must provide \"shape\"");
  return *shape;
}

const Density& Scene::require_density() const {
  if (!density) throw ValidationError("scene must provide \"density\"");
  return *density;
}

const Box& Scene::require_domain() const {
  if (!domain) throw ValidationError("scene must provide \"domain\"");
  return *domain;
}

double Scene::require_particle_radius() const {
  if (!particle_radius) throw ValidationError("scene must provide \"particle_radius\"");
  return *particle_radius;
}

const std::array<int, 3>& Scene::require_grid_dims() const {
  if (!grid_dims) throw ValidationError("scene must provide \"grid_dims\"");
  return *grid_dims;
}

int Scene::require_p_per_side() const {
  if (!p_per_side) throw ValidationError("scene must provide \"p_per_side\"");
  return *p_per_side;
}

const ScalarGrid& Scene::require_target_refraction() const {
  if (!target_refraction) {
    throw ValidationError("scene must provide \"target_refraction\"");
  }
  return *target_refraction;
}

Scene parse_scene(const std::string& text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("scene is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("scene root must be a JSON object");

  static const std::set<std::string> known = {
      "k",            "direction",      "polarization",   "shape",
      "mesh_level",   "ka_values",      "particle_radius", "density",
      "domain",       "grid_dims",      "p_per_side",     "compare_full",
      "probe",        "far_field",      "radiation_radii", "target_refraction",
      "solver",       "c0"};

  Scene s;
  s.raw_text = text;
  const fs::path base(base_dir);

  for (const auto& item : doc.items()) {
    if (!known.count(item.key())) {
      s.warnings.push_back("ignoring unrecognized scene field \"" + item.key() + "\"");
    }
  }

  if (doc.contains("k")) {
    const double k = as_finite_double(doc["k"], "k");
    if (!(k > 0.0)) fail("k", "must be positive");
    s.k = k;
  }
  if (doc.contains("direction")) s.direction = as_vec3(doc["direction"], "direction");
  if (doc.contains("polarization")) {
    s.polarization = as_polarization(doc["polarization"], "polarization");
  }
  if (s.k && s.direction && s.polarization) {
    s.wave_ = make_plane_wave(*s.k, *s.direction, *s.polarization, &s.warnings);
  }

  if (doc.contains("shape")) s.shape = as_shape(doc["shape"], "shape");
  if (doc.contains("mesh_level")) {
    s.mesh_level = as_int(doc["mesh_level"], "mesh_level");
    if (s.mesh_level < 1 || s.mesh_level > 8) fail("mesh_level", "must be in [1, 8]");
  }
  if (doc.contains("ka_values")) s.ka_values = as_positive_list(doc["ka_values"], "ka_values");

  if (doc.contains("particle_radius")) {
    const double a = as_finite_double(doc["particle_radius"], "particle_radius");
    if (!(a > 0.0)) fail("particle_radius", "must be positive");
    s.particle_radius = a;
  }

  if (doc.contains("density")) {
    const json& d = doc["density"];
    if (d.is_number()) {
      const double v = as_finite_double(d, "density");
      if (v < 0.0) fail("density", "must be nonnegative");
      s.density = Density::constant(v);
    } else if (d.is_object()) {
      s.density = Density::tabulated(load_grid_ref(d, "density", base));
    } else {
      fail("density", "expected a number or {\"grid_path\": \"...\"}");
    }
  }

  if (doc.contains("domain")) s.domain = as_box(doc["domain"], "domain");
  if (doc.contains("grid_dims")) s.grid_dims = as_dims(doc["grid_dims"], "grid_dims");

  if (doc.contains("p_per_side")) {
    const int p = as_int(doc["p_per_side"], "p_per_side");
    if (p < 1) fail("p_per_side", "must be positive");
    s.p_per_side = p;
  }
  if (doc.contains("compare_full")) {
    if (!doc["compare_full"].is_boolean()) fail("compare_full", "expected a boolean");
    s.compare_full = doc["compare_full"].get<bool>();
  }

  if (doc.contains("probe")) {
    const json& p = doc["probe"];
    if (!p.is_object() || !p.contains("dims")) {
      fail("probe", "expected {\"min\":[..],\"max\":[..],\"dims\":[..]}");
    }
    ProbeSpec spec;
    spec.box = as_box(p, "probe");
    spec.dims = as_dims(p.at("dims"), "probe.dims");
    s.probe = spec;
  }

  if (doc.contains("far_field")) {
    const json& f = doc["far_field"];
    if (!f.is_object()) fail("far_field", "expected {\"n_theta\":..,\"n_phi\":..}");
    if (f.contains("n_theta")) s.far_field.n_theta = as_int(f["n_theta"], "far_field.n_theta");
    if (f.contains("n_phi")) s.far_field.n_phi = as_int(f["n_phi"], "far_field.n_phi");
    if (s.far_field.n_theta < 1 || s.far_field.n_phi < 1) {
      fail("far_field", "n_theta and n_phi must be positive");
    }
  }

  if (doc.contains("radiation_radii")) {
    s.radiation_radii = as_positive_list(doc["radiation_radii"], "radiation_radii");
  }

  if (doc.contains("target_refraction")) {
    s.target_refraction = load_grid_ref(doc["target_refraction"], "target_refraction", base);
  }

  if (doc.contains("solver")) {
    const json& sv = doc["solver"];
    if (!sv.is_object()) fail("solver", "expected an object");
    if (sv.contains("method")) {
      const std::string m = sv["method"].is_string() ? sv["method"].get<std::string>()
                                                     : std::string();
      if (m == "auto") s.solver.method = SolverOptions::Method::automatic;
      else if (m == "direct") s.solver.method = SolverOptions::Method::direct;
      else if (m == "iterative") s.solver.method = SolverOptions::Method::iterative;
      else fail("solver.method", "must be \"auto\", \"direct\" or \"iterative\"");
    }
    if (sv.contains("tol")) {
      s.solver.tol = as_finite_double(sv["tol"], "solver.tol");
      if (!(s.solver.tol > 0.0)) fail("solver.tol", "must be positive");
    }
    if (sv.contains("max_iters")) {
      s.solver.max_iters = as_int(sv["max_iters"], "solver.max_iters");
      if (s.solver.max_iters < 1) fail("solver.max_iters", "must be positive");
    }
  }

  if (doc.contains("c0")) {
    s.c0 = as_finite_double(doc["c0"], "c0");
    if (!(s.c0 > 0.0)) fail("c0", "must be positive");
  }

  return s;
}

Scene load_scene(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("cannot read scene file: ") + e.what());
  }
  return parse_scene(text, fs::path(path).parent_path().string());
}

}  // namespace emscat
