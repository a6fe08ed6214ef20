// emscat: asymptotic electromagnetic scattering by many small perfectly
// conducting bodies.  Every subcommand reads a JSON scene, writes its
// artifacts atomically into --out, and always leaves a run_report.json
// behind (also on failure).
//
// Exit codes: 0 ok, 2 validation error, 3 numerical error, 4 infeasible.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "emscat/asymptotics.hpp"
#include "emscat/bie.hpp"
#include "emscat/continuum.hpp"
#include "emscat/csv.hpp"
#include "emscat/ensemble.hpp"
#include "emscat/errors.hpp"
#include "emscat/fields.hpp"
#include "emscat/fsio.hpp"
#include "emscat/kernels.hpp"
#include "emscat/many_body.hpp"
#include "emscat/materials.hpp"
#include "emscat/reduction.hpp"
#include "emscat/report.hpp"
#include "emscat/scene.hpp"
#include "emscat/surface_mesh.hpp"

namespace fs = std::filesystem;
using namespace emscat;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CommonArgs {
  std::string scene_path;
  std::string out_dir = "out";
  int threads = 0;  // 0: machine parallelism
  std::string method;
  bool override_regime = false;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--scene", args.scene_path, "Scene JSON file")
      ->required();
  cmd->add_option("--out", args.out_dir, "Output directory (default: out)");
  cmd->add_option("--threads", args.threads,
                  "Worker threads (default: machine parallelism); results do "
                  "not depend on this setting");
  cmd->add_option("--method", args.method, "Override the scene's solver method")
      ->check(CLI::IsMember({"direct", "iterative"}));
  cmd->add_flag("--override-regime", args.override_regime,
                "Proceed despite a failed small-particle regime check");
}

void configure_threads(int threads, RunReport& report) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
  report.diagnostics()["threads"] = omp_get_max_threads();
#else
  (void)threads;
  report.diagnostics()["threads"] = 1;
#endif
  report.diagnostics()["simd"] = simd_name(active_simd());
}

void apply_method_override(Scene& scene, const std::string& method) {
  if (method == "direct") scene.solver.method = SolverOptions::Method::direct;
  if (method == "iterative") scene.solver.method = SolverOptions::Method::iterative;
}

std::vector<Vec3> direction_grid(const FarFieldSpec& spec) {
  std::vector<Vec3> dirs;
  dirs.reserve(static_cast<std::size_t>(spec.n_theta) * spec.n_phi);
  for (int i = 0; i < spec.n_theta; ++i) {
    const double theta = kPi * (i + 0.5) / spec.n_theta;
    for (int j = 0; j < spec.n_phi; ++j) {
      const double phi = 2.0 * kPi * j / spec.n_phi;
      dirs.push_back({std::sin(theta) * std::cos(phi),
                      std::sin(theta) * std::sin(phi), std::cos(theta)});
    }
  }
  return dirs;
}

const std::vector<std::string> kAmplitudeHeader = {
    "beta_x", "beta_y", "beta_z", "a_x_re", "a_x_im",
    "a_y_re", "a_y_im", "a_z_re", "a_z_im"};

void write_amplitude_csv(const fs::path& path,
                         const std::vector<Vec3>& dirs,
                         const std::function<CVec3(const Vec3&)>& amplitude,
                         RunReport& report) {
  CsvBuilder csv(kAmplitudeHeader);
  for (const Vec3& beta : dirs) {
    csv.vec(beta).cvec(amplitude(beta));
    csv.end_row();
  }
  csv.write(path);
  report.add_output(path);
}

// Shared by many-body and reduce: place particles and gate on the regime.
Placement place_and_gate(const Scene& scene, const CommonArgs& args,
                         RunReport& report) {
  const double a = scene.require_particle_radius();
  Placement placement =
      place_particles(scene.require_density(), scene.require_domain(), a);
  report.add_warnings(placement.warnings);
  report.diagnostics()["particles"] = placement.centers.size();
  report.diagnostics()["min_separation"] = placement.min_separation;

  const RegimeCheck rc =
      check_regime(scene.wave().k, a, placement.min_separation);
  report.set_regime(rc.ka, rc.a_over_d, rc.score, kRegimeThreshold,
                    rc.admissible, !rc.admissible && args.override_regime);
  if (!rc.admissible) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "regime score %.3g exceeds %.3g (ka = %.3g, a/d = %.3g)",
                  rc.score, kRegimeThreshold, rc.ka, rc.a_over_d);
    if (!args.override_regime) {
      throw ValidationError(std::string(buf) +
                            "; the asymptotic model is not trustworthy here "
                            "(rerun with --override-regime to force)");
    }
    report.add_warning(std::string("proceeding despite regime check: ") + buf);
  }
  return placement;
}

void write_field_grid_csv(const fs::path& path, const ProbeSpec& probe,
                          const std::function<CVec3(const Vec3&)>& field,
                          RunReport& report) {
  CsvBuilder csv({"x", "y", "z", "e_x_re", "e_x_im", "e_y_re", "e_y_im",
                  "e_z_re", "e_z_im"});
  const Vec3 lo = probe.box.min, s = probe.box.side();
  for (int l = 0; l < probe.dims[2]; ++l) {
    for (int j = 0; j < probe.dims[1]; ++j) {
      for (int i = 0; i < probe.dims[0]; ++i) {
        const Vec3 x{lo.x + (i + 0.5) * s.x / probe.dims[0],
                     lo.y + (j + 0.5) * s.y / probe.dims[1],
                     lo.z + (l + 0.5) * s.z / probe.dims[2]};
        csv.vec(x).cvec(field(x));
        csv.end_row();
      }
    }
  }
  csv.write(path);
  report.add_output(path);
}

// ---------------------------------------------------------------------------
// single-body / convergence

struct SweepRow {
  double ka = 0.0;
  double q_bie_abs = 0.0;
  double q_asym_abs = 0.0;
  double rel_err = 0.0;
  double cond_estimate = 0.0;
};

SweepRow sweep_point(const Scene& scene, double ka, RunReport& report) {
  const PlaneWave& pw = scene.wave();
  const Shape& base = scene.require_shape();
  const double scale = ka / (pw.k * base.equivalent_radius());
  const Shape shape =
      Shape::ellipsoid(base.ax * scale, base.ay * scale, base.az * scale);
  const SurfaceMesh mesh = build_mesh(shape, scene.mesh_level);
  const BieSolution sol = solve_surface_current(mesh, pw);

  SweepRow row;
  row.ka = ka;
  const CVec3 q_bie = total_current(mesh, sol.J);
  const CVec3 q_asym =
      asymptotic_total_current(pw.k, shape.equivalent_radius(), pw);
  row.q_bie_abs = norm(q_bie);
  row.q_asym_abs = norm(q_asym);
  row.rel_err = norm(q_bie - q_asym) / norm(q_asym);
  row.cond_estimate = sol.rcond > 0.0 ? 1.0 / sol.rcond : 0.0;

  nlohmann::ordered_json j;
  j["ka"] = ka;
  j["nodes"] = mesh.size();
  j["rcond"] = sol.rcond;
  j["residual"] = sol.residual;
  j["tangential_defect"] = sol.tangential_defect;
  report.diagnostics()["solves"].push_back(std::move(j));
  return row;
}

std::vector<double> sweep_values(const Scene& scene) {
  if (!scene.ka_values.empty()) return scene.ka_values;
  return {scene.wave().k * scene.require_shape().equivalent_radius()};
}

void run_single_body(const Scene& scene, const CommonArgs& args,
                     RunReport& report) {
  const PlaneWave& pw = scene.wave();
  report.diagnostics()["solves"] = nlohmann::ordered_json::array();

  {
    ScopedTimer t(report, "ka_sweep");
    CsvBuilder csv({"ka", "q_bie_abs", "q_asym_abs", "rel_err", "cond_estimate"});
    for (double ka : sweep_values(scene)) {
      const SweepRow row = sweep_point(scene, ka, report);
      csv.num(row.ka).num(row.q_bie_abs).num(row.q_asym_abs).num(row.rel_err)
          .num(row.cond_estimate);
      csv.end_row();
    }
    const fs::path path = fs::path(args.out_dir) / "single_body.csv";
    csv.write(path);
    report.add_output(path);
  }

  // Scattering amplitude of the scene's own body over the direction grid.
  {
    ScopedTimer t(report, "amplitude_table");
    const SurfaceMesh mesh = build_mesh(scene.require_shape(), scene.mesh_level);
    const BieSolution sol = solve_surface_current(mesh, pw);
    write_amplitude_csv(
        fs::path(args.out_dir) / "amplitude.csv", direction_grid(scene.far_field),
        [&](const Vec3& beta) { return far_field(mesh, sol.J, pw.k, beta); },
        report);

    if (!scene.radiation_radii.empty()) {
      DipoleCloud cloud;
      cloud.k = pw.k;
      cloud.sources.reserve(mesh.size());
      for (std::size_t i = 0; i < mesh.size(); ++i) {
        cloud.sources.push_back(mesh.points[i], mesh.weights[i] * sol.J[i]);
      }
      auto& defects = report.diagnostics()["radiation_defect"];
      for (double r : scene.radiation_radii) {
        defects.push_back({{"radius", r}, {"defect", radiation_defect(cloud, r)}});
      }
    }
  }
}

void run_convergence(const Scene& scene, const CommonArgs& args,
                     RunReport& report) {
  if (scene.ka_values.empty()) {
    throw ValidationError("scene must provide \"ka_values\" for a convergence sweep");
  }
  report.diagnostics()["solves"] = nlohmann::ordered_json::array();
  ScopedTimer t(report, "ka_sweep");
  CsvBuilder csv({"ka", "rel_err"});
  for (double ka : scene.ka_values) {
    const SweepRow row = sweep_point(scene, ka, report);
    csv.num(row.ka).num(row.rel_err);
    csv.end_row();
  }
  const fs::path path = fs::path(args.out_dir) / "convergence.csv";
  csv.write(path);
  report.add_output(path);
}

// ---------------------------------------------------------------------------
// many-body

void write_moments_csv(const fs::path& path, const ManyBodySolution& sol,
                       RunReport& report) {
  CsvBuilder csv({"m",      "x",      "y",      "z",      "a_x_re", "a_x_im",
                  "a_y_re", "a_y_im", "a_z_re", "a_z_im", "q_x_re", "q_x_im",
                  "q_y_re", "q_y_im", "q_z_re", "q_z_im"});
  const std::vector<CVec3> Q = dipole_moments(sol);
  for (std::size_t m = 0; m < sol.centers.size(); ++m) {
    csv.integer(static_cast<long long>(m)).vec(sol.centers[m]).cvec(sol.A[m])
        .cvec(Q[m]);
    csv.end_row();
  }
  csv.write(path);
  report.add_output(path);
}

// Total field on probe points.  Inside a particle's exclusion ball the
// enclosing source is omitted (the sum is not defined there); such points
// are counted and reported as a warning.
std::function<CVec3(const Vec3&)> probe_field(const ManyBodySolution& sol,
                                              std::size_t* excluded) {
  const DipoleCloud cloud = scattered_cloud(sol);
  auto excl_radius = [&sol](std::size_t m) {
    return std::cbrt(sol.weights[m]);
  };
  return [cloud, &sol, excluded, excl_radius](const Vec3& x) {
    // The kernels take a single exclusion radius; omit every source whose
    // ball contains x by using the largest enclosing-ball distance.  Other
    // sources sit at least one separation away and are unaffected.
    double excl = 0.0;
    for (std::size_t m = 0; m < sol.centers.size(); ++m) {
      const double dist = norm(x - sol.centers[m]);
      if (dist < excl_radius(m)) excl = std::max(excl, dist + 1e-15);
    }
    if (excl > 0.0 && excluded) ++*excluded;
    std::vector<CVec3> out(1);
    curl_field_sum(cloud.k, {x}, cloud.sources, out.data(), excl);
    return sol.pw.field(x) + out[0];
  };
}

void run_many_body(const Scene& scene, const CommonArgs& args,
                   RunReport& report) {
  const PlaneWave& pw = scene.wave();
  Placement placement = place_and_gate(scene, args, report);

  ManyBodySolution sol;
  {
    ScopedTimer t(report, "solve");
    sol = solve_many_body(placement, pw, scene.c0, scene.solver);
  }
  report.set_solver_info("many_body", sol.info);

  write_moments_csv(fs::path(args.out_dir) / "moments.csv", sol, report);

  if (scene.probe) {
    ScopedTimer t(report, "probe_grid");
    std::size_t excluded = 0;
    write_field_grid_csv(fs::path(args.out_dir) / "fields.csv", *scene.probe,
                         probe_field(sol, &excluded), report);
    if (excluded > 0) {
      report.add_warning(std::to_string(excluded) +
                         " probe point(s) lie inside a particle's exclusion "
                         "ball; the enclosing contribution is omitted there");
    }
  }

  {
    ScopedTimer t(report, "amplitude_table");
    write_amplitude_csv(
        fs::path(args.out_dir) / "amplitude.csv", direction_grid(scene.far_field),
        [&](const Vec3& beta) { return far_amplitude(sol, beta); }, report);
  }

  if (!scene.radiation_radii.empty()) {
    const DipoleCloud cloud = scattered_cloud(sol);
    auto& defects = report.diagnostics()["radiation_defect"];
    for (double r : scene.radiation_radii) {
      defects.push_back({{"radius", r}, {"defect", radiation_defect(cloud, r)}});
    }
  }
}

// ---------------------------------------------------------------------------
// reduce

std::vector<Vec3> default_probe_shell(const Box& domain) {
  // 6 x 6 points on each face of the domain box inflated by half its largest
  // side: a deterministic exterior probe set.
  const double pad = 0.5 * std::max({domain.side().x, domain.side().y,
                                     domain.side().z});
  const Vec3 lo = domain.min - Vec3{pad, pad, pad};
  const Vec3 hi = domain.max + Vec3{pad, pad, pad};
  std::vector<Vec3> pts;
  const int n = 6;
  auto lerp = [](double a, double b, double t) { return a + (b - a) * t; };
  for (int axis = 0; axis < 3; ++axis) {
    for (int side = 0; side < 2; ++side) {
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
          const double tu = (u + 0.5) / n, tv = (v + 0.5) / n;
          std::array<double, 3> p{};
          p[axis] = side ? hi[axis] : lo[axis];
          p[(axis + 1) % 3] = lerp(lo[(axis + 1) % 3], hi[(axis + 1) % 3], tu);
          p[(axis + 2) % 3] = lerp(lo[(axis + 2) % 3], hi[(axis + 2) % 3], tv);
          pts.push_back({p[0], p[1], p[2]});
        }
      }
    }
  }
  return pts;
}

std::vector<CVec3> scattered_at(const DipoleCloud& cloud,
                                const std::vector<Vec3>& pts) {
  std::vector<CVec3> out(pts.size());
  curl_field_sum(cloud.k, pts, cloud.sources, out.data(), 0.0);
  return out;
}

void run_reduce(const Scene& scene, const CommonArgs& args, RunReport& report) {
  const PlaneWave& pw = scene.wave();
  Placement placement = place_and_gate(scene, args, report);

  ReducedModel model;
  {
    ScopedTimer t(report, "build_reduced");
    model = build_reduced(placement, scene.require_density(),
                          scene.require_p_per_side());
  }
  report.add_warnings(model.warnings);
  report.diagnostics()["reduced_nodes"] = model.centers.size();

  ManyBodySolution reduced;
  {
    ScopedTimer t(report, "reduced_solve");
    reduced = reduced_solve(model, pw, scene.c0, scene.solver);
  }
  report.set_solver_info("reduced", reduced.info);

  {
    CsvBuilder csv({"p",      "x",      "y",      "z",      "count",
                    "weight", "a_x_re", "a_x_im", "a_y_re", "a_y_im",
                    "a_z_re", "a_z_im"});
    for (std::size_t p = 0; p < model.centers.size(); ++p) {
      csv.integer(static_cast<long long>(p)).vec(model.centers[p])
          .integer(static_cast<long long>(model.counts[p]))
          .num(model.weights[p]).cvec(reduced.A[p]);
      csv.end_row();
    }
    const fs::path path = fs::path(args.out_dir) / "reduced.csv";
    csv.write(path);
    report.add_output(path);
  }

  if (scene.compare_full) {
    ScopedTimer t(report, "full_comparison");
    ManyBodySolution full = solve_many_body(placement, pw, scene.c0, scene.solver);
    report.set_solver_info("full", full.info);

    const std::vector<Vec3> probe =
        scene.probe ? [&] {
          std::vector<Vec3> pts;
          const ProbeSpec& pr = *scene.probe;
          for (int l = 0; l < pr.dims[2]; ++l)
            for (int j = 0; j < pr.dims[1]; ++j)
              for (int i = 0; i < pr.dims[0]; ++i)
                pts.push_back(pr.box.min +
                              Vec3{(i + 0.5) * pr.box.side().x / pr.dims[0],
                                   (j + 0.5) * pr.box.side().y / pr.dims[1],
                                   (l + 0.5) * pr.box.side().z / pr.dims[2]});
          return pts;
        }()
                    : default_probe_shell(scene.require_domain());

    const std::vector<CVec3> v_full = scattered_at(scattered_cloud(full), probe);
    const std::vector<CVec3> v_red = scattered_at(scattered_cloud(reduced), probe);

    std::vector<CVec3> a_full, a_red;
    for (const Vec3& beta : direction_grid(scene.far_field)) {
      a_full.push_back(far_amplitude(full, beta));
      a_red.push_back(far_amplitude(reduced, beta));
    }

    auto& cmp = report.diagnostics()["comparison"];
    cmp["probe_points"] = probe.size();
    cmp["rel_l2_scattered"] = relative_l2(v_red, v_full);
    cmp["rel_l2_amplitude"] = relative_l2(a_red, a_full);
  }
}

// ---------------------------------------------------------------------------
// continuum

void run_continuum(const Scene& scene, const CommonArgs& args,
                   RunReport& report) {
  const PlaneWave& pw = scene.wave();
  const Density& density = scene.require_density();
  const Box& domain = scene.require_domain();
  const auto& dims = scene.require_grid_dims();

  ScalarGrid N;
  N.dims = dims;
  N.box = domain;
  N.values.resize(static_cast<std::size_t>(dims[0]) * dims[1] * dims[2]);
  for (int l = 0; l < dims[2]; ++l) {
    for (int j = 0; j < dims[1]; ++j) {
      for (int i = 0; i < dims[0]; ++i) {
        N.at(i, j, l) = density.at(N.center(i, j, l));
      }
    }
  }

  ContinuumSolution sol;
  {
    ScopedTimer t(report, "solve");
    sol = solve_continuum(N, pw, scene.c0, scene.solver);
  }
  report.set_solver_info("continuum", sol.info);

  auto write_grid_csv = [&](const fs::path& path, const VectorGrid& F,
                            const char* prefix) {
    const std::string p(prefix);
    CsvBuilder csv({"x", "y", "z", p + "_x_re", p + "_x_im", p + "_y_re",
                    p + "_y_im", p + "_z_re", p + "_z_im"});
    for (int l = 0; l < F.dims[2]; ++l) {
      for (int j = 0; j < F.dims[1]; ++j) {
        for (int i = 0; i < F.dims[0]; ++i) {
          csv.vec(F.center(i, j, l)).cvec(F.at(i, j, l));
          csv.end_row();
        }
      }
    }
    csv.write(path);
    report.add_output(path);
  };
  write_grid_csv(fs::path(args.out_dir) / "e_field.csv", sol.E, "e");
  write_grid_csv(fs::path(args.out_dir) / "w_field.csv", sol.W, "w");

  {
    ScopedTimer t(report, "residual");
    auto& res = report.diagnostics()["residual"];
    res["schrodinger"] = schrodinger_residual(sol);
    res["system"] = sol.info.residual;
  }
}

// ---------------------------------------------------------------------------
// design

void run_design(const Scene& scene, const CommonArgs& args, RunReport& report) {
  const ScalarGrid& n2 = scene.require_target_refraction();

  ScalarGrid N;
  {
    ScopedTimer t(report, "invert");
    N = density_for_target(n2, scene.c0);
  }
  const fs::path density_path = fs::path(args.out_dir) / "density.json";
  write_grid(N, density_path);
  report.add_output(density_path);

  // Round trip: the achieved refraction vs the requested one.
  const ScalarGrid achieved = refraction_from_density(N, scene.c0);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n2.values.size(); ++i) {
    worst = std::max(worst, std::abs(achieved.values[i] - n2.values[i]));
    scale = std::max(scale, std::abs(n2.values[i]));
  }
  report.diagnostics()["refraction_round_trip"] = scale > 0 ? worst / scale : worst;
  report.diagnostics()["max_density"] = N.max_value();

  if (scene.k) {
    const ScalarGrid q = potential_from_density(N, *scene.k, scene.c0);
    const fs::path q_path = fs::path(args.out_dir) / "potential.json";
    write_grid(q, q_path);
    report.add_output(q_path);
  }
}

// ---------------------------------------------------------------------------

using Runner = std::function<void(const Scene&, const CommonArgs&, RunReport&)>;

int run_with_report(const std::string& name, const CommonArgs& args,
                    const Runner& fn) {
  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  RunReport report(name, args.scene_path);
  const fs::path report_path = fs::path(args.out_dir) / "run_report.json";

  int code = 0;
  std::string message;
  try {
    configure_threads(args.threads, report);
    std::string text;
    try {
      text = read_file(args.scene_path);
    } catch (const std::exception& e) {
      throw ValidationError(std::string("cannot read scene file: ") + e.what());
    }
    report.set_scene_text(text);
    Scene scene = parse_scene(text, fs::path(args.scene_path).parent_path().string());
    apply_method_override(scene, args.method);
    report.add_warnings(scene.warnings);
    fn(scene, args, report);
    report.set_ok();
  } catch (const ValidationError& e) {
    report.set_error("validation", e.what());
    code = 2;
    message = e.what();
  } catch (const InfeasibleError& e) {
    report.set_error("infeasible", e.what());
    code = 4;
    message = e.what();
  } catch (const NumericalError& e) {
    report.set_error("numerical", e.what());
    code = 3;
    message = e.what();
  } catch (const std::exception& e) {
    report.set_error("numerical", e.what());
    code = 3;
    message = e.what();
  }

  try {
    report.write(report_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "emscat: cannot write report: %s\n", e.what());
    if (code == 0) code = 3;
  }

  if (code != 0) {
    std::fprintf(stderr, "emscat %s: error: %s\n", name.c_str(), message.c_str());
  } else {
    for (const auto& out : report.doc()["outputs"]) {
      std::printf("wrote %s\n", out.get<std::string>().c_str());
    }
  }
  std::printf("report %s\n", report_path.string().c_str());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic scattering by many small perfectly conducting bodies"};
  app.require_subcommand(1);

  CommonArgs args;
  struct Entry {
    const char* name;
    const char* desc;
    Runner fn;
  };
  const std::vector<Entry> entries = {
      {"single-body", "Surface-current solve for one small body", run_single_body},
      {"many-body", "Self-consistent solve for a particle ensemble", run_many_body},
      {"reduce", "Order reduction onto a coarse representative grid", run_reduce},
      {"continuum", "Homogenized integral-equation solve on a voxel grid",
       run_continuum},
      {"design", "Invert a refraction-coefficient target into a density",
       run_design},
      {"convergence", "Total-current convergence sweep over ka", run_convergence},
  };
  for (const Entry& e : entries) {
    add_common_options(app.add_subcommand(e.name, e.desc), args);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems are validation errors
  }

  for (const Entry& e : entries) {
    if (app.got_subcommand(e.name)) return run_with_report(e.name, args, e.fn);
  }
  return 2;
}
