#include "emscat/report.hpp"

#include "emscat/fsio.hpp"

namespace emscat {

using json = nlohmann::ordered_json;

RunReport::RunReport(std::string subcommand, std::string scene_path) {
  doc_["tool"] = "emscat";
  doc_["version"] = "0.1.0";
  doc_["subcommand"] = std::move(subcommand);
  doc_["scene_path"] = std::move(scene_path);
  doc_["scene_text"] = nullptr;
  doc_["scene"] = nullptr;
  doc_["regime"] = nullptr;
  doc_["diagnostics"] = json::object();
  doc_["timings_ms"] = json::object();
  doc_["outputs"] = json::array();
  doc_["warnings"] = json::array();
  doc_["status"] = "incomplete";
}

void RunReport::set_scene_text(const std::string& text) {
  doc_["scene_text"] = text;
  json parsed = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (!parsed.is_discarded()) doc_["scene"] = std::move(parsed);
}

void RunReport::add_warning(const std::string& w) { doc_["warnings"].push_back(w); }

void RunReport::add_warnings(const std::vector<std::string>& ws) {
  for (const auto& w : ws) add_warning(w);
}

void RunReport::set_regime(double ka, double a_over_d, double score,
                           double threshold, bool within, bool overridden) {
  json r;
  r["ka"] = ka;
  r["a_over_d"] = a_over_d;
  r["score"] = score;
  r["threshold"] = threshold;
  r["within"] = within;
  r["overridden"] = overridden;
  doc_["regime"] = std::move(r);
}

void RunReport::set_solver_info(const std::string& stage, const SolveInfo& info) {
  json j;
  j["method"] = info.method;
  j["iterations"] = info.iterations;
  j["residual"] = info.residual;
  j["rcond"] = info.rcond;
  j["contraction"] = info.contraction;
  doc_["diagnostics"][stage] = std::move(j);
}

void RunReport::add_timing(const std::string& name, double milliseconds) {
  doc_["timings_ms"][name] = milliseconds;
}

void RunReport::add_output(const std::filesystem::path& path) {
  doc_["outputs"].push_back(path.string());
}

void RunReport::set_ok() {
  doc_["status"] = "ok";
  doc_["error"] = nullptr;
}

void RunReport::set_error(const std::string& category, const std::string& message) {
  doc_["status"] = "error";
  json e;
  e["category"] = category;
  e["message"] = message;
  doc_["error"] = std::move(e);
}

void RunReport::write(const std::filesystem::path& path) const {
  write_file_atomic(path, doc_.dump(2) + "\n");
}

}  // namespace emscat
