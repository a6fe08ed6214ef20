#pragma once

// Every invocation of the tool writes a machine-readable run report, whether
// it succeeds or fails.  The report echoes the scene exactly as read, lists
// every artifact written, and carries diagnostics, timings and warnings.

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "emscat/many_body.hpp"

namespace emscat {

class RunReport {
 public:
  RunReport(std::string subcommand, std::string scene_path);

  // Echo the scene: raw bytes always, parsed form when the text is valid JSON.
  void set_scene_text(const std::string& text);

  void add_warning(const std::string& w);
  void add_warnings(const std::vector<std::string>& ws);

  void set_regime(double ka, double a_over_d, double score, double threshold,
                  bool within, bool overridden);

  // Arbitrary diagnostics, keyed per stage.
  nlohmann::ordered_json& diagnostics() { return doc_["diagnostics"]; }
  void set_solver_info(const std::string& stage, const SolveInfo& info);

  void add_timing(const std::string& name, double milliseconds);
  void add_output(const std::filesystem::path& path);

  void set_ok();
  void set_error(const std::string& category, const std::string& message);

  const nlohmann::ordered_json& doc() const { return doc_; }
  void write(const std::filesystem::path& path) const;

 private:
  nlohmann::ordered_json doc_;
};

// Adds a timing entry on destruction.
class ScopedTimer {
 public:
  ScopedTimer(RunReport& report, std::string name)
      : report_(report), name_(std::move(name)),
        start_(std::chrono::steady_clock::now()) {}
  ~ScopedTimer() {
    const auto dt = std::chrono::steady_clock::now() - start_;
    report_.add_timing(
        name_, std::chrono::duration<double, std::milli>(dt).count());
  }
  ScopedTimer(const ScopedTimer&) = delete;
  ScopedTimer& operator=(const ScopedTimer&) = delete;

 private:
  RunReport& report_;
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace emscat
