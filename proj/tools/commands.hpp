#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weakframe/report.hpp"

namespace weakframe::cli {

enum ExitCode { kOk = 0, kInternal = 1, kInvalid = 2, kNotConverged = 3, kSearchFailed = 4 };

struct Options {
  std::size_t levels = 8;
  std::size_t base_n = 64;
  double tol_converge = 1e-3;
  std::uint64_t seed = 20240611;
  std::optional<Vec3> return_dir;
  std::filesystem::path out_dir = ".";
  std::size_t budget = 60000;
  double min_gap = 1e-3;
  std::optional<Vec3> lift_seed;
};

struct ModelSpec {
  std::string name;
  std::map<std::string, double> params;
};

// helix(R, K), circle(R), inflection, line(L), blowup(delta), ode(k, tau, length).
ParamCurve make_model(const ModelSpec& spec);
std::vector<std::string> model_names();

// A command's outcome. Files are written by the caller, after the command
// has finished, together with the report.
struct CommandResult {
  AnalysisReport report;
  int exit_code = kOk;
  std::vector<std::pair<std::filesystem::path, std::string>> files;
};

CommandResult cmd_analyze(const std::filesystem::path& input, const Options& options);
CommandResult cmd_converge(const ModelSpec& model, const Options& options);
CommandResult cmd_forces(const std::optional<std::filesystem::path>& input, const std::optional<ModelSpec>& model,
                         const Options& options);
CommandResult cmd_witness(const Options& options);
CommandResult cmd_lift(const std::filesystem::path& input, const Options& options);

int exit_code_for(ErrorCode code);

// Runs a command body, turning errors into a report with status "error".
template <typename F>
CommandResult guarded(const std::string& command, F&& body) {
  try {
    return body();
  } catch (const GeometryError& e) {
    CommandResult r;
    r.report.command = command;
    r.report.status = "error";
    r.report.error = e.what();
    r.exit_code = exit_code_for(e.code());
    return r;
  } catch (const std::exception& e) {
    CommandResult r;
    r.report.command = command;
    r.report.status = "error";
    r.report.error = e.what();
    r.exit_code = kInternal;
    return r;
  }
}

// Writes the files and the report (to `report_path`, or stdout when empty).
void write_outputs(CommandResult& result, const std::optional<std::filesystem::path>& report_path);

}  // namespace weakframe::cli
