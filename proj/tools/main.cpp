#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"

namespace cli = weakframe::cli;

namespace {

std::optional<weakframe::Vec3> parse_vec3(const std::string& text, const std::string& flag) {
  std::vector<double> xs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string part = text.substr(pos, comma - pos);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size())
      throw weakframe::GeometryError(weakframe::ErrorCode::InvalidArgument, flag + " expects x,y,z, got '" + text + "'");
    xs.push_back(v);
    pos = comma + 1;
  }
  if (xs.size() != 3)
    throw weakframe::GeometryError(weakframe::ErrorCode::InvalidArgument, flag + " expects x,y,z, got '" + text + "'");
  return weakframe::Vec3(xs[0], xs[1], xs[2]);
}

cli::ModelSpec parse_model(const std::string& name, const std::vector<std::string>& params) {
  cli::ModelSpec spec{name, {}};
  for (const std::string& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0)
      throw weakframe::GeometryError(weakframe::ErrorCode::InvalidArgument, "--param expects key=value, got '" + p + "'");
    std::size_t used = 0;
    double v = 0.0;
    const std::string value = p.substr(eq + 1);
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size())
      throw weakframe::GeometryError(weakframe::ErrorCode::InvalidArgument, "--param " + p + ": value is not a number");
    spec.params[p.substr(0, eq)] = v;
  }
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak Frenet frames of polygonal and smooth space curves"};
  app.require_subcommand(1);

  cli::Options opts;
  std::string return_dir, lift_seed, model, input, report;
  std::vector<std::string> params;

  auto shared = [&](CLI::App* sub) {
    sub->add_option("--out-dir", opts.out_dir, "Directory for CSV outputs")->default_str(".");
    sub->add_option("--report", report, "Write the JSON report here instead of stdout");
  };
  auto refinement = [&](CLI::App* sub) {
    sub->add_option("--levels", opts.levels, "Refinement levels")->check(CLI::Range(1, 24))->capture_default_str();
    sub->add_option("--base-n", opts.base_n, "Segments at level 0")->check(CLI::Range(1, 1 << 24))->capture_default_str();
    sub->add_option("--tol-converge", opts.tol_converge, "Cauchy tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--return-dir", return_dir, "Return-point direction x,y,z");
  };
  auto modelled = [&](CLI::App* sub) {
    sub->add_option("--model", model, "Model curve");
    sub->add_option("--param", params, "Model parameter key=value (repeatable)");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Discrete Frenet data of a polygonal");
  analyze->add_option("input", input, "Polygonal (text or JSON)")->required();
  analyze->add_option("--return-dir", return_dir, "Return-point direction x,y,z");
  shared(analyze);

  CLI::App* converge = app.add_subcommand("converge", "Weak indicatrices of a model curve by refinement");
  modelled(converge);
  converge->get_option("--model")->required();
  refinement(converge);
  shared(converge);

  CLI::App* forces = app.add_subcommand("forces", "Curvature force, torsion force and binormal variation");
  forces->add_option("--input", input, "Polygonal (text or JSON)");
  modelled(forces);
  refinement(forces);
  shared(forces);

  CLI::App* witness = app.add_subcommand("witness", "Search for TAT(P') > TAT(P)");
  witness->add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
  witness->add_option("--budget", opts.budget, "Objective evaluations")->check(CLI::PositiveNumber)->capture_default_str();
  witness->add_option("--min-gap", opts.min_gap, "Required TAT(P') - TAT(P)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  shared(witness);

  CLI::App* lift = app.add_subcommand("lift", "Lift a projective curve to the sphere");
  lift->add_option("input", input, "CSV of x,y,z points")->required();
  lift->add_option("--lift-seed", lift_seed, "Seed representative x,y,z (default: first point)");
  shared(lift);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kInvalid;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  cli::CommandResult result = cli::guarded(command, [&]() {
    if (!return_dir.empty()) opts.return_dir = parse_vec3(return_dir, "--return-dir");
    if (!lift_seed.empty()) opts.lift_seed = parse_vec3(lift_seed, "--lift-seed");
    if (command == "analyze") return cli::cmd_analyze(input, opts);
    if (command == "converge") return cli::cmd_converge(parse_model(model, params), opts);
    if (command == "forces") {
      std::optional<std::filesystem::path> in;
      std::optional<cli::ModelSpec> m;
      if (!input.empty()) in = input;
      if (!model.empty()) m = parse_model(model, params);
      return cli::cmd_forces(in, m, opts);
    }
    if (command == "witness") return cli::cmd_witness(opts);
    return cli::cmd_lift(input, opts);
  });

  try {
    std::optional<std::filesystem::path> report_path;
    if (!report.empty()) report_path = report;
    cli::write_outputs(result, report_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kInternal;
  }
  if (result.report.status == "error") std::cerr << "error: " << result.report.error << '\n';
  return result.exit_code;
}
