#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>

#include "weakframe/io.hpp"
#include "weakframe/quadrature.hpp"
#include "weakframe/witness.hpp"

namespace weakframe::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double param(const ModelSpec& spec, const std::string& key, double fallback) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

void reject_unknown_params(const ModelSpec& spec, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : spec.params) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw GeometryError(ErrorCode::InvalidArgument, "model " + spec.name + " has no parameter '" + key + "'");
  }
}

std::optional<ReturnPolicy> policy_of(const Options& o) {
  if (!o.return_dir) return std::nullopt;
  if (o.return_dir->norm() == 0.0) throw GeometryError(ErrorCode::InvalidArgument, "--return-dir must be nonzero");
  return ReturnPolicy{*o.return_dir};
}

std::string csv_of(const GeodesicPolyline& c) {
  std::ostringstream out;
  write_polyline_csv(out, c);
  return out.str();
}

std::string density_csv(const VectorMeasure& m) {
  std::ostringstream out;
  out.precision(17);
  out << "param,vx,vy,vz,step\n";
  for (const DensityCell& d : m.density)
    out << d.param << ',' << d.value.x() << ',' << d.value.y() << ',' << d.value.z() << ',' << d.step << '\n';
  return out.str();
}

std::string fmt_vec(const Vec3& v) {
  std::ostringstream out;
  out.precision(17);
  out << v.x() << ',' << v.y() << ',' << v.z();
  return out.str();
}

void emit(CommandResult& r, const Options& o, const std::string& key, const std::string& name, std::string content) {
  const std::filesystem::path path = o.out_dir / name;
  r.report.files[key] = path.string();
  r.files.emplace_back(path, std::move(content));
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

void add_measure(CommandResult& r, const Options& o, const std::string& name, const VectorMeasure& m) {
  r.report.measures.push_back(summarize(name, m));
  for (const auto& w : m.warnings) r.report.warnings.push_back(name + ": " + w);
  if (!m.density.empty()) emit(r, o, name + "_density", name + "_density.csv", density_csv(m));
}

void common_input(AnalysisReport& rep, const Options& o) {
  rep.input["levels"] = std::to_string(o.levels);
  rep.input["base_n"] = std::to_string(o.base_n);
  rep.input["tol_converge"] = num(o.tol_converge);
  if (o.return_dir) rep.input["return_dir"] = fmt_vec(*o.return_dir);
}

void describe_model(AnalysisReport& rep, const ModelSpec& m) {
  rep.input["model"] = m.name;
  for (const auto& [k, v] : m.params) {
    rep.input["param." + k] = num(v);
  }
}

RefineOptions refine_options(const Options& o) {
  RefineOptions r;
  r.levels = o.levels;
  r.base_n = o.base_n;
  r.policy = policy_of(o);
  return r;
}

}  // namespace

std::vector<std::string> model_names() { return {"helix", "circle", "inflection", "line", "blowup", "ode"}; }

ParamCurve make_model(const ModelSpec& spec) {
  const std::string& n = spec.name;
  if (n == "helix") {
    reject_unknown_params(spec, {"R", "K"});
    return helix(param(spec, "R", 1.0), param(spec, "K", 2.0 * std::numbers::pi));
  }
  if (n == "circle") {
    reject_unknown_params(spec, {"R"});
    return circle(param(spec, "R", 1.0));
  }
  if (n == "inflection") {
    reject_unknown_params(spec, {});
    return inflection_curve();
  }
  if (n == "line") {
    reject_unknown_params(spec, {"L"});
    return straight_line(param(spec, "L", 1.0));
  }
  if (n == "blowup") {
    reject_unknown_params(spec, {"delta"});
    const double delta = param(spec, "delta", 1e-2);
    if (!(delta > 0.0 && delta < 1.0)) throw GeometryError(ErrorCode::InvalidArgument, "blowup needs 0 < delta < 1");
    OdeCurve ode = frenet_ode_curve([](double) { return 1.0; }, [](double s) { return 1.0 / (1.0 - s); }, 0.0, 1.0 - delta);
    ode.curve.name = "blowup";
    return ode.curve;
  }
  if (n == "ode") {
    reject_unknown_params(spec, {"k", "tau", "length"});
    const double k = param(spec, "k", 1.0), tau = param(spec, "tau", 0.0), len = param(spec, "length", 1.0);
    if (!(len > 0.0)) throw GeometryError(ErrorCode::InvalidArgument, "ode needs length > 0");
    OdeCurve ode = frenet_ode_curve([k](double) { return k; }, [tau](double) { return tau; }, 0.0, len);
    ode.curve.name = "ode";
    return ode.curve;
  }
  throw GeometryError(ErrorCode::UnknownModel, "unknown model '" + n + "'");
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotConverged:
    case ErrorCode::BlowUp:
      return kNotConverged;
    case ErrorCode::SearchFailed:
      return kSearchFailed;
    default:
      return kInvalid;
  }
}

CommandResult cmd_analyze(const std::filesystem::path& input, const Options& options) {
  CommandResult r;
  AnalysisReport& rep = r.report;
  rep.command = "analyze";
  rep.input["file"] = input.string();
  if (options.return_dir) rep.input["return_dir"] = fmt_vec(*options.return_dir);

  const Polygonal3 raw = read_polygonal(input);
  const Polygonal3 p = sanitize(raw);
  const auto policy = policy_of(options);
  const DiscreteFrenetData d = discrete_frenet(p, policy);
  rep.values["vertices"] = static_cast<double>(raw.vertex_count());
  rep.values["sanitized_vertices"] = static_cast<double>(p.vertex_count());
  rep.values["closed"] = p.closed() ? 1.0 : 0.0;
  rep.values["length"] = p.length();
  rep.values["tc"] = d.tc;
  rep.values["tat"] = d.tat;
  rep.values["ct"] = d.ct;
  rep.values["return_points"] = static_cast<double>(d.return_points.size());

  const VectorMeasure k = curvature_force(p);
  const TotalCurvature tcs = tc_star(k);
  rep.values["tc_star"] = tcs.tc_star;
  add_measure(r, options, "curvature", k);

  emit(r, options, "tantrix", "tantrix.csv", csv_of(tantrix(p, policy)));
  if (d.tat > 0.0) {
    emit(r, options, "binormal", "binormal.csv", csv_of(binormal_indicatrix(p, policy)));
  } else {
    rep.warnings.push_back("TAT = 0: binormal indicatrix is a single point, not emitted");
  }
  const NormalIndicatrix n = normal_indicatrix(p, policy);
  rep.values["normal_length"] = n.curve.length();
  emit(r, options, "normal", "normal.csv", csv_of(n.curve));
  return r;
}

CommandResult cmd_converge(const ModelSpec& model, const Options& options) {
  CommandResult r;
  AnalysisReport& rep = r.report;
  rep.command = "converge";
  describe_model(rep, model);
  common_input(rep, options);

  const ParamCurve c = make_model(model);
  const RefinementSequence seq = refine(c, refine_options(options));
  const Level& fin = seq.final_level();
  WeakOptions wopt;
  wopt.tol = options.tol_converge;

  std::vector<LevelRow> rows(seq.levels.size());
  for (std::size_t h = 0; h < seq.levels.size(); ++h) {
    const Level& l = seq.levels[h];
    rows[h] = LevelRow{h, l.segments, l.mesh, l.modulus, l.tc, l.tat, l.ct, 0.0, 0.0, 0.0};
  }

  bool all_converged = true;
  auto track = [&](const std::string& name, const WeakIndicatrix& w, double LevelRow::*gap) {
    for (std::size_t h = 0; h < w.level_gaps.size(); ++h) rows[h + 1].*gap = w.level_gaps[h];
    rep.values[name + "_length"] = w.total_length;
    rep.values[name + "_cauchy_gap"] = w.cauchy_gap;
    for (const auto& warn : w.warnings) rep.warnings.push_back(name + ": " + warn);
    if (!w.converged) {
      all_converged = false;
      rep.warnings.push_back(name + ": not converged, cauchy gap " + std::to_string(w.cauchy_gap));
    }
    emit(r, options, name, name + ".csv", csv_of(w.curve));
  };

  if (fin.tc > 1e-12) {
    track("tantrix", compute_weak_tantrix(seq, wopt), &LevelRow::tantrix_gap);
  } else {
    rep.warnings.push_back("TC = 0: no weak tantrix");
  }
  if (fin.tat > 1e-12) {
    track("binormal", compute_weak_binormal(seq, wopt), &LevelRow::binormal_gap);
  } else {
    rep.warnings.push_back("TAT = 0: no weak binormal");
  }
  if (fin.tc > 1e-12) {
    const WeakIndicatrix n = compute_weak_normal(seq, wopt);
    rep.values["normal_product_gap"] = n.product_identity_gap;
    track("normal", n, &LevelRow::normal_gap);
  }
  rep.levels = std::move(rows);

  rep.values["tc"] = fin.tc;
  rep.values["tat"] = fin.tat;
  std::vector<double> cts;
  for (const Level& l : seq.levels) cts.push_back(l.ct);
  rep.values["ct"] = looks_divergent(cts) ? kInf : fin.ct;
  if (looks_divergent(cts)) rep.warnings.push_back("UnboundedVariation: CT levels keep growing, reported as diverging");

  if (c.has_analytic_frame()) {
    rep.values["tc_exact"] = integrate([&](double s) { return c.curvature(s); }, c.a, c.b);
    rep.values["tat_exact"] = integrate([&](double s) { return std::abs(c.torsion(s)); }, c.a, c.b);
    IdentityOptions iopt;
    iopt.weak = wopt;
    for (const IdentityCheck& ch : verify_reparam_identities(c, seq, iopt).checks)
      rep.identities.push_back(IdentityRow{ch.name, ch.applicable, ch.max_deviation, ch.pass});
  }

  if (!all_converged) {
    rep.status = "not_converged";
    r.exit_code = kNotConverged;
  }
  return r;
}

CommandResult cmd_forces(const std::optional<std::filesystem::path>& input, const std::optional<ModelSpec>& model,
                         const Options& options) {
  if (input.has_value() == model.has_value())
    throw GeometryError(ErrorCode::InvalidArgument, "forces takes exactly one of --input and --model");
  CommandResult r;
  AnalysisReport& rep = r.report;
  rep.command = "forces";

  if (input) {
    rep.input["file"] = input->string();
    const Polygonal3 p = sanitize(read_polygonal(*input));
    const VectorMeasure k = curvature_force(p);
    const TotalCurvature t = tc_star(k);
    rep.values["tc_star"] = t.tc_star;
    rep.values["tc"] = t.tc;
    add_measure(r, options, "curvature", k);
    return r;
  }

  describe_model(rep, *model);
  common_input(rep, options);
  const ParamCurve c = make_model(*model);
  const VectorMeasure k = curvature_force(c);
  const TotalCurvature t = tc_star(k);
  rep.values["tc_star"] = t.tc_star;
  rep.values["tc"] = t.tc;
  add_measure(r, options, "curvature", k);
  if (!c.has_analytic_frame()) return r;

  const RefinementSequence seq = refine(c, refine_options(options));
  WeakOptions wopt;
  wopt.tol = options.tol_converge;
  if (seq.final_level().tc > 1e-12) {
    const VectorMeasure tf = torsion_force(c, compute_weak_tantrix(seq, wopt));
    rep.values["torsion_force_mass"] = tf.total_variation();
    add_measure(r, options, "torsion_force", tf);
  }
  if (seq.final_level().tat > 1e-12) {
    const VectorMeasure bv = binormal_variation(c, compute_weak_binormal(seq, wopt));
    rep.values["binormal_variation_mass"] = bv.total_variation();
    add_measure(r, options, "binormal_variation", bv);
  }
  return r;
}

CommandResult cmd_witness(const Options& options) {
  CommandResult r;
  AnalysisReport& rep = r.report;
  rep.command = "witness";
  rep.input["seed"] = std::to_string(options.seed);
  rep.input["budget"] = std::to_string(options.budget);
  rep.input["min_gap"] = num(options.min_gap);
  WitnessOptions wo;
  wo.seed = options.seed;
  wo.budget = options.budget;
  wo.min_gap = options.min_gap;
  const Witness w = nonmonotonicity_witness(wo);
  rep.values["tat_p"] = w.tat_p;
  rep.values["tat_p_prime"] = w.tat_p_prime;
  rep.values["gap"] = w.gap();
  rep.values["tc_p"] = w.tc_p;
  rep.values["tc_p_prime"] = w.tc_p_prime;
  rep.values["length_p"] = w.length_p;
  rep.values["length_p_prime"] = w.length_p_prime;
  rep.values["dihedral"] = w.dihedral;
  rep.values["evaluations"] = static_cast<double>(w.evaluations);
  std::ostringstream p, pp;
  write_vertices_text(p, w.p);
  write_vertices_text(pp, w.p_prime);
  emit(r, options, "p", "witness_P.txt", p.str());
  emit(r, options, "p_prime", "witness_P_prime.txt", pp.str());
  return r;
}

CommandResult cmd_lift(const std::filesystem::path& input, const Options& options) {
  CommandResult r;
  AnalysisReport& rep = r.report;
  rep.command = "lift";
  rep.input["file"] = input.string();

  std::ifstream in(input, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open " + input.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::vector<UnitVec3> pts = parse_points_csv(ss.str());
  if (pts.empty()) throw ParseError(0, 0, "no points in " + input.string());

  const GeodesicPolyline proj = GeodesicPolyline::projective_lifted(pts);
  UnitVec3 seed = proj.points()[0];
  if (options.lift_seed) {
    seed = UnitVec3(*options.lift_seed);
    rep.input["lift_seed"] = fmt_vec(*options.lift_seed);
  }
  const Lift lift = lift_projective_polyline(proj, seed);
  rep.values["points"] = static_cast<double>(pts.size());
  rep.values["length"] = lift.curve.length();
  rep.values["closing_sign"] = lift.closing_sign;
  emit(r, options, "lifted", "lifted.csv", csv_of(lift.curve));
  return r;
}

void write_outputs(CommandResult& result, const std::optional<std::filesystem::path>& report_path) {
  result.report.timestamp = utc_timestamp();
  for (const auto& [path, content] : result.files) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
  }
  const std::string json = to_json(result.report) + "\n";
  if (report_path) {
    if (report_path->has_parent_path()) std::filesystem::create_directories(report_path->parent_path());
    std::ofstream out(*report_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + report_path->string());
    out << json;
  } else {
    std::cout << json;
  }
}

}  // namespace weakframe::cli
