#include "weakframe/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>

#include <json.hpp>

#include "weakframe/errors.hpp"

namespace weakframe {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

constexpr const char* kDiverging = "diverging";

ordered num(double v) { return std::isfinite(v) ? ordered(v) : ordered(kDiverging); }

double get_num(const json& j) {
  if (j.is_string() && j.get<std::string>() == kDiverging) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) throw ParseError(1, 0, "expected a number or \"diverging\"");
  return j.get<double>();
}

double get_num(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(1, 0, std::string("missing field ") + key);
  return get_num(j.at(key));
}

}  // namespace

MeasureSummary summarize(const std::string& name, const VectorMeasure& m) {
  MeasureSummary s;
  s.name = name;
  s.begin = m.begin;
  s.end = m.end;
  s.density_cells = m.density.size();
  s.atomic_variation = m.atomic_variation();
  s.density_variation = m.density_variation();
  for (const Atom& a : m.atoms) s.atoms.push_back(AtomRow{a.param, a.weight.x(), a.weight.y(), a.weight.z(), a.angle});
  return s;
}

std::string to_json(const AnalysisReport& r, int indent) {
  ordered j;
  j["schema"] = r.schema;
  j["command"] = r.command;
  j["status"] = r.status;
  j["timestamp"] = r.timestamp;
  j["input"] = r.input;
  ordered values = ordered::object();
  for (const auto& [k, v] : r.values) values[k] = num(v);
  j["values"] = values;
  ordered levels = ordered::array();
  for (const LevelRow& l : r.levels) {
    levels.push_back({{"level", l.level},
                      {"segments", l.segments},
                      {"mesh", num(l.mesh)},
                      {"modulus", num(l.modulus)},
                      {"tc", num(l.tc)},
                      {"tat", num(l.tat)},
                      {"ct", num(l.ct)},
                      {"tantrix_gap", num(l.tantrix_gap)},
                      {"binormal_gap", num(l.binormal_gap)},
                      {"normal_gap", num(l.normal_gap)}});
  }
  j["levels"] = levels;
  ordered ids = ordered::array();
  for (const IdentityRow& i : r.identities)
    ids.push_back({{"name", i.name}, {"applicable", i.applicable}, {"max_deviation", num(i.max_deviation)}, {"pass", i.pass}});
  j["identities"] = ids;
  ordered measures = ordered::array();
  for (const MeasureSummary& m : r.measures) {
    ordered atoms = ordered::array();
    for (const AtomRow& a : m.atoms)
      atoms.push_back({{"param", num(a.param)}, {"weight", {num(a.wx), num(a.wy), num(a.wz)}}, {"angle", num(a.angle)}});
    measures.push_back({{"name", m.name},
                        {"begin", num(m.begin)},
                        {"end", num(m.end)},
                        {"density_cells", m.density_cells},
                        {"atomic_variation", num(m.atomic_variation)},
                        {"density_variation", num(m.density_variation)},
                        {"atoms", atoms}});
  }
  j["measures"] = measures;
  j["files"] = r.files;
  j["warnings"] = r.warnings;
  if (!r.error.empty()) j["error"] = r.error;
  return j.dump(indent);
}

AnalysisReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(1, e.byte, e.what());
  }
  try {
    AnalysisReport r;
    r.schema = j.at("schema").get<int>();
    if (r.schema != kReportSchema) throw ParseError(1, 0, "unsupported schema " + std::to_string(r.schema));
    r.command = j.at("command").get<std::string>();
    r.status = j.at("status").get<std::string>();
    r.timestamp = j.value("timestamp", "");
    r.input = j.value("input", std::map<std::string, std::string>{});
    const json values = j.value("values", json::object());
    for (const auto& [k, v] : values.items()) r.values[k] = get_num(v);
    for (const auto& l : j.value("levels", json::array())) {
      LevelRow row;
      row.level = l.at("level").get<std::size_t>();
      row.segments = l.at("segments").get<std::size_t>();
      row.mesh = get_num(l, "mesh");
      row.modulus = get_num(l, "modulus");
      row.tc = get_num(l, "tc");
      row.tat = get_num(l, "tat");
      row.ct = get_num(l, "ct");
      row.tantrix_gap = get_num(l, "tantrix_gap");
      row.binormal_gap = get_num(l, "binormal_gap");
      row.normal_gap = get_num(l, "normal_gap");
      r.levels.push_back(row);
    }
    for (const auto& i : j.value("identities", json::array()))
      r.identities.push_back(IdentityRow{i.at("name").get<std::string>(), i.at("applicable").get<bool>(),
                                         get_num(i, "max_deviation"), i.at("pass").get<bool>()});
    for (const auto& m : j.value("measures", json::array())) {
      MeasureSummary s;
      s.name = m.at("name").get<std::string>();
      s.begin = get_num(m, "begin");
      s.end = get_num(m, "end");
      s.density_cells = m.at("density_cells").get<std::size_t>();
      s.atomic_variation = get_num(m, "atomic_variation");
      s.density_variation = get_num(m, "density_variation");
      for (const auto& a : m.at("atoms")) {
        const auto& w = a.at("weight");
        s.atoms.push_back(AtomRow{get_num(a, "param"), get_num(w.at(0)), get_num(w.at(1)), get_num(w.at(2)), get_num(a, "angle")});
      }
      r.measures.push_back(s);
    }
    r.files = j.value("files", std::map<std::string, std::string>{});
    r.warnings = j.value("warnings", std::vector<std::string>{});
    r.error = j.value("error", "");
    return r;
  } catch (const json::exception& e) {
    throw ParseError(1, 0, e.what());
  }
}

bool same_content(const AnalysisReport& a, const AnalysisReport& b) {
  AnalysisReport x = a, y = b;
  x.timestamp.clear();
  y.timestamp.clear();
  return x == y;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace weakframe
