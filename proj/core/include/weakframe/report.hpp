#pragma once

#include <map>
#include <string>
#include <vector>

#include "weakframe/forces.hpp"

namespace weakframe {

inline constexpr int kReportSchema = 1;

struct LevelRow {
  std::size_t level = 0;
  std::size_t segments = 0;
  double mesh = 0.0;
  double modulus = 0.0;
  double tc = 0.0;
  double tat = 0.0;
  double ct = 0.0;
  double tantrix_gap = 0.0;
  double binormal_gap = 0.0;
  double normal_gap = 0.0;

  bool operator==(const LevelRow&) const = default;
};

struct IdentityRow {
  std::string name;
  bool applicable = false;
  double max_deviation = 0.0;
  bool pass = false;

  bool operator==(const IdentityRow&) const = default;
};

struct AtomRow {
  double param = 0.0;
  double wx = 0.0, wy = 0.0, wz = 0.0;
  double angle = 0.0;

  bool operator==(const AtomRow&) const = default;
};

struct MeasureSummary {
  std::string name;
  double begin = 0.0;
  double end = 0.0;
  std::size_t density_cells = 0;
  double atomic_variation = 0.0;
  double density_variation = 0.0;
  std::vector<AtomRow> atoms;

  bool operator==(const MeasureSummary&) const = default;
};

MeasureSummary summarize(const std::string& name, const VectorMeasure& m);

// Non-finite numbers serialize as the string "diverging" and read back as +∞.
struct AnalysisReport {
  int schema = kReportSchema;
  std::string command;
  std::string status = "ok";
  std::string timestamp;
  std::map<std::string, std::string> input;
  std::map<std::string, double> values;
  std::vector<LevelRow> levels;
  std::vector<IdentityRow> identities;
  std::vector<MeasureSummary> measures;
  std::map<std::string, std::string> files;
  std::vector<std::string> warnings;
  std::string error;

  bool operator==(const AnalysisReport&) const = default;
};

std::string to_json(const AnalysisReport& r, int indent = 2);
// Throws ParseError on malformed input or a schema other than 1.
AnalysisReport report_from_json(const std::string& text);

// Equality ignoring the timestamp.
bool same_content(const AnalysisReport& a, const AnalysisReport& b);

// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace weakframe
