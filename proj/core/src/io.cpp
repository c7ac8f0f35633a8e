#include "weakframe/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "weakframe/errors.hpp"

namespace weakframe {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split(std::string_view line, std::string_view seps) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && seps.find(line[i]) != std::string_view::npos) ++i;
    if (i >= line.size()) break;
    const std::size_t j = std::min(line.find_first_of(seps, i), line.size());
    out.push_back(Token{line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    f(++line_no, line);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Polygonal3 build(std::vector<Vec3> vertices, bool closed) {
  if (vertices.empty()) throw ParseError(1, 0, "no vertices");
  return Polygonal3(std::move(vertices), closed);
}

}  // namespace

Polygonal3 parse_polygonal_text(std::string_view text) {
  std::vector<Vec3> vertices;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    const auto tokens = split(line, " \t");
    if (tokens.empty() || tokens.front().text.front() == '#') return;
    if (tokens.size() != 3) {
      const std::size_t col = tokens.size() > 3 ? tokens[3].column : line.size() + 1;
      throw ParseError(line_no, col, "expected 3 coordinates, found " + std::to_string(tokens.size()));
    }
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
      const auto d = to_double(tokens[i].text);
      if (!d) throw ParseError(line_no, tokens[i].column, "not a finite number: '" + std::string(tokens[i].text) + "'");
      v[i] = *d;
    }
    vertices.push_back(v);
  });
  bool closed = false;
  if (vertices.size() >= 4 && vertices.front() == vertices.back()) {
    vertices.pop_back();
    closed = true;
  }
  return build(std::move(vertices), closed);
}

Polygonal3 parse_polygonal_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(line, col, e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
    throw ParseError(1, 1, "expected an object with a \"vertices\" array");
  bool closed = false;
  if (doc.contains("closed")) {
    if (!doc["closed"].is_boolean()) throw ParseError(1, 1, "\"closed\" must be a boolean");
    closed = doc["closed"].get<bool>();
  }
  std::vector<Vec3> vertices;
  const auto& arr = doc["vertices"];
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& v = arr[i];
    if (!v.is_array() || v.size() != 3)
      throw ParseError(1, 1, "vertex " + std::to_string(i) + " is not a triple");
    Vec3 p;
    for (int k = 0; k < 3; ++k) {
      if (!v[k].is_number() || !std::isfinite(v[k].get<double>()))
        throw ParseError(1, 1, "vertex " + std::to_string(i) + " has a non-numeric coordinate");
      p[k] = v[k].get<double>();
    }
    vertices.push_back(p);
  }
  return build(std::move(vertices), closed);
}

Polygonal3 parse_polygonal(std::string_view text) {
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_polygonal_json(text);
  return parse_polygonal_text(text);
}

Polygonal3 read_polygonal(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, 0, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_polygonal(ss.str());
}

std::vector<UnitVec3> parse_points_csv(std::string_view text) {
  std::vector<UnitVec3> out;
  std::array<std::size_t, 3> cols{0, 1, 2};
  bool first = true;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    const auto tokens = split(line, ", \t");
    if (tokens.empty() || tokens.front().text.front() == '#') return;
    if (first) {
      first = false;
      if (!to_double(tokens.front().text)) {
        std::array<int, 3> found{-1, -1, -1};
        for (std::size_t i = 0; i < tokens.size(); ++i) {
          if (tokens[i].text == "x") found[0] = static_cast<int>(i);
          if (tokens[i].text == "y") found[1] = static_cast<int>(i);
          if (tokens[i].text == "z") found[2] = static_cast<int>(i);
        }
        for (int k = 0; k < 3; ++k) {
          if (found[k] < 0) throw ParseError(line_no, 1, "header lacks an x, y or z column");
          cols[k] = static_cast<std::size_t>(found[k]);
        }
        return;
      }
    }
    Vec3 v;
    for (int k = 0; k < 3; ++k) {
      if (cols[k] >= tokens.size()) throw ParseError(line_no, line.size() + 1, "missing column");
      const auto d = to_double(tokens[cols[k]].text);
      if (!d) throw ParseError(line_no, tokens[cols[k]].column, "not a finite number");
      v[k] = *d;
    }
    try {
      out.emplace_back(v);
    } catch (const GeometryError&) {
      throw ParseError(line_no, 1, "zero vector");
    }
  });
  return out;
}

void write_polyline_csv(std::ostream& out, const GeodesicPolyline& curve, const std::optional<UnitVec3>& seed) {
  const bool proj = curve.space() == Space::Projective;
  out << (proj ? "s,x,y,z,sheet\n" : "s,x,y,z\n");
  if (curve.size() == 0) return;

  // The stored representatives of a projective polyline already form a continuous lift.
  GeodesicPolyline chart = curve;
  if (proj) {
    std::vector<UnitVec3> pts(curve.points().begin(), curve.points().end());
    if (seed && seed->dot(pts[0]) < 0.0)
      for (UnitVec3& p : pts) p = -p;
    chart = GeodesicPolyline(Space::Sphere, std::move(pts));
  }
  const double L = chart.length();
  std::vector<double> params;
  for (std::size_t j = 0; j < kCsvSamples; ++j)
    params.push_back(L * static_cast<double>(j) / static_cast<double>(kCsvSamples - 1));
  for (double c : chart.cum_length()) params.push_back(c);
  std::sort(params.begin(), params.end());
  params.erase(std::unique(params.begin(), params.end()), params.end());

  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(17);
  for (double s : params) {
    const UnitVec3 p = chart.at(s);
    if (proj) {
      const UnitVec3 c = canonical(p);
      const int sheet = c.dot(p) >= 0.0 ? 1 : -1;
      out << s << ',' << c.x() << ',' << c.y() << ',' << c.z() << ',' << sheet << '\n';
    } else {
      out << s << ',' << p.x() << ',' << p.y() << ',' << p.z() << '\n';
    }
  }
  out.flags(flags);
  out.precision(prec);
}

void write_vertices_text(std::ostream& out, const Polygonal3& p) {
  const auto prec = out.precision();
  out << std::setprecision(17);
  for (const Vec3& v : p.vertices()) out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  if (p.closed() && !p.vertices().empty()) {
    const Vec3& v = p.vertices().front();
    out << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
  }
  out.precision(prec);
}

}  // namespace weakframe
