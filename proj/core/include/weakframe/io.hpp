#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "weakframe/polygonal.hpp"

namespace weakframe {

// One "x y z" vertex per line; blank lines and lines starting with '#' are
// skipped. A last vertex equal to the first closes the polygonal.
Polygonal3 parse_polygonal_text(std::string_view text);

// {"vertices": [[x, y, z], ...], "closed": bool}; "closed" defaults to false.
Polygonal3 parse_polygonal_json(std::string_view text);

// Picks the JSON reader when the first non-blank character is '{'.
Polygonal3 parse_polygonal(std::string_view text);
Polygonal3 read_polygonal(const std::filesystem::path& path);

// Points as CSV rows. With a header, the x, y, z columns are found by name;
// without one the first three columns are used.
std::vector<UnitVec3> parse_points_csv(std::string_view text);

inline constexpr std::size_t kCsvSamples = 512;

// Header "s,x,y,z"; projective curves add a "sheet" column and emit canonical
// representatives, the sheet being the sign of the continuous lift through `seed`
// (the first stored point when empty).
void write_polyline_csv(std::ostream& out, const GeodesicPolyline& curve,
                        const std::optional<UnitVec3>& seed = std::nullopt);

void write_vertices_text(std::ostream& out, const Polygonal3& p);

}  // namespace weakframe
