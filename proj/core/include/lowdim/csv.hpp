#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lowdim/geometry.hpp"

namespace lowdim {

/// Round-trip-exact decimal rendering of a double (17 significant digits).
std::string format_real(double value);

/// One point per row, comma separated. A first row that does not parse as
/// numbers is taken as a header and skipped. Blank lines are ignored.
PointSet read_point_set_csv(std::istream& in);
PointSet read_point_set_csv(const std::filesystem::path& path);

void write_point_set_csv(std::ostream& out, const PointSet& ps);

/// Square matrix, one row per line; same header rule as point sets.
DistanceMatrix read_distance_matrix_csv(std::istream& in);
DistanceMatrix read_distance_matrix_csv(const std::filesystem::path& path);

void write_distance_matrix_csv(std::ostream& out, const DistanceMatrix& m);

}  // namespace lowdim
