#pragma once

#include <iosfwd>
#include <string>

#include "chaindisc/core.hpp"

namespace chaindisc::io {

// CSV of one point per row, comma separated, '#' starts a comment line.
// Doubles are written with 17 significant digits so a round trip is exact.
PointSet read_pointset(std::istream& in);
void write_pointset(std::ostream& out, const PointSet& T);
PointSet load_pointset(const std::string& path);
void save_pointset(const std::string& path, const PointSet& T);

// Coloring CSV: entries in {-1, 0, 1}, same comment rules, any line layout.
Coloring read_coloring(std::istream& in);
void write_coloring(std::ostream& out, const Coloring& eta);
Coloring load_coloring(const std::string& path);
void save_coloring(const std::string& path, const Coloring& eta);

}  // namespace chaindisc::io
