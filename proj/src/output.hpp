#pragma once

#include <string>
#include <vector>

#include "solver.hpp"

namespace wetlab {

// Occupancy mask as a portable graymap (P2), one row per grid row, top row
// first.  Deterministic byte-for-byte.
void write_pgm(const std::string& path, const DropletField& field);

// Two-series line plot (shared x axis) as a standalone SVG.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& xlabel,
                    const std::vector<double>& x,
                    const std::vector<std::pair<std::string, std::vector<double>>>&
                        series);

std::string format_number(double v);

}  // namespace wetlab
