// Deterministic text serialization: CSV and JSON with 12 significant digits.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oxy/types.hpp"

namespace oxy {

// printf %.12g.
std::string format_g12(double v);

// Header "t,s,a", one row per sample, \n endings.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

// {"method": ..., "termination": ..., "samples": [{"t","s","a"}, ...]} plus
// "extinction_estimate" when present.
void write_trajectory_json(std::ostream& os, const Trajectory& traj);

// Parse the CSV form back; validates the header and field count.
// Throws std::invalid_argument on malformed input.
std::vector<State> parse_trajectory_csv(std::istream& is);

} // namespace oxy
