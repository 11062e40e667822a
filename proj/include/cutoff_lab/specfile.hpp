#pragma once

#include <iosfwd>
#include <string>

#include "cutoff_lab/types.hpp"

namespace cutoff_lab {

// Flat key=value spec files:
//   p=2
//   phi=1,-0.25
//   init=0,1
//   eps=0.001
// Floats carry 17 significant digits so a written spec parses back bit-exact.

RecurrenceSpec parse_spec(std::istream& in);
RecurrenceSpec load_spec(const std::string& path);
void write_spec(std::ostream& out, const RecurrenceSpec& spec);
void save_spec(const std::string& path, const RecurrenceSpec& spec);

// Shortest-round-trip-safe decimal form (17 significant digits).
std::string format_double(double x);

}  // namespace cutoff_lab
