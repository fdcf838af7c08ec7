#pragma once

#include <string>

#include "oocrn/crn.hpp"

namespace oocrn {

// Text format, one reaction per line:
//
//   # comment
//   @input X1 X2
//   @output Y
//   @leader L
//   L + 2 X1 -> Lp + 3 Y
//   X2 -> 0
//
// Coefficients are decimal naturals separated from the species name by
// whitespace; a coefficient of 1 is omitted. An empty side is written `0`.
// Species names match [A-Za-z][A-Za-z0-9_.]*.

crn parse_crn(const std::string& text);
std::string serialize_crn(const crn& net);

crn load_crn_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace oocrn
