#pragma once

#include <string>

#include "oocrn/funcspec.hpp"

namespace oocrn {

// JSON spec documents. Top-level "kind" selects the normal form:
//
//   {"kind": "grid_affine", "period": 2,
//    "pieces": [{"a0": "1", "a1": "2", "a2": "3",
//                "domain": {"p": 2, "q": 2, "offset": [0, 0]}}]}
//
//   {"kind": "min_of_fissures", "period": 1,
//    "fissures": [{"partials": [{"grid": {"p": 1, "q": 1, "offset": [0, 0]},
//                                "A0": 1, "A1": "1", "A2": "0",
//                                "B0": 1, "B1": "0", "B2": "1",
//                                "k": 1, "dips": {"0": 1}}]}]}
//
// Rationals are "num/den" strings (plain integers also accepted); A0/B0 are
// integers; dip keys are the signed line indices as strings.

function_spec parse_spec(const std::string& text);
std::string serialize_spec(const function_spec& spec);
function_spec load_spec_file(const std::string& path);

}  // namespace oocrn
