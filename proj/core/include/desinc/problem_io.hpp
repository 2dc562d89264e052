#pragma once

#include <string>

#include "desinc/problem.hpp"

namespace desinc {

// Builds a ProblemSpec from the JSON problem-file format:
//   {"integrand": "...",
//    "domain": {"kind": "finite"|"infinite"|"semi_log"|"semi_exp",
//               "a"?: number, "b"?: number},
//    "singularities": [{"re": ..., "im": ...}, ...],
//    "reference"?: number,
//    "fused_weight"?: bool}
// Malformed JSON or unknown keys of the wrong shape throw ConfigError;
// a malformed integrand propagates the parser's ParseError.
ProblemSpec problem_from_json(const std::string& text);

}  // namespace desinc
