#pragma once

// Matrix serialization shared by every CLI command.
//
// Text form:  first line "p", then p lines of p signed decimal integers.
// JSON form:  {"p": int, "rows": [[int, ...], ...]}.  Entries that do not
// fit in a 64-bit signed integer are written as decimal strings; both
// numbers and strings are accepted on input.

#include "torext/types.hpp"

#include <json.hpp>

#include <string>

namespace torext {

/// Parse a matrix from text or JSON, auto-detected by the first
/// non-whitespace character ('{' selects JSON).  Throws parse_error.
IntMatrix parse_matrix(const std::string& input);

IntMatrix matrix_from_json(const nlohmann::json& j);

std::string matrix_to_text(const IntMatrix& a);

nlohmann::json matrix_to_json(const IntMatrix& a);

/// One integer entry: JSON number when it fits in int64, else decimal string.
nlohmann::json int_to_json(const Int& v);

Int int_from_json(const nlohmann::json& j);

}  // namespace torext
