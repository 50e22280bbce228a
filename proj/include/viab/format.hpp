#pragma once

#include <string>

namespace viab {

// Shortest decimal that round-trips to exactly the same double (via
// std::to_chars).  Used for all file output so artifacts are byte-stable.
std::string format_double(double x);

// 6 significant digits, for console reports.
std::string format_sig6(double x);

// Strict double parse of an entire token; '_' digit separators are allowed
// and stripped.  Returns false on trailing garbage or empty input.
bool parse_double(const std::string& token, double& out);

}  // namespace viab
