#include "viab/format.hpp"

#include <charconv>
#include <cstdio>

namespace viab {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string format_sig6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

bool parse_double(const std::string& token, double& out) {
  std::string cleaned;
  cleaned.reserve(token.size());
  for (char c : token)
    if (c != '_' && c != ' ' && c != '\t') cleaned.push_back(c);
  if (cleaned.empty()) return false;
  const char* begin = cleaned.data();
  const char* end = begin + cleaned.size();
  if (*begin == '+') ++begin;  // from_chars rejects an explicit plus
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc{} && res.ptr == end;
}

}  // namespace viab
