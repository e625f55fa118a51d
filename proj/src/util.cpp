#include "partisan/util.hpp"

#include <cstdio>

namespace partisan {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

bool contains_ci(std::string_view haystack, std::string_view needle_lower) {
  if (needle_lower.empty()) return true;
  if (haystack.size() < needle_lower.size()) return false;
  const size_t last = haystack.size() - needle_lower.size();
  for (size_t i = 0; i <= last; ++i) {
    size_t j = 0;
    while (j < needle_lower.size() &&
           ascii_lower(haystack[i + j]) == needle_lower[j]) {
      ++j;
    }
    if (j == needle_lower.size()) return true;
  }
  return false;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace partisan
