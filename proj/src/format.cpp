#include "dirsum/format.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace dirsum {

std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::string strip_underscores(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (c != '_') s.push_back(c);
  return s;
}

}  // namespace

std::uint64_t parse_count(std::string_view text) {
  std::string s = strip_underscores(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  bool scientific = s.find_first_of("eE.") != std::string::npos;
  if (scientific) {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "'");
    if (!(v >= 0) || v > 9.2e18) throw std::invalid_argument("number out of range '" + s + "'");
    double r = std::round(v);
    if (std::abs(v - r) > 1e-6 * std::max(1.0, std::abs(v)))
      throw std::invalid_argument("number '" + s + "' is not an integer");
    return static_cast<std::uint64_t>(r);
  }
  std::size_t pos = 0;
  unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

std::int64_t parse_signed(std::string_view text) {
  std::string s = strip_underscores(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  bool neg = s[0] == '-';
  std::uint64_t mag = parse_count(neg ? s.substr(1) : s);
  if (mag > 9223372036854775807ull) throw std::invalid_argument("number out of range '" + s + "'");
  std::int64_t v = static_cast<std::int64_t>(mag);
  return neg ? -v : v;
}

std::vector<std::uint64_t> parse_count_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? comma : comma - start);
    if (!item.empty()) out.push_back(parse_count(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::uint64_t> parse_count_range_or_list(std::string_view text) {
  std::size_t dots = text.find("..");
  if (dots == std::string_view::npos) return parse_count_list(text);
  std::uint64_t lo = parse_count(text.substr(0, dots));
  std::uint64_t hi = parse_count(text.substr(dots + 2));
  if (lo > hi) throw std::invalid_argument("empty range '" + std::string(text) + "'");
  std::vector<std::uint64_t> out;
  out.reserve(hi - lo + 1);
  for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

}  // namespace dirsum
