#ifndef DIRSUM_FORMAT_HPP
#define DIRSUM_FORMAT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dirsum {

// Reals print with 12 significant digits; non-finite values as "null".
std::string format_real(double v);

// Counts accept plain decimal, underscored literals ("10_000_000") and
// scientific notation ("1e7"); the value must be a nonnegative integer.
std::uint64_t parse_count(std::string_view text);

std::int64_t parse_signed(std::string_view text);

// Comma-separated counts, each element as above.
std::vector<std::uint64_t> parse_count_list(std::string_view text);

// "lo..hi" (inclusive) or a comma-separated list.
std::vector<std::uint64_t> parse_count_range_or_list(std::string_view text);

std::string csv_escape(std::string_view field);

}  // namespace dirsum

#endif  // DIRSUM_FORMAT_HPP
