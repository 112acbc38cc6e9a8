#include "dirsum/format.hpp"

#include <limits>

#include "doctest.h"

using namespace dirsum;

TEST_CASE("format_real: 12 significant digits, null for non-finite") {
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(1.0 / 3.0) == "0.333333333333");
  CHECK(format_real(78626.503869) == "78626.503869");
  CHECK(format_real(std::numeric_limits<double>::quiet_NaN()) == "null");
  CHECK(format_real(std::numeric_limits<double>::infinity()) == "null");
}

TEST_CASE("parse_count: plain, underscored, scientific") {
  CHECK(parse_count("0") == 0);
  CHECK(parse_count("12345") == 12345);
  CHECK(parse_count("10_000_000") == 10000000);
  CHECK(parse_count("1e7") == 10000000);
  CHECK(parse_count("2.5e3") == 2500);
  CHECK_THROWS(parse_count("1.5"));
  CHECK_THROWS(parse_count("abc"));
  CHECK_THROWS(parse_count(""));
}

TEST_CASE("parse_signed handles negatives") {
  CHECK(parse_signed("-4") == -4);
  CHECK(parse_signed("1_000") == 1000);
  CHECK(parse_signed("-1e3") == -1000);
}

TEST_CASE("count lists and ranges") {
  CHECK(parse_count_list("1,2,3") == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(parse_count_list("1e2") == std::vector<std::uint64_t>{100});
  CHECK(parse_count_range_or_list("5..8") == std::vector<std::uint64_t>{5, 6, 7, 8});
  CHECK(parse_count_range_or_list("7") == std::vector<std::uint64_t>{7});
  CHECK_THROWS(parse_count_range_or_list("8..5"));
}

TEST_CASE("csv_escape quotes only when needed") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}
