#include <doctest.h>

#include <sstream>

#include "energy2/csv.hpp"
#include "energy2/error.hpp"

using namespace energy2;

namespace {

Sample parse(const std::string& text, bool header = false) {
  std::istringstream in(text);
  return read_csv(in, "input.csv", header);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const CsvError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("csv parsing") {
  CHECK(parse("1,2\n3,4\n") == Sample::from_rows({{1, 2}, {3, 4}}));
  CHECK(parse("x,y\r\n 1 , 2 \r\n\n3,+4e0\n", true) == Sample::from_rows({{1, 2}, {3, 4}}));
  CHECK(parse("-0.5\n") == Sample::from_rows({{-0.5}}));
}

TEST_CASE("csv errors carry source and line") {
  CHECK(error_of("1,2\n3\n").starts_with("input.csv:2:"));
  CHECK(error_of("1,abc\n").starts_with("input.csv:1:"));
  CHECK(error_of("1,,2\n").starts_with("input.csv:1:"));
  CHECK(error_of("nan\n").starts_with("input.csv:1:"));
  CHECK_THROWS_AS(parse(""), CsvError);
  CHECK_THROWS_AS(read_csv(std::filesystem::path("/nonexistent/file.csv"), false), CsvError);
}
