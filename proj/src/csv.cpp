#include "energy2/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>
#include <vector>

#include "energy2/error.hpp"

namespace energy2 {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Sample read_csv(std::istream& in, const std::string& source, bool has_header) {
  std::vector<double> data;
  std::size_t dim = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool header_pending = has_header;
  std::string line;
  auto fail = [&](const std::string& what) {
    throw CsvError(source + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view content = trim(line);
    if (content.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    std::size_t fields = 0;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = content.find(',', start);
      const std::string_view field = trim(content.substr(
          start, comma == std::string_view::npos ? std::string_view::npos
                                                 : comma - start));
      ++fields;
      if (field.empty()) fail("missing value in column " + std::to_string(fields));
      double value = 0.0;
      const char* first = field.data();
      const char* last = field.data() + field.size();
      if (*first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        fail("column " + std::to_string(fields) + " is not a finite number: '" +
             std::string(field) + "'");
      }
      data.push_back(value);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows == 0) {
      dim = fields;
    } else if (fields != dim) {
      fail("expected " + std::to_string(dim) + " columns, found " +
           std::to_string(fields));
    }
    ++rows;
  }
  if (in.bad()) throw CsvError(source + ": read error");
  if (rows == 0) throw CsvError(source + ": no observations");
  return Sample(rows, dim, std::move(data));
}

Sample read_csv(const std::filesystem::path& file, bool has_header) {
  std::ifstream in(file);
  if (!in) throw CsvError(file.string() + ": cannot open file");
  return read_csv(in, file.string(), has_header);
}

}  // namespace energy2
