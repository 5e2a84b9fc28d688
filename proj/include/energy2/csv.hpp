#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "energy2/sample.hpp"

namespace energy2 {

/// One observation per line, comma-separated decimal coordinates. Blank lines
/// are skipped; with `has_header` the first non-blank line is skipped too.
/// Throws CsvError naming `source` and the 1-based line number.
Sample read_csv(std::istream& in, const std::string& source, bool has_header);
Sample read_csv(const std::filesystem::path& file, bool has_header);

}  // namespace energy2
