#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vml/diagnostics/functionals.hpp"

namespace vml {

inline constexpr const char* kCsvSchema = "# vml-diagnostics v1";

// Column names, one per FunctionalReport entry (arrays expand to _0.._2).
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_row(const FunctionalReport& r);

// Schema line, header, rows; values in %.17g.
void write_csv(std::ostream& out, const std::vector<FunctionalReport>& rows);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    // Throws ConfigError when the column is absent.
    std::vector<double> column(const std::string& name) const;
};

// Reads any comma-separated numeric table with a header row; lines
// starting with '#' are skipped. Throws IoError on malformed input.
CsvTable read_csv(const std::string& path);

}  // namespace vml
