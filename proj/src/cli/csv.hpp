#pragma once

#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "cosa/data_matrix.hpp"

namespace cosa::cli {

/// RFC-4180 records (quoted fields, doubled quotes, CRLF or LF line ends).
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

struct CsvOptions {
  std::set<std::string> categorical;  // column names read as categories
  std::string id_column;              // optional row-label column
};

/**
 * Reads a data matrix with a required header row. Categorical columns map
 * their distinct tokens to codes 0, 1, ... in order of first appearance.
 * Errors name the 1-based line and column.
 */
DataMatrix read_data_csv(std::istream& in, const CsvOptions& options = {});
DataMatrix read_data_csv(const std::string& path, const CsvOptions& options = {});

/// Shortest text that parses back to the same double.
std::string format_double(double v);
double parse_double(const std::string& text);

void write_data_csv(std::ostream& out, const DataMatrix& x);
std::string csv_escape(const std::string& field);

}  // namespace cosa::cli
