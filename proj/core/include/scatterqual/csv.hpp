#pragma once

#include <string>
#include <vector>

namespace scatterqual {

/// Shortest round-trip decimal form of x ('.' decimal point, locale-free).
std::string format_number(double x);

/// RFC-4180-style quoting: fields containing comma, quote or newline are
/// quoted, embedded quotes doubled.
std::string csv_escape(const std::string& field);

std::string csv_join(const std::vector<std::string>& fields);

/// Splits one CSV record. Handles quoted fields; does not handle embedded
/// newlines (all files written by this project are one record per line).
std::vector<std::string> csv_split(const std::string& line);

/// Writes `text` to `path` atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& text);

std::string read_file(const std::string& path);

}  // namespace scatterqual
