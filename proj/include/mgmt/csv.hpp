#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace mgmt::csv {

/// Parse a whole CSV file. Handles quoted fields ("" escapes a quote) and CRLF.
/// Blank lines are skipped.
std::vector<std::vector<std::string>> read_file(const std::filesystem::path& path);

std::vector<std::vector<std::string>> parse(const std::string& text,
                                            const std::string& origin);

/// Write one row, quoting fields that contain commas, quotes or newlines.
void write_row(std::ostream& os, const std::vector<std::string>& fields);

/// Decimal rendering with 17 significant digits (full round-trip precision,
/// locale independent). Table contracts require at least 12.
std::string format_double(double v);

/// Strict double parse; `where` feeds the error message (file:line:col).
double parse_double(const std::string& s, const std::string& where);

/// Strict nonnegative integer parse.
long long parse_int(const std::string& s, const std::string& where);

} // namespace mgmt::csv
