#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace salesig {

// Shortest decimal text that round-trips to the same double.
std::string format_number(double v);

// Strict decimal parse: whole string must be consumed, surrounding blanks
// are trimmed. Returns nullopt on any failure.
std::optional<double> parse_number(std::string_view text);

std::string_view trim(std::string_view s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

namespace csv {

using Row = std::vector<std::string>;

// RFC 4180-style quoting: fields containing comma, quote, CR or LF are
// quoted with doubled inner quotes. Rows are LF terminated.
std::string encode_row(const Row& row);

// Splits a whole document into rows. Accepts LF or CRLF. A trailing empty
// line is not a row.
std::vector<Row> parse(std::string_view text);

}  // namespace csv
}  // namespace salesig
