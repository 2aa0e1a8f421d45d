#pragma once

#include <string>
#include <vector>

#include "rd/types.hpp"

namespace rd::csv {

// RFC-4180-ish: quotes fields containing comma, quote, or newline.
std::string escape(const std::string& field);

// Splits one CSV line into fields, handling quoted fields.
std::vector<std::string> split_line(const std::string& line, char delim = ',');

// Reads all rows of a delimited file. Skips blank lines.
std::vector<std::vector<std::string>> read_file(const std::string& path,
                                                char delim = ',');

std::string join(const std::vector<std::string>& fields, char delim = ',');

// Fixed formatting for doubles in reports: shortest round-trip (max_digits10).
std::string format_double(double v);

}  // namespace rd::csv
