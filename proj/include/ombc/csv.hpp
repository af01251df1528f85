#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ombc/matrix.hpp"
#include "ombc/simgen.hpp"

namespace ombc {

/// A parsed dataset: numeric columns plus an optional integer `label`
/// column (recognized by exact header name, any position).
struct CsvData {
    Matrix data;
    std::optional<std::vector<int>> labels;
    std::vector<std::string> column_names;  // numeric columns only
};

/// Parses CSV text: comma-separated, header required, UTF-8, no quoting.
/// Throws ParseError with a 1-based row/column location on malformed input.
CsvData parse_csv(const std::string& text);

/// Reads and parses a CSV file. Throws IoError if unreadable.
CsvData read_csv(const std::string& path);

/// Writes a labeled dataset with header x1..xp,label. Round-trips exactly
/// through parse_csv (shortest-round-trip float formatting).
void write_labeled_csv(const std::string& path, const LabeledData& dataset);

/// Formats a double with enough digits to round-trip exactly.
std::string format_double(double v);

}  // namespace ombc
