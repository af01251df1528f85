#include "ombc/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ombc {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    // Tolerate trailing \r from CRLF files.
    if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r')
        fields.back().pop_back();
    return fields;
}

std::string trimmed(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t");
    std::size_t end = s.find_last_not_of(" \t");
    if (begin == std::string::npos) return "";
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& field, std::size_t row, std::size_t col) {
    const std::string t = trimmed(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw ParseError("csv: not a number: '" + t + "'", row, col);
    if (!std::isfinite(value))
        throw ParseError("csv: non-finite value: '" + t + "'", row, col);
    return value;
}

}  // namespace

CsvData parse_csv(const std::string& text) {
    std::istringstream stream(text);
    std::string line;
    if (!std::getline(stream, line)) throw ParseError("csv: empty input", 1, 1);

    const std::vector<std::string> header = split_fields(line);
    std::optional<std::size_t> label_col;
    CsvData out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string name = trimmed(header[c]);
        if (name.empty()) throw ParseError("csv: empty column name", 1, c + 1);
        if (name == "label") {
            if (label_col) throw ParseError("csv: duplicate label column", 1, c + 1);
            label_col = c;
        } else {
            out.column_names.push_back(name);
        }
    }
    const std::size_t p = out.column_names.size();
    if (p == 0) throw ParseError("csv: no numeric columns", 1, 1);

    std::vector<double> values;
    std::vector<int> labels;
    std::size_t rows = 0;
    for (std::size_t row = 2; std::getline(stream, line); ++row) {
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != header.size())
            throw ParseError("csv: expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             row, fields.size() + 1);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            const double v = parse_number(fields[c], row, c + 1);
            if (label_col && c == *label_col) {
                const int lab = static_cast<int>(v);
                if (static_cast<double>(lab) != v)
                    throw ParseError("csv: label must be an integer", row, c + 1);
                labels.push_back(lab);
            } else {
                values.push_back(v);
            }
        }
        ++rows;
    }
    if (rows == 0) throw ParseError("csv: no data rows", 2, 1);

    out.data = Matrix(rows, p);
    out.data.data() = std::move(values);
    if (label_col) out.labels = std::move(labels);
    return out;
}

CsvData read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str());
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void write_labeled_csv(const std::string& path, const LabeledData& dataset) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    for (std::size_t j = 0; j < dataset.data.cols(); ++j) out << "x" << (j + 1) << ",";
    out << "label\n";
    for (std::size_t i = 0; i < dataset.data.rows(); ++i) {
        for (std::size_t j = 0; j < dataset.data.cols(); ++j)
            out << format_double(dataset.data(i, j)) << ",";
        out << dataset.labels[i] << "\n";
    }
    if (!out) throw IoError("failed while writing: " + path);
}

}  // namespace ombc
