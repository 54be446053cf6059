#include "holowidths/csv.hpp"

#include "holowidths/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

namespace holowidths {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    (void)ec;
    return {buf.data(), ptr};
}

CsvWriter::CsvWriter(std::ostream& os, std::vector<std::string> header) : os_(os), columns_(header.size()) {
    for (const auto& h : header) field(h);
}

void CsvWriter::field(std::string_view text) {
    if (column_ > 0) os_ << ',';
    os_ << text;
    if (++column_ == columns_) {
        os_ << '\n';
        column_ = 0;
    }
}

CsvWriter& CsvWriter::operator<<(double x) {
    field(format_double(x));
    return *this;
}

CsvWriter& CsvWriter::operator<<(long long x) {
    field(std::to_string(x));
    return *this;
}

CsvWriter& CsvWriter::operator<<(unsigned long long x) {
    field(std::to_string(x));
    return *this;
}

CsvWriter& CsvWriter::operator<<(std::string_view text) {
    field(text);
    return *this;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.emplace_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const char* first = text.data();
    if (!text.empty() && text.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ParseError("invalid number '" + std::string(text) + "'");
    return value;
}

}  // namespace holowidths
