#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace holowidths {

/// Shortest round-trip decimal form; identical bytes on every run.
[[nodiscard]] std::string format_double(double x);

class CsvWriter {
public:
    CsvWriter(std::ostream& os, std::vector<std::string> header);
    CsvWriter& operator<<(double x);
    CsvWriter& operator<<(long long x);
    CsvWriter& operator<<(unsigned long long x);
    CsvWriter& operator<<(int x) { return *this << static_cast<long long>(x); }
    CsvWriter& operator<<(unsigned x) { return *this << static_cast<unsigned long long>(x); }
    CsvWriter& operator<<(unsigned long x) { return *this << static_cast<unsigned long long>(x); }
    CsvWriter& operator<<(long x) { return *this << static_cast<long long>(x); }
    CsvWriter& operator<<(std::string_view text);
    CsvWriter& operator<<(const char* text) { return *this << std::string_view(text); }

private:
    void field(std::string_view text);

    std::ostream& os_;
    std::size_t columns_;
    std::size_t column_ = 0;
};

/// Splits one CSV line on commas (no quoting).
[[nodiscard]] std::vector<std::string> split_csv_line(std::string_view line);

/// Parses a double, throwing ParseError on malformed text.
[[nodiscard]] double parse_double(std::string_view text);

}  // namespace holowidths
