#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lmp::csv {

inline constexpr std::string_view kSchemaVersion = "lmpred-csv/1";

/// Shortest round-trip is not required; every float is written with 17 significant digits.
[[nodiscard]] std::string format_double(double x);

/// Writes "# lmpred-csv/1 <comment>".
void write_comment(std::ostream& out, std::string_view comment);
void write_header(std::ostream& out, const std::vector<std::string>& columns);

/// Row builder: cells are joined with ',' and terminated with '\n' by end().
class Row {
public:
    explicit Row(std::ostream& out) : out_(out) {}
    Row& operator<<(double x);
    Row& operator<<(long long x);
    Row& operator<<(unsigned long long x);
    Row& operator<<(int x) { return *this << static_cast<long long>(x); }
    Row& operator<<(unsigned long x) { return *this << static_cast<unsigned long long>(x); }
    Row& operator<<(std::string_view s);
    Row& operator<<(const char* s) { return *this << std::string_view(s); }
    void end();

private:
    void separator();

    std::ostream& out_;
    bool first_ = true;
};

/// Parses a CSV body (comment lines skipped, header returned separately).
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
[[nodiscard]] Table read(std::istream& in);

}  // namespace lmp::csv
