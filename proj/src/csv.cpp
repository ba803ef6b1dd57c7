#include "lmp/csv.hpp"

#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace lmp::csv {

std::string format_double(double x) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
    return os.str();
}

void write_comment(std::ostream& out, std::string_view comment) {
    out << "# " << kSchemaVersion << ' ' << comment << '\n';
}

void write_header(std::ostream& out, const std::vector<std::string>& columns) {
    Row row(out);
    for (const auto& c : columns) {
        row << std::string_view(c);
    }
    row.end();
}

void Row::separator() {
    if (!first_) {
        out_ << ',';
    }
    first_ = false;
}

Row& Row::operator<<(double x) {
    separator();
    out_ << format_double(x);
    return *this;
}

Row& Row::operator<<(long long x) {
    separator();
    out_ << x;
    return *this;
}

Row& Row::operator<<(unsigned long long x) {
    separator();
    out_ << x;
    return *this;
}

Row& Row::operator<<(std::string_view s) {
    separator();
    out_ << s;
    return *this;
}

void Row::end() {
    out_ << '\n';
    first_ = true;
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) {
        cells.push_back(cell);
    }
    return cells;
}

}  // namespace

Table read(std::istream& in) {
    Table table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!have_header) {
            table.header = split(line);
            have_header = true;
        } else {
            table.rows.push_back(split(line));
        }
    }
    return table;
}

}  // namespace lmp::csv
