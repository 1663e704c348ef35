#include "nnd/csv.hpp"

#include <cstdio>

namespace nnd {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

CsvBuilder& CsvBuilder::comment(const std::string& text) {
    out_ += "# ";
    out_ += text;
    out_ += '\n';
    return *this;
}

CsvBuilder& CsvBuilder::raw_line(const std::string& line) {
    out_ += line;
    out_ += '\n';
    return *this;
}

CsvBuilder& CsvBuilder::row(std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& cell : cells) {
        if (!first) out_ += ',';
        out_ += cell;
        first = false;
    }
    out_ += '\n';
    return *this;
}

} // namespace nnd
