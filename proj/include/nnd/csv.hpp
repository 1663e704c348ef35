// Tiny CSV assembly helper; files are written atomically elsewhere.

#pragma once

#include <initializer_list>
#include <string>

namespace nnd {

// Shortest-round-trip-ish fixed formatting; deterministic across runs.
std::string fmt_double(double v);

class CsvBuilder {
public:
    // '#'-prefixed line above the header (summary values, parameters).
    CsvBuilder& comment(const std::string& text);
    CsvBuilder& raw_line(const std::string& line);
    CsvBuilder& row(std::initializer_list<std::string> cells);

    const std::string& str() const { return out_; }

private:
    std::string out_;
};

} // namespace nnd
