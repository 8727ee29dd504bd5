#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace rendezvous::report {

enum class Format { Csv, Json, Table };
Format parse_format(const std::string& name);

using Diagnostics = std::map<std::string, double>;
using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t, bool, Diagnostics>;

// Column-ordered records rendered as CSV (header row first), a JSON array of
// objects, or an aligned text table. Floating-point values are printed with
// 12 significant digits.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
    void render(Format format, std::ostream& out) const;
};

std::string format_double(double v);

}  // namespace rendezvous::report
