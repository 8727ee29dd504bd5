#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <json.hpp>

namespace rendezvous::report {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string text(const Cell& c) {
    return std::visit(overloaded{
                          [](const std::string& s) { return s; },
                          [](double v) { return format_double(v); },
                          [](std::int64_t v) { return std::to_string(v); },
                          [](std::uint64_t v) { return std::to_string(v); },
                          [](bool b) { return std::string(b ? "true" : "false"); },
                          [](const Diagnostics& d) {
                              std::string s;
                              for (const auto& [k, v] : d) s += (s.empty() ? "" : ";") + k + "=" + format_double(v);
                              return s;
                          },
                      },
                      c);
}

// Rounded to the printed precision so JSON and CSV carry the same value.
nlohmann::ordered_json number(double v) {
    if (!std::isfinite(v)) return format_double(v);
    return std::strtod(format_double(v).c_str(), nullptr);
}

nlohmann::ordered_json to_json(const Cell& c) {
    return std::visit(overloaded{
                          [](const std::string& s) { return nlohmann::ordered_json(s); },
                          [](double v) { return number(v); },
                          [](std::int64_t v) { return nlohmann::ordered_json(v); },
                          [](std::uint64_t v) { return nlohmann::ordered_json(v); },
                          [](bool b) { return nlohmann::ordered_json(b); },
                          [](const Diagnostics& d) {
                              nlohmann::ordered_json obj = nlohmann::ordered_json::object();
                              for (const auto& [k, v] : d) obj[k] = number(v);
                              return obj;
                          },
                      },
                      c);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    if (name == "table") return Format::Table;
    throw std::invalid_argument("unknown format '" + name + "'");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("report row has the wrong number of cells");
    rows.push_back(std::move(row));
}

void Table::render(Format format, std::ostream& out) const {
    switch (format) {
        case Format::Csv: {
            for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
            out << '\n';
            for (const auto& row : rows) {
                for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(text(row[c]));
                out << '\n';
            }
            break;
        }
        case Format::Json: {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& row : rows) {
                nlohmann::ordered_json rec = nlohmann::ordered_json::object();
                for (std::size_t c = 0; c < row.size(); ++c) rec[columns[c]] = to_json(row[c]);
                arr.push_back(rec);
            }
            out << arr.dump(2) << '\n';
            break;
        }
        case Format::Table: {
            std::vector<std::size_t> width(columns.size());
            std::vector<std::vector<std::string>> cells;
            for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
            for (const auto& row : rows) {
                auto& r = cells.emplace_back();
                for (std::size_t c = 0; c < row.size(); ++c) {
                    r.push_back(text(row[c]));
                    width[c] = std::max(width[c], r.back().size());
                }
            }
            auto line = [&](const std::vector<std::string>& vals) {
                for (std::size_t c = 0; c < vals.size(); ++c) {
                    out << vals[c];
                    if (c + 1 < vals.size()) out << std::string(width[c] - vals[c].size() + 2, ' ');
                }
                out << '\n';
            };
            line(columns);
            for (const auto& r : cells) line(r);
            break;
        }
    }
}

}  // namespace rendezvous::report
