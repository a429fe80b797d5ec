#include "fracopt/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fracopt {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Cell num_cell(double v) {
    if (!std::isfinite(v)) return Cell{Cell::Kind::Null, ""};
    return Cell{Cell::Kind::Number, format_double(v)};
}

Cell int_cell(long long v) { return Cell{Cell::Kind::Number, std::to_string(v)}; }

Cell text_cell(std::string s) { return Cell{Cell::Kind::Text, std::move(s)}; }

Cell bool_cell(bool b) { return Cell{Cell::Kind::Boolean, b ? "true" : "false"}; }

Cell null_cell() { return Cell{Cell::Kind::Null, ""}; }

namespace {

void write_json_string(std::ostream& out, const std::string& s) {
    out << '"';
    for (char c : s) {
        switch (c) {
            case '"': out << "\\\""; break;
            case '\\': out << "\\\\"; break;
            case '\n': out << "\\n"; break;
            case '\t': out << "\\t"; break;
            default: out << c;
        }
    }
    out << '"';
}

void write_json_cell(std::ostream& out, const Cell& cell) {
    switch (cell.kind) {
        case Cell::Kind::Number: out << cell.text; break;
        case Cell::Kind::Boolean: out << cell.text; break;
        case Cell::Kind::Null: out << "null"; break;
        case Cell::Kind::Text: write_json_string(out, cell.text); break;
    }
}

}  // namespace

void write_report_csv(std::ostream& out, const Report& report) {
    for (const auto& [key, value] : report.config_echo)
        out << "# " << key << " = " << value << "\n";
    for (const auto& [key, cell] : report.summary)
        out << "# " << key << " = " << (cell.kind == Cell::Kind::Null ? "" : cell.text) << "\n";
    for (std::size_t i = 0; i < report.columns.size(); ++i)
        out << (i ? "," : "") << report.columns[i];
    out << "\n";
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << (row[i].kind == Cell::Kind::Null ? "" : row[i].text);
        out << "\n";
    }
}

void write_report_json(std::ostream& out, const Report& report) {
    out << "{\n  \"config\": {";
    for (std::size_t i = 0; i < report.config_echo.size(); ++i) {
        out << (i ? ", " : "");
        write_json_string(out, report.config_echo[i].first);
        out << ": ";
        write_json_string(out, report.config_echo[i].second);
    }
    out << "},\n  \"summary\": {";
    for (std::size_t i = 0; i < report.summary.size(); ++i) {
        out << (i ? ", " : "");
        write_json_string(out, report.summary[i].first);
        out << ": ";
        write_json_cell(out, report.summary[i].second);
    }
    out << "},\n  \"columns\": [";
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        out << (i ? ", " : "");
        write_json_string(out, report.columns[i]);
    }
    out << "],\n  \"rows\": [";
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        out << (r ? ",\n    " : "\n    ") << "[";
        for (std::size_t i = 0; i < report.rows[r].size(); ++i) {
            out << (i ? ", " : "");
            write_json_cell(out, report.rows[r][i]);
        }
        out << "]";
    }
    out << "\n  ]\n}\n";
}

void write_report(std::ostream& out, const Report& report, const std::string& format) {
    if (format == "csv")
        write_report_csv(out, report);
    else if (format == "json")
        write_report_json(out, report);
    else
        throw std::invalid_argument("unknown report format '" + format + "'");
}

}  // namespace fracopt
