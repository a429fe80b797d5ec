// Deterministic CSV / JSON emission for trajectories and verification
// reports. Numbers are printed with 17 significant digits, '.' decimal
// separator, no locale dependence; fixed input produces bit-identical
// output files.
#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace fracopt {

std::string format_double(double v);  // %.17g

struct Cell {
    enum class Kind { Number, Text, Boolean, Null };
    Kind kind;
    std::string text;  // preformatted for Number, raw for Text
};

Cell num_cell(double v);
Cell int_cell(long long v);
Cell text_cell(std::string s);
Cell bool_cell(bool b);
Cell null_cell();

struct Report {
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> summary;
};

void write_report_csv(std::ostream& out, const Report& report);
void write_report_json(std::ostream& out, const Report& report);

// Dispatch on format name ("csv" | "json"); throws std::invalid_argument
// for anything else.
void write_report(std::ostream& out, const Report& report, const std::string& format);

}  // namespace fracopt
