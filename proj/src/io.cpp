#include "xyzt/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace xyzt {

OutputRow to_output_row(const SweepRow& row) {
    if (!std::isfinite(row.record.C) || !std::isfinite(row.record.IC) || !std::isfinite(row.record.F))
        throw std::runtime_error("to_output_row: non-finite measure value");
    return OutputRow{
        row.record.t, row.params.p,        row.params.chi, row.params.gamma,
        row.params.Jx, row.params.Jy,      row.params.Jz,  row.route,
        row.record.C,  row.record.IC,      row.record.F,   row.record.F_A,
        row.record.F_B, row.record.purity, row.record.upper_bound, row.record.residual,
    };
}

std::string csv_header() {
    return "t,p,chi,gamma,Jx,Jy,Jz,route,C,IC,F,F_A,F_B,purity,upper_bound,residual";
}

std::string format_sci(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

std::string format_compact(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general);
    return std::string(buf, res.ptr);
}

std::string to_csv_line(const OutputRow& row) {
    std::string line;
    line.reserve(16 * 24);
    const double nums_before[] = {row.t, row.p, row.chi, row.gamma, row.Jx, row.Jy, row.Jz};
    for (double x : nums_before) {
        line += format_sci(x);
        line += ',';
    }
    line += route_name(row.route);
    const double nums_after[] = {row.C,   row.IC,     row.F,           row.F_A,
                                 row.F_B, row.purity, row.upper_bound, row.residual};
    for (double x : nums_after) {
        line += ',';
        line += format_sci(x);
    }
    return line;
}

void write_csv(std::ostream& os, std::span<const OutputRow> rows) {
    os << csv_header() << '\n';
    for (const OutputRow& row : rows) os << to_csv_line(row) << '\n';
}

} // namespace xyzt
