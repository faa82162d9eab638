#pragma once

#include <ostream>
#include <span>
#include <string>

#include "xyzt/analysis.hpp"

// Deterministic serialization of sweep output. Numbers are written in
// locale-independent scientific notation with 17 significant digits; lines
// end with LF.

namespace xyzt {

struct OutputRow {
    double t, p, chi, gamma, Jx, Jy, Jz;
    Route route;
    double C, IC, F, F_A, F_B, purity, upper_bound, residual;
};

OutputRow to_output_row(const SweepRow& row);

/// exactly "t,p,chi,gamma,Jx,Jy,Jz,route,C,IC,F,F_A,F_B,purity,upper_bound,residual"
std::string csv_header();

/// 17 significant digits, scientific, via std::to_chars
std::string format_sci(double value);

/// shortest round-trip decimal, for filenames and config echoes
std::string format_compact(double value);

std::string to_csv_line(const OutputRow& row);

void write_csv(std::ostream& os, std::span<const OutputRow> rows);

} // namespace xyzt
