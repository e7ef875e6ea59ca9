#pragma once

// Reproduction of the reference orbit table for f = s^-1 o g o s with
// g = (X^3 : Y^3 : Z^3), s = (X+Y+Z : 2X+Y+Z : X-Y+Z), x = (2 : 3 : -4):
// log|a(n)|, log|b(n)|, log|c(n)| for n = 1..6.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "arithdyn/cli/config.hpp"

namespace arithdyn::cli {

using ExpectedTable = std::vector<std::array<double, 3>>;

const ExpectedTable& reference_table();
ExperimentConfig table_config();

struct TableCell {
    std::size_t n;
    std::size_t column;
    double expected;
    double computed;
    bool ok;
};

struct TableReport {
    bool structural_ok = false; // f(2 : 3 : -4) == (26 : 63 : -88)
    std::string first_image;
    std::vector<TableCell> cells;
    // log|coords| for rows past the expected table.
    std::vector<std::array<double, 3>> extra_rows;
    std::size_t passed = 0;
    double seconds = 0.0;

    bool pass() const { return structural_ok && passed == cells.size(); }
};

TableReport reproduce_table(const ExpectedTable& expected, std::size_t n_max = 6, double tolerance = 1e-9);
std::string render_table_report(const TableReport& report, std::size_t expected_rows);

} // namespace arithdyn::cli
