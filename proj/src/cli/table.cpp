#include "arithdyn/cli/table.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "arithdyn/cli/commands.hpp"
#include "arithdyn/dynamics.hpp"

namespace arithdyn::cli {

const ExpectedTable& reference_table() {
    static const ExpectedTable table{
        {3.25809653802148, 4.14313472639153, 4.47733681447821},
        {9.88745979145893, 13.7917945433468, 13.8117474864837},
        {29.6625317940388, 42.7616764551608, 42.7616785021394},
        {88.9875953821169, 129.671323726602, 129.671323726602},
        {266.962786146351, 390.400265540926, 390.400265540926},
        {800.888358439052, 1172.58709098390, 1172.58709098390},
    };
    return table;
}

ExperimentConfig table_config() {
    ExperimentConfig c;
    c.name = "conjugated-cube-map";
    c.morphism = "(X^3 : Y^3 : Z^3)";
    c.conjugator = std::vector<std::vector<std::string>>{{"1", "1", "1"}, {"2", "1", "1"}, {"1", "-1", "1"}};
    c.point = "(2 : 3 : -4)";
    c.n_max = 6;
    return c;
}

TableReport reproduce_table(const ExpectedTable& expected, std::size_t n_max, double tolerance) {
    const auto start = std::chrono::steady_clock::now();
    TableReport report;
    const Experiment e = resolve(table_config());
    const std::size_t rows = std::max(n_max, expected.size());
    const Orbit orbit = iterate_orbit(e.f, *e.point, rows);
    report.first_image = orbit.records.at(1).point.to_string();
    report.structural_ok = orbit.records.at(1).point == ProjPoint::normalize({26, 63, -88});
    for (std::size_t n = 1; n < orbit.records.size(); ++n) {
        const auto& p = orbit.records[n].point;
        std::array<double, 3> logs{};
        for (std::size_t c = 0; c < 3; ++c) logs[c] = p[c] == 0 ? std::nan("") : log_abs(p[c]);
        if (n <= expected.size()) {
            for (std::size_t c = 0; c < 3; ++c) {
                const double want = expected[n - 1][c];
                const bool ok = std::fabs(logs[c] - want) <= tolerance;
                report.cells.push_back({n, c, want, logs[c], ok});
                if (ok) ++report.passed;
            }
        } else if (n <= n_max) {
            report.extra_rows.push_back(logs);
        }
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string render_table_report(const TableReport& report, std::size_t expected_rows) {
    static const char* names[3] = {"log|a(n)|", "log|b(n)|", "log|c(n)|"};
    std::ostringstream out;
    out << "f(2 : 3 : -4) = " << report.first_image << (report.structural_ok ? "  [ok]" : "  [MISMATCH, want (26 : 63 : -88)]")
        << "\n";
    char line[200];
    std::snprintf(line, sizeof line, "%-3s %-10s %-20s %-20s %-10s %s\n", "n", "column", "expected", "computed", "diff",
                  "status");
    out << line;
    for (const auto& c : report.cells) {
        std::snprintf(line, sizeof line, "%-3zu %-10s %-20s %-20s %-10.2e %s\n", c.n, names[c.column],
                      format_double(c.expected).c_str(), format_double(c.computed).c_str(),
                      std::fabs(c.computed - c.expected), c.ok ? "ok" : "MISMATCH");
        out << line;
    }
    for (std::size_t k = 0; k < report.extra_rows.size(); ++k) {
        const auto& r = report.extra_rows[k];
        out << expected_rows + k + 1 << "   (extra) " << format_double(r[0]) << " " << format_double(r[1]) << " "
            << format_double(r[2]) << "\n";
    }
    out << (report.pass() ? "PASS " : "FAIL ") << report.passed << "/" << report.cells.size() << " cells ("
        << format_double(report.seconds) << " s)\n";
    return out.str();
}

} // namespace arithdyn::cli
