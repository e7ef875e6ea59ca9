#include "arithdyn/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "arithdyn/cli/table.hpp"
#include "arithdyn/dynamics.hpp"
#include "arithdyn/multiplicity.hpp"

namespace arithdyn::cli {

using nlohmann::json;

std::string format_double(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

namespace {

std::string cell_text(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return "nan"; }
        std::string operator()(double d) const { return format_double(d); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    };
    return std::visit(Visitor{}, c);
}

json cell_json(const Cell& c) {
    struct Visitor {
        json operator()(std::monostate) const { return nullptr; }
        json operator()(double d) const { return std::isfinite(d) ? json(d) : json(nullptr); }
        json operator()(long long v) const { return v; }
        json operator()(const std::string& s) const { return s; }
        json operator()(bool b) const { return b; }
    };
    return std::visit(Visitor{}, c);
}

Cell opt(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::monostate{}); }

Cell count(std::size_t n) { return Cell(static_cast<long long>(n)); }

const ProjPoint& require_point(const Experiment& e, const char* command) {
    if (!e.point) throw ConfigError(std::string(command) + " needs a 'point'");
    return *e.point;
}

void note_stop(CommandOutput& out, const Orbit& orbit) {
    if (orbit.complete()) return;
    out.exit_code = kExitRuntime;
    out.status = to_string(orbit.stop);
    out.message = orbit.message;
    out.extra["stop_n"] = orbit.stop_n;
}

} // namespace

std::string render_csv(const ResultTable& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
        out << "\n";
    }
    return out.str();
}

json render_json(const std::string& command, const ExperimentConfig& config, const CommandOutput& out) {
    json j = out.extra;
    j["command"] = command;
    j["config"] = config.to_json();
    j["status"] = out.status;
    if (!out.message.empty()) j["message"] = out.message;
    j["columns"] = out.table.columns;
    json rows = json::array();
    for (const auto& row : out.table.rows) {
        json r = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) r[out.table.columns[i]] = cell_json(row[i]);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

CommandOutput cmd_orbit(const ExperimentConfig& config) {
    const Experiment e = resolve(config);
    const ProjPoint& x = require_point(e, "orbit");
    std::vector<Observer> observers;
    if (e.target) {
        observers.push_back(distance_observer(*e.target, e.places));
    } else if (e.subscheme) {
        observers.push_back(local_height_observer(*e.subscheme, e.places));
    }
    const Orbit orbit = iterate_orbit(e.f, x, config.n_max, observers, config.budgets.bits);
    const AlphaEstimates alpha = alpha_estimates(orbit.records);

    CommandOutput out;
    auto& cols = out.table.columns;
    cols = {"n", "h"};
    if (!observers.empty()) {
        for (const auto& v : e.places) cols.push_back(v.column_name());
    }
    for (std::size_t i = 0; i < e.f.nvars(); ++i) cols.push_back("log_abs_x" + std::to_string(i));
    cols.push_back("alpha_root");
    cols.push_back("alpha_ratio");
    if (config.exact_coords) {
        for (std::size_t i = 0; i < e.f.nvars(); ++i) cols.push_back("x" + std::to_string(i));
    }
    for (std::size_t k = 0; k < orbit.records.size(); ++k) {
        const auto& r = orbit.records[k];
        std::vector<Cell> row{count(r.n), r.h};
        if (!observers.empty()) {
            for (const auto& v : e.places) {
                auto it = r.lambda.find(v);
                row.push_back(it == r.lambda.end() ? Cell(std::monostate{}) : Cell(it->second));
            }
        }
        for (const auto& a : r.point.coords()) row.push_back(a == 0 ? Cell(std::monostate{}) : Cell(log_abs(a)));
        row.push_back(r.n >= 1 ? opt(alpha.root[r.n - 1].value) : Cell(std::monostate{}));
        row.push_back(k < alpha.ratio.size() ? opt(alpha.ratio[k].value) : Cell(std::monostate{}));
        if (config.exact_coords) {
            for (const auto& a : r.point.coords()) row.push_back(arithdyn::to_string(a));
        }
        out.table.rows.push_back(std::move(row));
    }
    out.extra["morphism"] = e.f.to_string(e.variables);
    // Finite-window evidence only: genericity cannot be decided from finitely many iterates.
    {
        std::set<ProjPoint> seen;
        bool repeated = false;
        std::size_t on_hyperplanes = 0, on_subscheme = 0;
        for (const auto& r : orbit.records) {
            repeated = !seen.insert(r.point).second || repeated;
            const auto& c = r.point.coords();
            on_hyperplanes += std::any_of(c.begin(), c.end(), [](const BigInt& a) { return a == 0; });
            if (e.subscheme) on_subscheme += e.subscheme->contains(r.point);
        }
        json ev = {{"window", orbit.records.size()},
                   {"repeated_point", repeated},
                   {"on_coordinate_hyperplanes", on_hyperplanes},
                   {"label", "heuristic"}};
        if (e.subscheme) ev["on_subscheme"] = on_subscheme;
        out.extra["orbit_evidence"] = std::move(ev);
    }
    note_stop(out, orbit);
    return out;
}

CommandOutput cmd_ratio(const ExperimentConfig& config) {
    const Experiment e = resolve(config);
    const ProjPoint& x = require_point(e, "ratio");
    if (!e.target && !e.subscheme) throw ConfigError("ratio needs a 'target' point or a 'subscheme'");
    if (e.places.empty()) throw ConfigError("ratio needs a nonempty 'places' list");
    const Orbit orbit = iterate_orbit(e.f, x, config.n_max, {}, config.budgets.bits);
    const auto rows = e.target ? distance_ratio_sequence(orbit.records, *e.target, e.places)
                               : ratio_sequence(orbit.records, *e.subscheme, e.places);
    CommandOutput out;
    out.table.columns = {"n", "h"};
    for (const auto& v : e.places) out.table.columns.push_back(v.column_name());
    out.table.columns.push_back("ratio");
    out.table.columns.push_back("flag");
    for (const auto& r : rows) {
        std::vector<Cell> row{count(r.n), r.h};
        for (const auto& v : e.places) {
            auto it = r.lambda.find(v);
            row.push_back(it == r.lambda.end() ? Cell(std::monostate{}) : Cell(it->second));
        }
        row.push_back(opt(r.ratio));
        row.push_back(r.flag);
        out.table.rows.push_back(std::move(row));
    }
    note_stop(out, orbit);
    return out;
}

CommandOutput cmd_lang_siegel(const ExperimentConfig& config) {
    const Experiment e = resolve(config);
    const ProjPoint& x = require_point(e, "lang-siegel");
    if (config.coordinate >= e.f.nvars()) throw ConfigError("field 'coordinate' is out of range");
    const Orbit orbit = iterate_orbit(e.f, x, config.n_max, {}, config.budgets.bits);
    const Series s = lang_siegel_sequence(orbit.records, config.coordinate);
    CommandOutput out;
    const std::string col = "log_abs_x" + std::to_string(config.coordinate);
    out.table.columns = {"n", "h", col, "ratio", "flag"};
    for (std::size_t k = 0; k < s.size(); ++k) {
        const auto& r = orbit.records[k];
        const BigInt& a = r.point[config.coordinate];
        out.table.rows.push_back({count(s[k].n), r.h, a == 0 ? Cell(std::monostate{}) : Cell(log_abs(a)),
                                  opt(s[k].value), s[k].flag});
    }
    note_stop(out, orbit);
    return out;
}

CommandOutput cmd_gcd(const ExperimentConfig& config) {
    const Experiment e = resolve(config);
    const ProjPoint& x = require_point(e, "gcd");
    if (!e.subscheme) throw ConfigError("gcd needs a 'subscheme'");
    const Orbit orbit = iterate_orbit(e.f, x, config.n_max, {}, config.budgets.bits);
    CommandOutput out;
    out.table.columns = {"n", "gcd", "log_gcd", "flag"};
    for (const auto& r : gcd_height_sequence(orbit.records, *e.subscheme)) {
        out.table.rows.push_back({count(r.n), r.gcd ? Cell(arithdyn::to_string(*r.gcd)) : Cell(std::monostate{}),
                                  opt(r.log_gcd), r.flag});
    }
    note_stop(out, orbit);
    return out;
}

CommandOutput cmd_mult(const ExperimentConfig& config) {
    const Experiment e = resolve(config);
    const ProjPoint& x = require_point(e, "mult");
    const MultiplicityReport report = e_f_report(e.f, x, config.budgets.m_max);
    const bool ramified = is_ramified(e.f, x);
    CommandOutput out;
    out.table.columns = {"point", "value", "truncation_level", "stabilized", "ramified"};
    out.table.rows.push_back({x.to_string(), count(report.value), count(report.truncation_level), report.stabilized,
                              ramified});
    out.extra["point"] = x.to_string();
    out.extra["image"] = e.f.apply(x).to_string();
    out.extra["value"] = report.value;
    out.extra["truncation_level"] = report.truncation_level;
    out.extra["stabilized"] = report.stabilized;
    out.extra["ramified"] = ramified;
    if (e.f.dimension() == 1) out.extra["p1_vanishing_order"] = e_f_p1(e.f, x);

    if (auto cycle = detect_cycle(e.f, x, config.budgets.cycle); cycle && cycle->tail_length == 0) {
        const PeriodicMultiplicity p = e_plus_periodic(e.f, x, config.budgets.cycle, config.budgets.m_max);
        out.extra["e_plus"] = {{"cycle_length", p.cycle.size()},
                               {"product", arithdyn::to_string(p.product)},
                               {"multiplicities", p.multiplicities},
                               {"value", p.value}};
    }
    // Forward averages, limited to iterates inside the coordinate budget.
    const Orbit orbit = iterate_orbit(e.f, x, config.n_max, {}, config.budgets.bits);
    const unsigned n_forward = static_cast<unsigned>(orbit.records.size() > 1 ? orbit.records.size() - 1 : 0);
    json forward = json::array();
    for (const auto& t : e_forward_sequence(e.f, x, n_forward, config.budgets.m_max))
        forward.push_back({{"n", t.n}, {"multiplicity", arithdyn::to_string(t.multiplicity)}, {"value", t.value}});
    out.extra["forward"] = std::move(forward);
    if (!orbit.complete()) out.extra["forward_truncated"] = orbit.message;
    return out;
}

CommandOutput cmd_eminus(const ExperimentConfig& config) {
    const Experiment e = resolve(config);
    const ProjPoint& y = require_point(e, "eminus");
    if (e.f.dimension() != 1) throw ConfigError("eminus is only available for maps of P^1");
    CommandOutput out;
    out.table.columns = {"n", "max_multiplicity", "value"};
    try {
        for (const auto& t : e_minus_p1(e.f, y, static_cast<unsigned>(config.n_max), config.budgets.degree))
            out.table.rows.push_back({count(t.n), count(t.max_multiplicity), t.value});
    } catch (const BudgetExceeded& ex) {
        // Keep the rows that fit; e_minus_p1 is all-or-nothing, so recompute up to the budget.
        unsigned fit = 0;
        for (unsigned long d = e.f.degree(); d <= config.budgets.degree; d *= e.f.degree()) {
            ++fit;
            if (e.f.degree() == 1) break;
        }
        for (const auto& t : e_minus_p1(e.f, y, std::min<unsigned>(fit, static_cast<unsigned>(config.n_max)),
                                        config.budgets.degree))
            out.table.rows.push_back({count(t.n), count(t.max_multiplicity), t.value});
        out.exit_code = kExitRuntime;
        out.status = "budget-exceeded";
        out.message = ex.what();
    }
    return out;
}

CommandOutput run_command(const std::string& command, const ExperimentConfig& config) {
    auto failed = [](int code, const std::string& status, const std::string& msg) {
        CommandOutput o;
        o.exit_code = code;
        o.status = status;
        o.message = msg;
        return o;
    };
    try {
        if (command == "orbit") return cmd_orbit(config);
        if (command == "ratio") return cmd_ratio(config);
        if (command == "lang-siegel") return cmd_lang_siegel(config);
        if (command == "gcd") return cmd_gcd(config);
        if (command == "mult") return cmd_mult(config);
        if (command == "eminus") return cmd_eminus(config);
        return failed(kExitConfig, "config-error", "unknown command '" + command + "'");
    } catch (const ConfigError& ex) {
        return failed(kExitConfig, "config-error", ex.what());
    } catch (const ParseError& ex) {
        return failed(kExitConfig, "config-error", ex.what());
    } catch (const RuntimeGuard& ex) {
        return failed(kExitRuntime, "runtime-guard", ex.what());
    } catch (const DomainError& ex) {
        return failed(kExitConfig, "config-error", ex.what());
    }
}

namespace {

struct Options {
    std::string config;
    std::string out;
    std::string format;
    long long n_max = -1;
    bool exact_coords = false;
};

std::string render(const std::string& command, const ExperimentConfig& config, const CommandOutput& out) {
    if (config.format == Format::Json) return render_json(command, config, out).dump(2) + "\n";
    return render_csv(out.table);
}

void apply_overrides(ExperimentConfig& c, const Options& o) {
    if (!o.format.empty()) c.format = parse_format(o.format);
    if (o.n_max >= 0) c.n_max = static_cast<std::size_t>(o.n_max);
    if (o.exact_coords) c.exact_coords = true;
}

// Runs one config file; writes to `out_path` if nonempty, else to `out`.
int run_one(const std::string& command, const std::filesystem::path& path, const Options& o,
            const std::string& out_path, std::ostream& out, std::ostream& err) {
    ExperimentConfig config;
    try {
        config = load_config(path);
        apply_overrides(config, o);
    } catch (const Error& ex) {
        err << path.string() << ": " << ex.what() << "\n";
        return kExitConfig;
    }
    const CommandOutput result = run_command(command, config);
    if (!result.message.empty()) err << path.string() << ": " << result.status << ": " << result.message << "\n";
    if (result.status == "config-error" || result.status == "runtime-guard") return result.exit_code;
    const std::string text = render(command, config, result);
    const std::string target = !out_path.empty() ? out_path : config.output_path;
    if (target.empty()) {
        out << text;
    } else {
        std::ofstream file(target);
        if (!file) {
            err << "cannot write " << target << "\n";
            return kExitConfig;
        }
        file << text;
    }
    return result.exit_code;
}

int run_batch(const std::string& command, const std::filesystem::path& dir, const Options& o, std::ostream& err) {
    if (o.out.empty()) {
        err << "batch mode needs --out DIR\n";
        return kExitConfig;
    }
    std::filesystem::create_directories(o.out);
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<int> codes(files.size(), 0);
    std::vector<std::string> logs(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            std::ostringstream sink;
            std::ostringstream log;
            ExperimentConfig probe;
            std::string ext = ".csv";
            try {
                probe = load_config(files[i]);
                apply_overrides(probe, o);
                ext = probe.format == Format::Json ? ".json" : ".csv";
            } catch (const Error&) {
            }
            const auto out_path = (std::filesystem::path(o.out) / files[i].stem()).string() + ext;
            codes[i] = run_one(command, files[i], o, out_path, sink, log);
            logs[i] = log.str();
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                               static_cast<unsigned>(files.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    int worst = kExitOk;
    for (std::size_t i = 0; i < files.size(); ++i) {
        err << logs[i];
        worst = std::max(worst, codes[i]);
    }
    return worst;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Orbits, heights and multiplicities for endomorphisms of projective space over Q", "arithdyn"};
    app.require_subcommand(1);
    Options o;
    std::size_t table_rows = 6;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"orbit", "exact orbit with heights and arithmetic-degree estimates"},
        {"ratio", "sum of local heights (or distances) over S divided by the height"},
        {"lang-siegel", "log|a_i(n)| / log max_j |a_j(n)|"},
        {"gcd", "log gcd of subscheme generator values along the orbit"},
        {"mult", "local multiplicity e_f at the point"},
        {"eminus", "backward multiplicity averages on P^1"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", o.config, "experiment JSON file, or a directory for batch mode")->required();
        sub->add_option("--out", o.out, "output file (directory in batch mode)");
        sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--n-max", o.n_max, "number of iterates");
        sub->add_flag("--exact-coords", o.exact_coords, "emit exact coordinates");
    }
    CLI::App* table = app.add_subcommand("reproduce-table", "recompute the 6-row reference orbit table");
    table->add_option("--n-max", table_rows, "rows to compute (comparison covers the first 6)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o_msg, e_msg;
        const int code = app.exit(e, o_msg, e_msg);
        out << o_msg.str();
        err << e_msg.str();
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (table->parsed()) {
        const TableReport report = reproduce_table(reference_table(), table_rows);
        out << render_table_report(report, reference_table().size());
        return report.pass() ? kExitOk : kExitMismatch;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    std::error_code ec;
    if (std::filesystem::is_directory(o.config, ec)) return run_batch(command, o.config, o, err);
    return run_one(command, o.config, o, o.out, out, err);
}

} // namespace arithdyn::cli
