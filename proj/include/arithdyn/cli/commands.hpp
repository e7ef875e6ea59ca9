#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "arithdyn/cli/config.hpp"

namespace arithdyn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

using Cell = std::variant<std::monostate, double, long long, std::string, bool>;

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct CommandOutput {
    int exit_code = kExitOk;
    std::string status = "completed";
    std::string message;
    ResultTable table;
    // Extra top-level members of the JSON rendering.
    nlohmann::json extra = nlohmann::json::object();
};

// 15 significant digits; "nan" for undefined values.
std::string format_double(double v);

std::string render_csv(const ResultTable& table);
nlohmann::json render_json(const std::string& command, const ExperimentConfig& config, const CommandOutput& out);

CommandOutput cmd_orbit(const ExperimentConfig& config);
CommandOutput cmd_ratio(const ExperimentConfig& config);
CommandOutput cmd_lang_siegel(const ExperimentConfig& config);
CommandOutput cmd_gcd(const ExperimentConfig& config);
CommandOutput cmd_mult(const ExperimentConfig& config);
CommandOutput cmd_eminus(const ExperimentConfig& config);

// Dispatches by subcommand name and maps exceptions to exit codes:
// config/parse problems -> 2, runtime guards -> 3.
CommandOutput run_command(const std::string& command, const ExperimentConfig& config);

// Full command line (argv[0] is the program name).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace arithdyn::cli
