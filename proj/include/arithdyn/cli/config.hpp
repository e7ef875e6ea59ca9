#pragma once

// One experiment per JSON file:
//
// {
//   "name": "table",
//   "morphism": "(X^3 : Y^3 : Z^3)",
//   "conjugator": [[1,1,1],[2,1,1],[1,-1,1]],   // optional, f = s^-1 o g o s
//   "variables": ["X","Y","Z"],                 // optional
//   "point": "(2 : 3 : -4)",
//   "subscheme": ["X - Z", "Y - Z"],            // optional generators of Y
//   "target": "(0 : 0 : 1)",                    // optional point y for distances
//   "places": ["inf", "2"],
//   "n_max": 6,
//   "coordinate": 0,
//   "budgets": {"m_max": 64, "bits": 16777216, "degree": 4096, "cycle": 1000},
//   "output": {"path": "out.csv", "format": "csv", "exact_coords": false}
// }

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arithdyn/dynamics.hpp"
#include "arithdyn/errors.hpp"
#include "arithdyn/geometry.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/multiplicity.hpp"

namespace arithdyn::cli {

class ConfigError : public Error {
public:
    using Error::Error;
};

struct Budgets {
    unsigned m_max = kDefaultTruncationLimit;
    std::size_t bits = kDefaultBitBudget;
    unsigned long degree = 4096;
    std::size_t cycle = 1000;

    bool operator==(const Budgets&) const = default;
};

enum class Format { Csv, Json };

Format parse_format(const std::string& s);
std::string to_string(Format f);

struct ExperimentConfig {
    std::string name;
    std::string morphism;
    // Row-major rational entries, kept as text.
    std::optional<std::vector<std::vector<std::string>>> conjugator;
    std::vector<std::string> variables;
    std::string point;
    std::vector<std::string> subscheme;
    std::optional<std::string> target;
    std::vector<std::string> places{"inf"};
    std::size_t n_max = 10;
    std::size_t coordinate = 0;
    Budgets budgets;
    std::string output_path;
    Format format = Format::Csv;
    bool exact_coords = false;

    bool operator==(const ExperimentConfig&) const = default;

    nlohmann::json to_json() const;
    // Throws ConfigError on missing or mistyped fields.
    static ExperimentConfig from_json(const nlohmann::json& j);
};

ExperimentConfig load_config(const std::filesystem::path& path);

// Domain objects built from a config.
struct Experiment {
    Morphism f;
    std::optional<ProjPoint> point;
    std::optional<SubschemeData> subscheme;
    std::optional<ProjPoint> target;
    std::vector<Place> places;
    std::vector<std::string> variables;
};

// Throws ConfigError naming the offending field (parse errors keep their
// position in the message).
Experiment resolve(const ExperimentConfig& config);

} // namespace arithdyn::cli
