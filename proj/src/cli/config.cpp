#include "arithdyn/cli/config.hpp"

#include <fstream>
#include <sstream>

#include "arithdyn/parser.hpp"

namespace arithdyn::cli {

using nlohmann::json;

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    throw ConfigError("unknown format '" + s + "' (expected csv or json)");
}

std::string to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

json ExperimentConfig::to_json() const {
    json j;
    j["name"] = name;
    j["morphism"] = morphism;
    if (conjugator) j["conjugator"] = *conjugator;
    if (!variables.empty()) j["variables"] = variables;
    j["point"] = point;
    if (!subscheme.empty()) j["subscheme"] = subscheme;
    if (target) j["target"] = *target;
    j["places"] = places;
    j["n_max"] = n_max;
    j["coordinate"] = coordinate;
    j["budgets"] = {{"m_max", budgets.m_max}, {"bits", budgets.bits}, {"degree", budgets.degree}, {"cycle", budgets.cycle}};
    j["output"] = {{"path", output_path}, {"format", cli::to_string(format)}, {"exact_coords", exact_coords}};
    return j;
}

namespace {

std::string scalar_text(const json& v, const std::string& field) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw ConfigError("field '" + field + "' must hold strings or integers");
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    ExperimentConfig c;
    c.name = get_or<std::string>(j, "name", "");
    if (!j.contains("morphism")) throw ConfigError("missing field 'morphism'");
    c.morphism = get_or<std::string>(j, "morphism", "");
    if (j.contains("conjugator")) {
        const json& m = j.at("conjugator");
        if (!m.is_array()) throw ConfigError("field 'conjugator' must be a matrix");
        std::vector<std::vector<std::string>> rows;
        for (const auto& row : m) {
            if (!row.is_array()) throw ConfigError("field 'conjugator' must be a matrix");
            std::vector<std::string> r;
            for (const auto& v : row) r.push_back(scalar_text(v, "conjugator"));
            rows.push_back(std::move(r));
        }
        c.conjugator = std::move(rows);
    }
    c.variables = get_or<std::vector<std::string>>(j, "variables", {});
    c.point = get_or<std::string>(j, "point", "");
    c.subscheme = get_or<std::vector<std::string>>(j, "subscheme", {});
    if (j.contains("target")) c.target = get_or<std::string>(j, "target", "");
    if (j.contains("places")) {
        const json& p = j.at("places");
        if (!p.is_array()) throw ConfigError("field 'places' must be a list");
        c.places.clear();
        for (const auto& v : p) c.places.push_back(scalar_text(v, "places"));
    }
    c.n_max = get_or<std::size_t>(j, "n_max", c.n_max);
    c.coordinate = get_or<std::size_t>(j, "coordinate", c.coordinate);
    if (j.contains("budgets")) {
        const json& b = j.at("budgets");
        c.budgets.m_max = get_or<unsigned>(b, "m_max", c.budgets.m_max);
        c.budgets.bits = get_or<std::size_t>(b, "bits", c.budgets.bits);
        c.budgets.degree = get_or<unsigned long>(b, "degree", c.budgets.degree);
        c.budgets.cycle = get_or<std::size_t>(b, "cycle", c.budgets.cycle);
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        c.output_path = get_or<std::string>(o, "path", "");
        c.format = parse_format(get_or<std::string>(o, "format", "csv"));
        c.exact_coords = get_or<bool>(o, "exact_coords", false);
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
    }
    return ExperimentConfig::from_json(j);
}

namespace {

template <class F>
auto in_field(const char* field, F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const ParseError& e) {
        throw ConfigError(std::string("field '") + field + "': " + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(std::string("field '") + field + "': " + e.what());
    }
}

} // namespace

Experiment resolve(const ExperimentConfig& c) {
    Morphism g = in_field("morphism", [&] { return parse_morphism(c.morphism, c.variables); });
    if (c.conjugator) {
        g = in_field("conjugator", [&] {
            RatMatrix m;
            for (const auto& row : *c.conjugator) {
                std::vector<BigRat> r;
                for (const auto& v : row) r.push_back(parse_rational(v));
                m.push_back(std::move(r));
            }
            return conjugate(g, LinearAut(std::move(m)));
        });
    }
    std::vector<std::string> vars = c.variables.size() == g.nvars() ? c.variables : default_variable_names(g.nvars());
    Experiment e{std::move(g), std::nullopt, std::nullopt, std::nullopt, {}, vars};
    auto check_dim = [&](const ProjPoint& p, const char* field) {
        if (p.size() != e.f.nvars())
            throw ConfigError(std::string("field '") + field + "': point " + p.to_string() +
                              " does not match the morphism's dimension");
    };
    if (!c.point.empty()) {
        e.point = in_field("point", [&] { return parse_point(c.point); });
        check_dim(*e.point, "point");
    }
    if (c.target) {
        e.target = in_field("target", [&] { return parse_point(*c.target); });
        check_dim(*e.target, "target");
    }
    if (!c.subscheme.empty()) {
        e.subscheme = in_field("subscheme", [&] {
            std::vector<DivisorData> gens;
            for (const auto& text : c.subscheme) {
                HomogeneousForm form = parse_form(text, vars);
                if (form.nvars() != e.f.nvars()) throw DomainError("generator arity mismatch");
                gens.emplace_back(form);
            }
            return SubschemeData(std::move(gens));
        });
    }
    e.places = in_field("places", [&] {
        std::vector<Place> places;
        for (const auto& p : c.places) places.push_back(Place::parse(p));
        return places;
    });
    return e;
}

} // namespace arithdyn::cli
