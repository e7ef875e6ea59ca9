#include <doctest.h>

#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "arithdyn/cli/commands.hpp"
#include "arithdyn/cli/table.hpp"
#include "support.hpp"

using namespace arithdyn;
using namespace arithdyn::cli;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

// Per-process scratch root, removed at exit.
struct ScratchRoot {
    fs::path path = fs::temp_directory_path() / ("arithdyn_cli_" + std::to_string(::getpid()));
    ~ScratchRoot() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

fs::path scratch_dir() {
    static ScratchRoot root;
    static std::atomic<int> counter{0};
    fs::path p = root.path / std::to_string(counter++);
    fs::create_directories(p);
    return p;
}

fs::path write_config(const fs::path& dir, const std::string& name, const json& j) {
    fs::path p = dir / (name + ".json");
    std::ofstream(p) << j.dump(2);
    return p;
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "arithdyn");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json table_json() {
    return {{"morphism", "(X^3 : Y^3 : Z^3)"},
            {"conjugator", {{1, 1, 1}, {2, 1, 1}, {1, -1, 1}}},
            {"point", "(2 : 3 : -4)"},
            {"n_max", 6}};
}

} // namespace

TEST_CASE("orbit command reproduces the table rows") {
    const auto dir = scratch_dir();
    const Run r = run({"orbit", "--config", write_config(dir, "t", table_json()).string()});
    REQUIRE(r.code == kExitOk);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0] == std::vector<std::string>{"n", "h", "log_abs_x0", "log_abs_x1", "log_abs_x2", "alpha_root",
                                              "alpha_ratio"});
    const auto& expected = reference_table();
    for (std::size_t n = 1; n <= 6; ++n)
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(std::stod(rows[n + 1][2 + i]) - expected[n - 1][i]) < 1e-9);
    CHECK(rows[2][2] == "3.25809653802148");
}

TEST_CASE("golden orbit CSV") {
    const auto dir = scratch_dir();
    const json j = {{"morphism", "(X^2 : Y^2 : Z^2)"},
                    {"point", "(1 : 2 : 3)"},
                    {"subscheme", {"X - Z", "Y"}},
                    {"places", {"inf", "2", "3"}},
                    {"n_max", 4},
                    {"output", {{"exact_coords", true}}}};
    const Run a = run({"orbit", "--config", write_config(dir, "g", j).string()});
    const Run b = run({"orbit", "--config", (dir / "g.json").string()});
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out == slurp(fs::path(ARITHDYN_TEST_DATA) / "golden" / "orbit_monomial.csv"));
}

TEST_CASE("golden column orders of the other commands") {
    const auto dir = scratch_dir();
    json j = {{"morphism", "(2*X : 3*Y : Z)"}, {"point", "(1 : 1 : 1)"}, {"subscheme", {"X - Z", "Y - Z"}},
              {"places", {"inf", "5"}}, {"n_max", 3}, {"target", "(0 : 0 : 1)"}};
    const auto path = write_config(dir, "c", j).string();
    CHECK(parse_csv(run({"ratio", "--config", path}).out)[0] ==
          std::vector<std::string>{"n", "h", "lambda_inf", "lambda_p5", "ratio", "flag"});
    CHECK(parse_csv(run({"lang-siegel", "--config", path}).out)[0] ==
          std::vector<std::string>{"n", "h", "log_abs_x0", "ratio", "flag"});
    CHECK(parse_csv(run({"gcd", "--config", path}).out)[0] ==
          std::vector<std::string>{"n", "gcd", "log_gcd", "flag"});
    CHECK(run({"gcd", "--config", path}).out == "n,gcd,log_gcd,flag\n0,nan,nan,on Y\n1,1,0,\n2,1,0,\n3,1,0,\n");
    CHECK(parse_csv(run({"mult", "--config", path}).out)[0] ==
          std::vector<std::string>{"point", "value", "truncation_level", "stabilized", "ramified"});
    const auto orbit_header = parse_csv(run({"orbit", "--config", path, "--exact-coords"}).out)[0];
    CHECK(orbit_header == std::vector<std::string>{"n", "h", "lambda_inf", "lambda_p5", "log_abs_x0", "log_abs_x1",
                                                   "log_abs_x2", "alpha_root", "alpha_ratio", "x0", "x1", "x2"});
}

TEST_CASE("mult command JSON") {
    const auto dir = scratch_dir();
    const json j = {{"morphism", "(X^3 : Y^3 + Y*Z^2 : Z^3)"}, {"point", "(0 : 0 : 1)"}, {"n_max", 4}};
    const Run r = run({"mult", "--config", write_config(dir, "m", j).string(), "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const json out = json::parse(r.out);
    CHECK(out["value"] == 3);
    CHECK(out["stabilized"] == true);
    CHECK(out["e_plus"]["value"].get<double>() == doctest::Approx(3.0));
    CHECK(out["forward"].size() == 4);
    CHECK(ExperimentConfig::from_json(out["config"]).morphism == "(X^3 : Y^3 + Y*Z^2 : Z^3)");
}

TEST_CASE("orbit JSON carries finite-window evidence") {
    const auto dir = scratch_dir();
    const json j = {{"morphism", "z^2 - 1"}, {"point", "0"}, {"n_max", 5}};
    const Run r = run({"orbit", "--config", write_config(dir, "ev", j).string(), "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const json ev = json::parse(r.out)["orbit_evidence"];
    CHECK(ev["label"] == "heuristic");
    CHECK(ev["repeated_point"] == true);
    CHECK(ev["window"] == 6);
    CHECK(ev["on_coordinate_hyperplanes"] == 3);
}

TEST_CASE("lang-siegel command converges") {
    const auto dir = scratch_dir();
    json j = table_json();
    j["n_max"] = 8;
    const Run r = run({"lang-siegel", "--config", write_config(dir, "ls", j).string()});
    REQUIRE(r.code == kExitOk);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 10);
    CHECK(std::abs(std::stod(rows.back()[3]) - std::log(3.0) / std::log(5.0)) < 0.01);
}

TEST_CASE("eminus command") {
    const auto dir = scratch_dir();
    const json j = {{"morphism", "z^2"}, {"point", "0"}, {"n_max", 6}};
    const Run r = run({"eminus", "--config", write_config(dir, "e", j).string()});
    REQUIRE(r.code == kExitOk);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 7);
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k][2] == "2");

    json big = j;
    big["n_max"] = 20;
    big["budgets"] = {{"degree", 64}};
    const Run b = run({"eminus", "--config", write_config(dir, "eb", big).string()});
    CHECK(b.code == kExitRuntime);
    CHECK(parse_csv(b.out).size() == 7);
}

TEST_CASE("exit codes") {
    const auto dir = scratch_dir();
    const Run bad = run({"orbit", "--config", write_config(dir, "bad", {{"morphism", "(X^2 : Y^2 +* Z^2 : Z^2)"},
                                                                           {"point", "(1 : 2 : 3)"}})
                                                   .string()});
    CHECK(bad.code == kExitConfig);
    CHECK(bad.err.find("position") != std::string::npos);
    CHECK(bad.err.find("morphism") != std::string::npos);

    const Run base = run({"orbit", "--config",
                          write_config(dir, "base", {{"morphism", "(X^2 : X*Y : X*Z)"}, {"point", "(0 : 1 : 1)"}})
                              .string()});
    CHECK(base.code == kExitRuntime);
    CHECK(base.err.find("n = 1") != std::string::npos);
    CHECK(parse_csv(base.out).size() == 2);

    const Run budget = run({"orbit", "--config",
                            write_config(dir, "budget", {{"morphism", "(X^2 : Y^2)"}, {"point", "(2 : 1)"},
                                                         {"n_max", 30}, {"budgets", {{"bits", 1000}}}})
                                .string()});
    CHECK(budget.code == kExitRuntime);
    CHECK(budget.err.find("budget") != std::string::npos);

    CHECK(run({"orbit", "--config", (dir / "missing.json").string()}).code == kExitConfig);
    std::ofstream(dir / "broken.json") << "{ not json";
    CHECK(run({"orbit", "--config", (dir / "broken.json").string()}).code == kExitConfig);
    CHECK(run({"ratio", "--config", write_config(dir, "nopt", {{"morphism", "(X : Y)"}}).string()}).code ==
          kExitConfig);
    CHECK(run({"ratio", "--config", write_config(dir, "notarget", {{"morphism", "(X : Y)"}, {"point", "1"}}).string()})
              .code == kExitConfig);
    CHECK(run({"orbit", "--config", write_config(dir, "dim", {{"morphism", "(X : Y)"}, {"point", "(1 : 2 : 3)"}})
                                        .string()})
              .code == kExitConfig);
    CHECK(run({"orbit", "--config", write_config(dir, "place", {{"morphism", "(X : Y)"}, {"point", "1"},
                                                                {"places", {"6"}}, {"target", "0"}})
                                        .string()})
              .code == kExitConfig);
    CHECK(run({"orbit"}).code == kExitConfig);
    CHECK(run({"orbit", "--config", "x.json", "--format", "xml"}).code == kExitConfig);
    CHECK(run({"frobnicate"}).code == kExitConfig);
    CHECK(run({}).code == kExitConfig);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("config JSON round trip") {
    ExperimentConfig c;
    c.name = "rt";
    c.morphism = "(X^3 : Y^3 : Z^3)";
    c.conjugator = std::vector<std::vector<std::string>>{{"1", "1", "1"}, {"2", "1/2", "1"}, {"1", "-1", "1"}};
    c.variables = {"X", "Y", "Z"};
    c.point = "(2 : 3 : -4)";
    c.subscheme = {"X - Z", "Y - Z"};
    c.target = "(0 : 0 : 1)";
    c.places = {"inf", "2", "5"};
    c.n_max = 7;
    c.coordinate = 2;
    c.budgets.m_max = 20;
    c.budgets.bits = 12345;
    c.budgets.degree = 99;
    c.budgets.cycle = 17;
    c.output_path = "out.json";
    c.format = Format::Json;
    c.exact_coords = true;
    CHECK(ExperimentConfig::from_json(c.to_json()) == c);
    CHECK(ExperimentConfig::from_json(json::parse(c.to_json().dump())) == c);
    const ExperimentConfig plain = ExperimentConfig::from_json({{"morphism", "z^2"}});
    CHECK(ExperimentConfig::from_json(plain.to_json()) == plain);
    CHECK(ExperimentConfig::from_json(table_config().to_json()) == table_config());

    // every config embedded in command output reparses to the config that produced it
    const auto dir = scratch_dir();
    const json j = {{"morphism", "(2*X : 3*Y : Z)"}, {"point", "(1 : 1 : 1)"}, {"subscheme", {"X - Z", "Y - Z"}},
                    {"n_max", 3}};
    const auto path = write_config(dir, "embed", j);
    const ExperimentConfig loaded = load_config(path);
    for (const char* cmd : {"orbit", "gcd", "lang-siegel", "mult"}) {
        const Run r = run({cmd, "--config", path.string(), "--format", "json"});
        REQUIRE(r.code == kExitOk);
        ExperimentConfig expect = loaded;
        expect.format = Format::Json;
        CHECK(ExperimentConfig::from_json(json::parse(r.out)["config"]) == expect);
    }
    CHECK_THROWS_AS(ExperimentConfig::from_json({{"point", "1"}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json({{"morphism", 5}}), ConfigError);
}

TEST_CASE("output paths and batch mode") {
    const auto dir = scratch_dir();
    const auto out_file = dir / "single.csv";
    CHECK(run({"orbit", "--config", write_config(dir, "one", table_json()).string(), "--out", out_file.string()})
              .code == kExitOk);
    CHECK(parse_csv(slurp(out_file)).size() == 8);

    const auto batch = dir / "batch";
    fs::create_directories(batch);
    json a = table_json();
    json b = {{"morphism", "(X^2 : Y^2 : Z^2)"}, {"point", "(1 : 2 : 3)"}, {"n_max", 3}, {"output", {{"format", "json"}}}};
    write_config(batch, "a", a);
    write_config(batch, "b", b);
    const auto out_dir = dir / "results";
    const Run r = run({"orbit", "--config", batch.string(), "--out", out_dir.string()});
    CHECK(r.code == kExitOk);
    CHECK(parse_csv(slurp(out_dir / "a.csv")).size() == 8);
    CHECK(json::parse(slurp(out_dir / "b.json"))["rows"].size() == 4);
    CHECK(run({"orbit", "--config", batch.string()}).code == kExitConfig);

    // one failing config makes the batch fail without stopping the others
    write_config(batch, "c", {{"morphism", "(X^2 : X*Y : X*Z)"}, {"point", "(0 : 1 : 1)"}});
    const Run mixed = run({"orbit", "--config", batch.string(), "--out", out_dir.string()});
    CHECK(mixed.code == kExitRuntime);
    CHECK(fs::exists(out_dir / "a.csv"));
}

TEST_CASE("reproduce-table") {
    const Run r = run({"reproduce-table"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("PASS 18/18 cells") != std::string::npos);
    CHECK(r.out.find("(26 : 63 : -88)  [ok]") != std::string::npos);

    const Run extended = run({"reproduce-table", "--n-max", "8"});
    CHECK(extended.code == kExitOk);
    CHECK(extended.out.find("7   (extra)") != std::string::npos);
    CHECK(extended.out.find("8   (extra)") != std::string::npos);
    CHECK(extended.out.find("PASS 18/18 cells") != std::string::npos);

    ExpectedTable perturbed = reference_table();
    perturbed[3][1] += 1e-6;
    const TableReport bad = reproduce_table(perturbed);
    CHECK_FALSE(bad.pass());
    CHECK(bad.passed == 17);
    const std::string text = render_table_report(bad, perturbed.size());
    CHECK(text.find("FAIL 17/18 cells") != std::string::npos);
    // the offending cell is named on its own line
    std::istringstream lines(text);
    std::string line;
    int mismatches = 0;
    while (std::getline(lines, line)) {
        if (line.find("MISMATCH") == std::string::npos) continue;
        ++mismatches;
        CHECK(line.rfind("4   log|b(n)|", 0) == 0);
    }
    CHECK(mismatches == 1);
}

TEST_CASE("formatting") {
    CHECK(format_double(1172.5870909839) == "1172.5870909839");
    CHECK(format_double(std::nan("")) == "nan");
    ResultTable t{{"a", "b"}, {{1LL, std::string("x")}, {std::monostate{}, true}}};
    CHECK(render_csv(t) == "a,b\n1,x\nnan,true\n");
}
