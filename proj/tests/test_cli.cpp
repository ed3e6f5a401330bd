#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "binotrack/cli.hpp"
#include "binotrack/scenario_io.hpp"
#include "binotrack/scenarios.hpp"

using namespace binotrack;
namespace fs = std::filesystem;

namespace {

int cli(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"binotrack"};
    argv.insert(argv.end(), args.begin(), args.end());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

// Temporary workspace removed on scope exit.
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path()
               / ("binotrack_test_" + std::to_string(::getpid()) + "_"
                  + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const char* name) const {
        return (path / name).string();
    }
    static int counter;
};
int TempDir::counter = 0;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Scenario tiny_scenario() {
    Scenario sc;
    sc.initial.p_l = {-10.0, 0.0};
    sc.initial.p_r = {10.0, 0.0};
    sc.initial.p_t = {20.0, 30.0};
    sc.goal = {0.8, 1.0, 15.0};
    sc.gains = {0.5, 1.0, 1.0};
    sc.dt = 0.01;
    sc.t_end = 5.0;
    return sc;
}

}  // namespace

TEST_CASE("usage errors exit 1, help exits 0") {
    CHECK(cli({}) == 1);
    CHECK(cli({"frobnicate"}) == 1);
    CHECK(cli({"run"}) == 1);
    CHECK(cli({"run", "fig3a", "--format", "xml"}) == 1);
    CHECK(cli({"run", "no_such_scenario", "--out", "/dev/null"}) == 1);
    CHECK(cli({"sweep", "fig3a", "--param", "kappa_c"}) == 1);
    CHECK(cli({"paperpack"}) == 1);
    CHECK(cli({"--help"}) == 0);
    CHECK(cli({"run", "--help"}) == 0);
}

TEST_CASE("run: csv output, decimation, and strict re-parse") {
    TempDir tmp;
    std::string scen = tmp.file("tiny.json");
    {
        std::ofstream out(scen);
        out << scenario_to_json(tiny_scenario());
    }
    std::string out_csv = tmp.file("trace.csv");
    CHECK(cli({"run", scen.c_str(), "--out", out_csv.c_str(),
               "--decimate", "50"}) == 0);

    Trace trace = read_trace_csv_file(out_csv);
    // 501 records decimated by 50: indices 0,50,...,500.
    CHECK(trace.size() == 11);
    CHECK(trace.front().t == 0.0);
    CHECK(trace.back().t == doctest::Approx(5.0));

    // Writing the parsed records back reproduces the file byte for byte.
    std::ostringstream rewritten;
    write_trace(rewritten, trace, TraceFormat::Csv, 1);
    CHECK(rewritten.str() == slurp(out_csv));
}

TEST_CASE("run: jsonl output parses line by line") {
    TempDir tmp;
    std::string scen = tmp.file("tiny.json");
    {
        std::ofstream out(scen);
        out << scenario_to_json(tiny_scenario());
    }
    std::string out_jsonl = tmp.file("trace.jsonl");
    CHECK(cli({"run", scen.c_str(), "--out", out_jsonl.c_str(),
               "--format", "jsonl", "--decimate", "100"}) == 0);

    std::ifstream in(out_jsonl);
    REQUIRE(in);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        nlohmann::json rec = nlohmann::json::parse(line);
        CHECK(rec.size() == 15);
        CHECK(rec.contains("t"));
        CHECK(rec.contains("veta"));
    }
    CHECK(lines == 6);  // 0,100,...,500
}

TEST_CASE("run: stdout when no output path is given") {
    TempDir tmp;
    std::string scen = tmp.file("tiny.json");
    {
        std::ofstream out(scen);
        Scenario sc = tiny_scenario();
        sc.t_end = 0.1;
        out << scenario_to_json(sc);
    }
    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    int rc = cli({"run", scen.c_str(), "--decimate", "5"});
    std::cout.rdbuf(old);
    CHECK(rc == 0);
    std::istringstream body(captured.str());
    Trace trace = read_trace_csv(body);
    CHECK(trace.size() == 3);  // records 0, 5, and the final 10
}

TEST_CASE("scenario files: malformed input is refused") {
    TempDir tmp;
    {
        std::ofstream out(tmp.file("unknown_key.json"));
        Scenario sc = tiny_scenario();
        std::string text = scenario_to_json(sc);
        text.insert(text.rfind('}'), ",\"extra\": 1");
        out << text;
    }
    CHECK(cli({"run", tmp.file("unknown_key.json").c_str()}) == 1);

    {
        std::ofstream out(tmp.file("syntax.json"));
        out << "{ \"initial\": [";
    }
    CHECK(cli({"run", tmp.file("syntax.json").c_str()}) == 1);

    CHECK(cli({"run", tmp.file("missing.json").c_str()}) == 1);

    CHECK_THROWS_AS(parse_scenario("{}"), std::invalid_argument);
    CHECK_THROWS_AS(
        parse_scenario("{\"bogus\": 1}"), std::invalid_argument);
}

TEST_CASE("scenario corpus on disk matches the built-ins") {
    fs::path dir = BINOTRACK_SCENARIO_DIR;
    int matched = 0;
    for (const NamedScenario& ns : builtin_scenarios()) {
        fs::path file = dir / (ns.name + ".json");
        REQUIRE(fs::is_regular_file(file));
        Scenario from_disk = load_scenario(file.string());
        CHECK(scenario_to_json(from_disk) ==
              scenario_to_json(ns.scenario));
        ++matched;
    }
    CHECK(matched == 6);
}

TEST_CASE("simulation abort surfaces as exit code 2") {
    TempDir tmp;
    std::string scen = tmp.file("collapse.json");
    {
        Scenario sc = tiny_scenario();
        sc.initial.p_l = {-1e-12, 0.0};
        sc.initial.p_r = {1e-12, 0.0};
        sc.initial.p_t = {0.0, 50.0};
        sc.goal = {1.2, 1.0, 40.0};
        sc.gains = {0.1, 1.0, 1.0};
        std::ofstream out(scen);
        out << scenario_to_json(sc);
    }
    CHECK(cli({"run", scen.c_str(), "--out",
               tmp.file("collapse.csv").c_str()}) == 2);
}

TEST_CASE("sweep: per-value outputs and summary table") {
    TempDir tmp;
    std::string scen = tmp.file("tiny.json");
    {
        std::ofstream out(scen);
        out << scenario_to_json(tiny_scenario());
    }
    std::string out_dir = tmp.file("sweep_out");
    CHECK(cli({"sweep", scen.c_str(), "--param", "kappa_c", "--values",
               "0.25,0.5", "--out", out_dir.c_str()}) == 0);

    fs::path dir = out_dir;
    CHECK(fs::is_regular_file(dir / "trace_kappa_c_0.25.csv"));
    CHECK(fs::is_regular_file(dir / "trace_kappa_c_0.5.csv"));
    CHECK(fs::is_regular_file(dir / "summary_kappa_c_0.25.json"));
    CHECK(fs::is_regular_file(dir / "summary_kappa_c_0.5.json"));

    std::ifstream table(dir / "sweep_summary.csv");
    REQUIRE(table);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(table, line)) lines.push_back(line);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] ==
          "param,value,final_error_norm,settle_time,fitted_rate,"
          "fit_r_squared,steady_state_band");
    CHECK(lines[1].rfind("kappa_c,0.25,", 0) == 0);
    CHECK(lines[2].rfind("kappa_c,0.5,", 0) == 0);

    // The per-value summaries are valid JSON with the expected keys.
    nlohmann::json summary = nlohmann::json::parse(
        slurp((dir / "summary_kappa_c_0.5.json").string()));
    CHECK(summary.contains("final_error_norm"));
    CHECK(summary.contains("steady_state_band"));
}

TEST_CASE("sweep: value validation happens before any run") {
    TempDir tmp;
    std::string scen = tmp.file("tiny.json");
    {
        std::ofstream out(scen);
        out << scenario_to_json(tiny_scenario());
    }
    std::string out_dir = tmp.file("never_created");
    CHECK(cli({"sweep", scen.c_str(), "--param", "dt", "--values",
               "0.01,zero", "--out", out_dir.c_str()}) == 1);
    CHECK(cli({"sweep", scen.c_str(), "--param", "dt", "--values",
               "0.01,-0.5", "--out", out_dir.c_str()}) == 1);
    CHECK(cli({"sweep", scen.c_str(), "--param", "mystery", "--values",
               "1", "--out", out_dir.c_str()}) == 1);
    // target_speed cannot apply to a stationary trajectory.
    CHECK(cli({"sweep", scen.c_str(), "--param", "target_speed",
               "--values", "1,2", "--out", out_dir.c_str()}) == 1);
    CHECK_FALSE(fs::exists(out_dir));
}

TEST_CASE("sweep: target speed applies to a moving trajectory") {
    TempDir tmp;
    std::string scen = tmp.file("circ.json");
    {
        Scenario sc = tiny_scenario();
        sc.initial.p_t = {30.0, 30.0};
        sc.trajectory.kind = TrajectoryKind::Circular;
        sc.trajectory.center = {30.0, 60.0};
        sc.trajectory.radius = 30.0;
        sc.trajectory.speed = 2.0;
        sc.t_end = 3.0;
        std::ofstream out(scen);
        out << scenario_to_json(sc);
    }
    std::string out_dir = tmp.file("speed_sweep");
    CHECK(cli({"sweep", scen.c_str(), "--param", "target_speed",
               "--values", "1,2", "--out", out_dir.c_str()}) == 0);
    CHECK(fs::is_regular_file(fs::path(out_dir) / "trace_target_speed_1.csv"));
    CHECK(fs::is_regular_file(fs::path(out_dir) / "trace_target_speed_2.csv"));
}

TEST_CASE("paperpack emits a trace and summary per built-in") {
    TempDir tmp;
    std::string out_dir = tmp.file("pack");
    CHECK(cli({"paperpack", "--out", out_dir.c_str()}) == 0);
    for (const NamedScenario& ns : builtin_scenarios()) {
        CAPTURE(ns.name);
        fs::path dir = out_dir;
        CHECK(fs::is_regular_file(dir / (ns.name + ".csv")));
        CHECK(fs::is_regular_file(dir / (ns.name + "_summary.json")));
        Trace trace =
            read_trace_csv_file((dir / (ns.name + ".csv")).string());
        CHECK(trace.size() > 100);
    }
}
