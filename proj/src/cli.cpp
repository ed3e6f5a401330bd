#include "binotrack/cli.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "binotrack/metrics.hpp"
#include "binotrack/scenario_io.hpp"
#include "binotrack/scenarios.hpp"
#include "binotrack/simulator.hpp"

namespace binotrack {

namespace {

namespace fs = std::filesystem;

Scenario resolve_scenario(const std::string& arg) {
    std::error_code ec;
    if (fs::is_regular_file(arg, ec)) {
        return load_scenario(arg);
    }
    try {
        return builtin_scenario(arg);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(
            "\"" + arg
            + "\" is neither a scenario file nor a built-in scenario name");
    }
}

TraceFormat parse_format(const std::string& name) {
    if (name == "csv") return TraceFormat::Csv;
    if (name == "jsonl") return TraceFormat::Jsonl;
    throw std::invalid_argument("unknown trace format \"" + name + "\"");
}

const char* format_ext(TraceFormat f) {
    return f == TraceFormat::Csv ? "csv" : "jsonl";
}

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::invalid_argument("cannot create output directory \""
                                    + dir + "\": " + ec.message());
    }
}

void apply_sweep_value(Scenario& sc, const std::string& param,
                       double value) {
    if (param == "kappa_c") {
        sc.gains.kappa_c = value;
    } else if (param == "kappa_eta") {
        sc.gains.kappa_eta = value;
    } else if (param == "kappa_xi") {
        sc.gains.kappa_xi = value;
    } else if (param == "target_speed") {
        if (sc.trajectory.kind == TrajectoryKind::Stationary) {
            throw std::invalid_argument(
                "target_speed does not apply to a stationary trajectory");
        }
        sc.trajectory.speed = value;
    } else if (param == "dt") {
        sc.dt = value;
    } else {
        throw std::invalid_argument(
            "unknown sweep parameter \"" + param
            + "\" (expected kappa_c, kappa_eta, kappa_xi, target_speed, "
              "or dt)");
    }
}

std::vector<std::string> split_values(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t end = csv.find(',', pos);
        if (end == std::string::npos) end = csv.size();
        std::string tok = csv.substr(pos, end - pos);
        if (tok.empty()) {
            throw std::invalid_argument("--values has an empty entry");
        }
        out.push_back(tok);
        pos = end + 1;
        if (end == csv.size()) break;
    }
    if (out.empty()) throw std::invalid_argument("--values is empty");
    return out;
}

double parse_value(const std::string& tok) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("--values entry \"" + tok
                                    + "\" is not a number");
    }
}

void write_summary_file(const std::string& path,
                        const ConvergenceSummary& summary) {
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot open output file \"" + path
                                    + "\"");
    }
    out << summary_to_json(summary);
}

int cmd_run(const std::string& scenario_arg, const std::string& out_path,
            const std::string& format_name, int decimate) {
    Scenario sc = resolve_scenario(scenario_arg);
    TraceFormat format = parse_format(format_name);
    if (decimate >= 0) {
        if (decimate < 1) {
            throw std::invalid_argument("--decimate must be at least 1");
        }
        sc.decimate = decimate;
    }
    Trace trace = run(sc);
    if (out_path.empty()) {
        write_trace(std::cout, trace, format, sc.decimate);
    } else {
        write_trace_file(out_path, trace, format, sc.decimate);
    }
    return 0;
}

int cmd_sweep(const std::string& scenario_arg, const std::string& param,
              const std::string& values_csv, const std::string& out_dir,
              const std::string& format_name) {
    Scenario base = resolve_scenario(scenario_arg);
    TraceFormat format = parse_format(format_name);
    std::vector<std::string> tokens = split_values(values_csv);

    // Validate every value up front so a bad entry fails before any run
    // starts or any file is written.
    std::vector<Scenario> variants;
    for (const std::string& tok : tokens) {
        Scenario sc = base;
        apply_sweep_value(sc, param, parse_value(tok));
        validate(sc);
        variants.push_back(sc);
    }
    ensure_directory(out_dir);

    std::vector<std::future<Trace>> futures;
    futures.reserve(variants.size());
    for (const Scenario& sc : variants) {
        futures.push_back(std::async(std::launch::async,
                                     [sc] { return run(sc); }));
    }

    std::string summary_csv_path =
        (fs::path(out_dir) / "sweep_summary.csv").string();
    std::ofstream summary_csv(summary_csv_path);
    if (!summary_csv) {
        throw std::invalid_argument("cannot open output file \""
                                    + summary_csv_path + "\"");
    }
    summary_csv << "param,value,final_error_norm,settle_time,fitted_rate,"
                   "fit_r_squared,steady_state_band\n";

    for (std::size_t i = 0; i < futures.size(); ++i) {
        Trace trace = futures[i].get();
        std::string stem = param + "_" + tokens[i];
        write_trace_file((fs::path(out_dir)
                          / ("trace_" + stem + "." + format_ext(format)))
                             .string(),
                         trace, format, variants[i].decimate);
        ConvergenceSummary summary = summarize(trace);
        write_summary_file(
            (fs::path(out_dir) / ("summary_" + stem + ".json")).string(),
            summary);
        char buf[32];
        auto cell = [&buf](double v) {
            std::snprintf(buf, sizeof buf, "%.12g", v);
            return std::string(buf);
        };
        summary_csv << param << ',' << tokens[i] << ','
                    << cell(summary.final_error_norm) << ','
                    << (summary.settle_time ? cell(*summary.settle_time)
                                            : std::string())
                    << ','
                    << (summary.fitted_rate ? cell(*summary.fitted_rate)
                                            : std::string())
                    << ','
                    << (summary.fit_r_squared
                            ? cell(*summary.fit_r_squared)
                            : std::string())
                    << ',' << cell(summary.steady_state_band) << '\n';
    }
    summary_csv.flush();
    if (!summary_csv) {
        throw std::invalid_argument("write failed for \""
                                    + summary_csv_path + "\"");
    }
    return 0;
}

int cmd_paperpack(const std::string& out_dir) {
    ensure_directory(out_dir);
    for (const NamedScenario& ns : builtin_scenarios()) {
        Trace trace = run(ns.scenario);
        write_trace_file(
            (fs::path(out_dir) / (ns.name + ".csv")).string(), trace,
            TraceFormat::Csv, ns.scenario.decimate);
        write_summary_file(
            (fs::path(out_dir) / (ns.name + "_summary.json")).string(),
            summarize(trace));
    }
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Two-vehicle target tracking simulator"};
    app.require_subcommand(1);

    std::string scenario_arg, out_path, format_name = "csv";
    int decimate = -1;

    CLI::App* run_cmd =
        app.add_subcommand("run", "Integrate one scenario and emit the "
                                  "trace");
    run_cmd->add_option("scenario", scenario_arg,
                        "Scenario file path or built-in name")
        ->required();
    run_cmd->add_option("--out", out_path,
                        "Output file (default: stdout)");
    run_cmd->add_option("--format", format_name, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    run_cmd->add_option("--decimate", decimate,
                        "Keep every Nth record (default: scenario "
                        "setting)");

    std::string param, values_csv, out_dir;
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Run one scenario across several values of a parameter");
    sweep_cmd->add_option("scenario", scenario_arg,
                          "Scenario file path or built-in name")
        ->required();
    sweep_cmd
        ->add_option("--param", param,
                     "kappa_c, kappa_eta, kappa_xi, target_speed, or dt")
        ->required();
    sweep_cmd->add_option("--values", values_csv, "Comma-separated values")
        ->required();
    sweep_cmd->add_option("--out", out_dir, "Output directory")->required();
    sweep_cmd->add_option("--format", format_name, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));

    std::string pack_dir;
    CLI::App* pack_cmd = app.add_subcommand(
        "paperpack", "Run the whole built-in corpus into a directory");
    pack_cmd->add_option("--out", pack_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) {
            return cmd_run(scenario_arg, out_path, format_name, decimate);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(scenario_arg, param, values_csv, out_dir,
                             format_name);
        }
        return cmd_paperpack(pack_dir);
    } catch (const SimulationAbort& e) {
        std::cerr << "simulation abort: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace binotrack
