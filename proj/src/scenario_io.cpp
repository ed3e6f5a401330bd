#include "binotrack/scenario_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace binotrack {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument(msg);
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) fail("unknown key \"" + path + key + "\"");
    }
}

const json& require(const json& obj, const std::string& path,
                    const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail("missing key \"" + path + key + "\"");
    return *it;
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail("\"" + path + "\" must be a number");
    return v.get<double>();
}

Vec2 as_vec2(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2) {
        fail("\"" + path + "\" must be a two-element array [x, y]");
    }
    return {as_number(v[0], path + "[0]"), as_number(v[1], path + "[1]")};
}

TargetTrajectory parse_trajectory(const json& obj) {
    const std::string path = "trajectory.";
    if (!obj.is_object()) fail("\"trajectory\" must be an object");
    const json& kind_v = require(obj, path, "kind");
    if (!kind_v.is_string()) fail("\"trajectory.kind\" must be a string");
    std::string kind = kind_v.get<std::string>();
    TargetTrajectory traj;
    if (kind == "stationary") {
        reject_unknown_keys(obj, path, {"kind"});
        traj.kind = TrajectoryKind::Stationary;
    } else if (kind == "circular") {
        reject_unknown_keys(obj, path, {"kind", "center", "radius", "speed"});
        traj.kind = TrajectoryKind::Circular;
        traj.center = as_vec2(require(obj, path, "center"), path + "center");
        traj.radius = as_number(require(obj, path, "radius"),
                                path + "radius");
        traj.speed = as_number(require(obj, path, "speed"), path + "speed");
    } else if (kind == "waypoints") {
        reject_unknown_keys(obj, path, {"kind", "points", "speed"});
        traj.kind = TrajectoryKind::Waypoints;
        const json& pts = require(obj, path, "points");
        if (!pts.is_array()) fail("\"trajectory.points\" must be an array");
        for (std::size_t i = 0; i < pts.size(); ++i) {
            traj.waypoints.push_back(as_vec2(
                pts[i], path + "points[" + std::to_string(i) + "]"));
        }
        traj.speed = as_number(require(obj, path, "speed"), path + "speed");
    } else {
        fail("\"trajectory.kind\" must be one of \"stationary\", "
             "\"circular\", \"waypoints\"");
    }
    return traj;
}

json vec2_to_json(Vec2 v) { return json::array({v.x, v.y}); }

void format_value(std::ostream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    out << buf;
}

void write_csv_record(std::ostream& out, const TraceRecord& r) {
    const double vals[] = {r.t,  r.p_l.x, r.p_l.y, r.p_r.x, r.p_r.y,
                           r.p_t.x, r.p_t.y, r.e1, r.e2,   r.e3,
                           r.V,  r.v_c,   r.v_eta, r.v_xi,  r.c};
    bool first = true;
    for (double v : vals) {
        if (!first) out << ',';
        format_value(out, v);
        first = false;
    }
    out << '\n';
}

void write_jsonl_record(std::ostream& out, const TraceRecord& r) {
    static const char* names[] = {"t",  "plx", "ply",  "prx", "pry",
                                  "ptx", "pty", "e1",  "e2",  "e3",
                                  "V",  "vc",  "veta", "vxi", "c"};
    const double vals[] = {r.t,  r.p_l.x, r.p_l.y, r.p_r.x, r.p_r.y,
                           r.p_t.x, r.p_t.y, r.e1, r.e2,   r.e3,
                           r.V,  r.v_c,   r.v_eta, r.v_xi,  r.c};
    out << '{';
    for (int i = 0; i < 15; ++i) {
        if (i) out << ',';
        out << '"' << names[i] << "\":";
        format_value(out, vals[i]);
    }
    out << "}\n";
}

constexpr const char* kCsvComment = "# binotrack trace v1";
constexpr const char* kCsvHeader =
    "t,plx,ply,prx,pry,ptx,pty,e1,e2,e3,V,vc,veta,vxi,c";

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        // Map the byte offset to a line number for a friendlier message.
        std::size_t line = 1;
        for (std::size_t i = 0; i < err.byte && i < text.size(); ++i) {
            if (text[i] == '\n') ++line;
        }
        fail("scenario JSON syntax error near line " + std::to_string(line)
             + ": " + err.what());
    }
    if (!doc.is_object()) fail("scenario root must be a JSON object");
    reject_unknown_keys(doc, "", {"initial", "goal", "gains", "trajectory",
                                  "dt", "t_end", "decimate", "seed"});

    Scenario sc;

    const json& initial = require(doc, "", "initial");
    if (!initial.is_object()) fail("\"initial\" must be an object");
    reject_unknown_keys(initial, "initial.", {"p_l", "p_r", "p_t", "t"});
    sc.initial.p_l = as_vec2(require(initial, "initial.", "p_l"),
                             "initial.p_l");
    sc.initial.p_r = as_vec2(require(initial, "initial.", "p_r"),
                             "initial.p_r");
    sc.initial.p_t = as_vec2(require(initial, "initial.", "p_t"),
                             "initial.p_t");
    if (auto it = initial.find("t"); it != initial.end()) {
        sc.initial.t = as_number(*it, "initial.t");
    }

    const json& goal = require(doc, "", "goal");
    if (!goal.is_object()) fail("\"goal\" must be an object");
    reject_unknown_keys(goal, "goal.", {"xi_star", "eta_star", "c_star"});
    sc.goal.xi_star = as_number(require(goal, "goal.", "xi_star"),
                                "goal.xi_star");
    sc.goal.eta_star = as_number(require(goal, "goal.", "eta_star"),
                                 "goal.eta_star");
    sc.goal.c_star = as_number(require(goal, "goal.", "c_star"),
                               "goal.c_star");

    const json& gains = require(doc, "", "gains");
    if (!gains.is_object()) fail("\"gains\" must be an object");
    reject_unknown_keys(gains, "gains.",
                        {"kappa_c", "kappa_eta", "kappa_xi"});
    sc.gains.kappa_c = as_number(require(gains, "gains.", "kappa_c"),
                                 "gains.kappa_c");
    sc.gains.kappa_eta = as_number(require(gains, "gains.", "kappa_eta"),
                                   "gains.kappa_eta");
    sc.gains.kappa_xi = as_number(require(gains, "gains.", "kappa_xi"),
                                  "gains.kappa_xi");

    sc.trajectory = parse_trajectory(require(doc, "", "trajectory"));

    sc.dt = as_number(require(doc, "", "dt"), "dt");
    sc.t_end = as_number(require(doc, "", "t_end"), "t_end");
    if (auto it = doc.find("decimate"); it != doc.end()) {
        if (!it->is_number_integer()) fail("\"decimate\" must be an integer");
        sc.decimate = it->get<int>();
    }
    if (auto it = doc.find("seed"); it != doc.end()) {
        if (!it->is_number_unsigned()) {
            fail("\"seed\" must be a nonnegative integer");
        }
        sc.seed = it->get<unsigned long long>();
    }

    validate(sc);
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open scenario file \"" + path + "\"");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str());
}

std::string scenario_to_json(const Scenario& sc) {
    json doc;
    doc["initial"] = {{"p_l", vec2_to_json(sc.initial.p_l)},
                      {"p_r", vec2_to_json(sc.initial.p_r)},
                      {"p_t", vec2_to_json(sc.initial.p_t)},
                      {"t", sc.initial.t}};
    doc["goal"] = {{"xi_star", sc.goal.xi_star},
                   {"eta_star", sc.goal.eta_star},
                   {"c_star", sc.goal.c_star}};
    doc["gains"] = {{"kappa_c", sc.gains.kappa_c},
                    {"kappa_eta", sc.gains.kappa_eta},
                    {"kappa_xi", sc.gains.kappa_xi}};
    json traj;
    switch (sc.trajectory.kind) {
        case TrajectoryKind::Stationary:
            traj["kind"] = "stationary";
            break;
        case TrajectoryKind::Circular:
            traj["kind"] = "circular";
            traj["center"] = vec2_to_json(sc.trajectory.center);
            traj["radius"] = sc.trajectory.radius;
            traj["speed"] = sc.trajectory.speed;
            break;
        case TrajectoryKind::Waypoints: {
            traj["kind"] = "waypoints";
            json pts = json::array();
            for (Vec2 p : sc.trajectory.waypoints) {
                pts.push_back(vec2_to_json(p));
            }
            traj["points"] = pts;
            traj["speed"] = sc.trajectory.speed;
            break;
        }
    }
    doc["trajectory"] = traj;
    doc["dt"] = sc.dt;
    doc["t_end"] = sc.t_end;
    doc["decimate"] = sc.decimate;
    doc["seed"] = sc.seed;
    return doc.dump(2) + "\n";
}

void write_trace(std::ostream& out, const Trace& trace, TraceFormat format,
                 int decimate) {
    if (decimate < 1) throw std::invalid_argument("decimate must be >= 1");
    if (format == TraceFormat::Csv) {
        out << kCsvComment << '\n' << kCsvHeader << '\n';
    }
    for (std::size_t i = 0; i < trace.size(); ++i) {
        bool keep = i % static_cast<std::size_t>(decimate) == 0
                    || i + 1 == trace.size();
        if (!keep) continue;
        if (format == TraceFormat::Csv) {
            write_csv_record(out, trace[i]);
        } else {
            write_jsonl_record(out, trace[i]);
        }
    }
}

void write_trace_file(const std::string& path, const Trace& trace,
                      TraceFormat format, int decimate) {
    std::ofstream out(path);
    if (!out) fail("cannot open output file \"" + path + "\"");
    write_trace(out, trace, format, decimate);
    out.flush();
    if (!out) fail("write failed for \"" + path + "\"");
}

Trace read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvComment) {
        fail("trace CSV must begin with \"" + std::string(kCsvComment)
             + "\"");
    }
    if (!std::getline(in, line) || line != kCsvHeader) {
        fail("trace CSV header mismatch");
    }
    Trace trace;
    std::size_t lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        double vals[15];
        std::size_t pos = 0;
        for (int i = 0; i < 15; ++i) {
            std::size_t end = line.find(',', pos);
            std::string cell = end == std::string::npos
                ? line.substr(pos)
                : line.substr(pos, end - pos);
            try {
                std::size_t used = 0;
                vals[i] = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                fail("bad numeric field on line " + std::to_string(lineno));
            }
            if (end == std::string::npos) {
                if (i != 14) {
                    fail("expected 15 fields on line "
                         + std::to_string(lineno));
                }
                pos = line.size();
            } else {
                if (i == 14) {
                    fail("expected 15 fields on line "
                         + std::to_string(lineno));
                }
                pos = end + 1;
            }
        }
        TraceRecord r;
        r.t = vals[0];
        r.p_l = {vals[1], vals[2]};
        r.p_r = {vals[3], vals[4]};
        r.p_t = {vals[5], vals[6]};
        r.e1 = vals[7];
        r.e2 = vals[8];
        r.e3 = vals[9];
        r.V = vals[10];
        r.v_c = vals[11];
        r.v_eta = vals[12];
        r.v_xi = vals[13];
        r.c = vals[14];
        trace.push_back(r);
    }
    return trace;
}

Trace read_trace_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open trace file \"" + path + "\"");
    return read_trace_csv(in);
}

std::string summary_to_json(const ConvergenceSummary& s) {
    json doc;
    doc["final_error_norm"] = s.final_error_norm;
    doc["settle_time"] = s.settle_time ? json(*s.settle_time)
                                       : json(nullptr);
    doc["fitted_rate"] = s.fitted_rate ? json(*s.fitted_rate)
                                       : json(nullptr);
    doc["fit_r_squared"] = s.fit_r_squared ? json(*s.fit_r_squared)
                                           : json(nullptr);
    doc["steady_state_band"] = s.steady_state_band;
    return doc.dump(2) + "\n";
}

}  // namespace binotrack
