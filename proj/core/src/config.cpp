#include "pairstab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pairstab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw Error(origin + ": " + what);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& origin) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) { ok = true; break; }
        if (!ok) fail(origin, "unknown key '" + it.key() + "'");
    }
}

FaultScenario scenario_from(const json& j, const std::string& origin) {
    reject_unknown(j, {"fault", "t_clear", "post_fault"}, origin);
    if (!j.contains("fault") || !j["fault"].is_object())
        fail(origin, "scenario requires a 'fault' object");
    const json& jf = j["fault"];
    reject_unknown(jf, {"type", "bus", "from", "to", "position"}, origin + ".fault");

    FaultScenario sc;
    const std::string type = jf.value("type", "");
    if (type == "bus") {
        if (!jf.contains("bus")) fail(origin, "bus fault requires 'bus'");
        sc.fault = BusFault{jf["bus"].get<int>()};
    } else if (type == "line") {
        LineFault lf;
        lf.from = jf.value("from", 0);
        lf.to = jf.value("to", 0);
        lf.position = jf.value("position", 0.5);
        sc.fault = lf;
    } else {
        fail(origin, "fault type must be 'bus' or 'line'");
    }
    if (!j.contains("t_clear") || !j["t_clear"].is_number())
        fail(origin, "scenario requires numeric 't_clear'");
    sc.t_clear = j["t_clear"].get<double>();

    if (j.contains("post_fault")) {
        const json& pf = j["post_fault"];
        if (pf.is_string()) {
            if (pf.get<std::string>() != "restore")
                fail(origin, "post_fault must be 'restore' or {trip:{from,to}}");
        } else if (pf.is_object() && pf.contains("trip")) {
            const json& tr = pf["trip"];
            sc.trip = TripBranch{tr.value("from", 0), tr.value("to", 0)};
        } else {
            fail(origin, "post_fault must be 'restore' or {trip:{from,to}}");
        }
    }
    return sc;
}

} // namespace

FaultScenario scenario_from_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(origin, std::string("invalid JSON: ") + e.what());
    }
    return scenario_from(j, origin);
}

void RunConfig::validate() const {
    if (case_path.empty()) throw Error("config: 'case' path required");
    const AssessConfig& a = assess;
    if (!(a.dt > 0.0) || a.dt > 0.01) throw Error("config: dt must lie in (0, 0.01]");
    if (a.horizon <= 0.0) throw Error("config: horizon must be positive");
    if (!(a.sigma > 0.0) || a.sigma > 1.0)
        throw Error("config: sigma must lie in (0, 1]");
    if (a.window.count < 5) throw Error("config: window.count must be >= 5");
    if (a.window.spacing <= 0.0) throw Error("config: window.spacing must be positive");
    if (a.window.start_offset < 0.0)
        throw Error("config: window.start_offset must be >= 0");
    if (a.omega_cthr <= 0.0 || a.omega_sethr <= 0.0)
        throw Error("config: speed thresholds must be positive");
    if (a.scan_intervals < 100)
        throw Error("config: scan_intervals must be >= 100");
}

RunConfig run_config_from_json_text(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(origin, std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) fail(origin, "top level must be an object");
    reject_unknown(root,
                   {"case", "scenario", "dt", "horizon", "window", "sigma",
                    "omega_cthr", "omega_sethr", "strategy", "remote_machine_bus",
                    "scan_intervals", "out_dir", "formats"},
                   origin);

    RunConfig rc;
    rc.out_dir = default_out_dir();
    rc.case_path = root.value("case", std::string());
    if (root.contains("scenario")) rc.scenario = scenario_from(root["scenario"], origin);
    if (root.contains("dt")) rc.assess.dt = root["dt"].get<double>();
    if (root.contains("horizon")) rc.assess.horizon = root["horizon"].get<double>();
    if (root.contains("sigma")) rc.assess.sigma = root["sigma"].get<double>();
    if (root.contains("omega_cthr")) rc.assess.omega_cthr = root["omega_cthr"].get<double>();
    if (root.contains("omega_sethr"))
        rc.assess.omega_sethr = root["omega_sethr"].get<double>();
    if (root.contains("scan_intervals"))
        rc.assess.scan_intervals = root["scan_intervals"].get<int>();
    if (root.contains("window")) {
        const json& w = root["window"];
        reject_unknown(w, {"start_offset", "spacing", "count"}, origin + ".window");
        rc.assess.window.start_offset = w.value("start_offset", 0.0);
        rc.assess.window.spacing = w.value("spacing", 0.010);
        rc.assess.window.count = w.value("count", 10);
    }
    if (root.contains("strategy")) {
        const std::string s = root["strategy"].get<std::string>();
        if (s == "auto") rc.assess.strategy = Strategy::Auto;
        else if (s == "small") rc.assess.strategy = Strategy::Small;
        else if (s == "large") rc.assess.strategy = Strategy::Large;
        else fail(origin, "strategy must be auto|small|large");
    }
    if (root.contains("remote_machine_bus"))
        rc.assess.remote_machine = root["remote_machine_bus"].get<int>(); // resolved later
    if (root.contains("out_dir")) rc.out_dir = root["out_dir"].get<std::string>();
    if (root.contains("formats")) {
        rc.write_csv = false;
        rc.write_json = false;
        for (const json& f : root["formats"]) {
            const std::string s = f.get<std::string>();
            if (s == "csv") rc.write_csv = true;
            else if (s == "json") rc.write_json = true;
            else fail(origin, "formats entries must be 'csv' or 'json'");
        }
    }
    return rc;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return run_config_from_json_text(ss.str(), path);
}

std::string default_out_dir() {
    if (const char* env = std::getenv("PAIRSTAB_OUT"); env && *env) return env;
    return "out";
}

} // namespace pairstab
