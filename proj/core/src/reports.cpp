#include "pairstab/reports.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pairstab {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

json scenario_json(const FaultScenario& sc) {
    json j;
    if (const BusFault* bf = std::get_if<BusFault>(&sc.fault))
        j["fault"] = {{"type", "bus"}, {"bus", bf->bus}};
    else {
        const LineFault& lf = std::get<LineFault>(sc.fault);
        j["fault"] = {{"type", "line"},
                      {"from", lf.from},
                      {"to", lf.to},
                      {"position", lf.position}};
    }
    j["t_clear"] = sc.t_clear;
    if (sc.trip)
        j["post_fault"] = {{"trip", {{"from", sc.trip->from}, {"to", sc.trip->to}}}};
    else
        j["post_fault"] = "restore";
    return j;
}

} // namespace

std::string trajectory_csv(const Trajectory& traj, const std::vector<int>& buses) {
    std::ostringstream os;
    os << "# units: t s, delta rad, omega pu, pe pu\n";
    os << "t";
    for (int b : buses) os << ",delta_" << b;
    for (int b : buses) os << ",omega_" << b;
    for (int b : buses) os << ",pe_" << b;
    os << ",stage\n";
    os.precision(12);
    for (int k = 0; k < traj.n_samples(); ++k) {
        os << traj.t[static_cast<size_t>(k)];
        for (int i = 0; i < traj.n_machines(); ++i) os << "," << traj.delta(k, i);
        for (int i = 0; i < traj.n_machines(); ++i) os << "," << traj.omega(k, i);
        for (int i = 0; i < traj.n_machines(); ++i) os << "," << traj.pe(k, i);
        os << "," << stage_name(traj.stage[static_cast<size_t>(k)]) << "\n";
    }
    return os.str();
}

std::string pair_csv(const PairSeries& ps) {
    std::ostringstream os;
    os << "# units: delta_ij rad, pe_ij pu, pm_ij pu, omega_ij pu, t s\n";
    os << "delta_ij,pe_ij,pm_ij,omega_ij,t\n";
    os.precision(12);
    for (int k = 0; k < ps.n_samples(); ++k)
        os << ps.delta(k) << "," << ps.pe(k) << "," << ps.p_m << "," << ps.omega(k)
           << "," << ps.t[static_cast<size_t>(k)] << "\n";
    return os.str();
}

std::string coi_csv(const Trajectory& traj, const CoiTrajectory& coi) {
    std::ostringstream os;
    os << "# units: t s, delta_coi rad, omega_coi pu, p_coi pu, accel_residual pu\n";
    os << "t,delta_coi,omega_coi,p_coi,accel_residual\n";
    os.precision(12);
    for (int k = 0; k < traj.n_samples(); ++k)
        os << traj.t[static_cast<size_t>(k)] << "," << coi.delta_coi(k) << ","
           << coi.omega_coi(k) << "," << coi.p_coi(k) << "," << coi.accel_residual(k)
           << "\n";
    return os.str();
}

namespace {

ordered_json couple_record_json(const AssessmentReport& r, int idx) {
    const CoupleRecord& rec = r.records[static_cast<size_t>(idx)];
    const CoupleMargin& cm = rec.margin;
    ordered_json j;
    j["couple"] = couple_label(r, cm.pair);
    j["machine_i_bus"] = r.machine_buses[static_cast<size_t>(cm.pair.i)];
    j["machine_j_bus"] = r.machine_buses[static_cast<size_t>(cm.pair.j)];
    j["class"] = fit_class_name(cm.cls);
    j["pcmdlp_rad"] = cm.pcmdlp;
    j["a_acc"] = cm.a_acc;
    j["a_dec_pred"] = cm.a_dec_pred;
    j["eta"] = cm.eta;
    j["verdict"] = verdict_name(cm.verdict);
    j["late_clearing"] = cm.late_clearing;
    j["omega_at_clearing_pu"] = rec.omega_at_clearing;
    j["delta_at_clearing_rad"] = rec.delta_at_clearing;
    j["actual_event"] = {{"kind", event_name(rec.actual_event.kind)},
                         {"angle_rad", rec.actual_event.event_angle}};
    j["fit_qr"] = {{"h_q1", rec.qr.h_q1}, {"h_q2", rec.qr.h_q2},
                   {"h_q3", rec.qr.h_q3}, {"h_cos", rec.qr.h_cos},
                   {"h_cst", rec.qr.h_cst}, {"sigma", rec.qr.sigma}};
    j["fit_sin"] = {{"h_sin", rec.sn.h_sin}, {"h_cos", rec.sn.h_cos},
                    {"h_cst", rec.sn.h_cst}};
    return j;
}

} // namespace

std::string fit_report_json(const AssessmentReport& r, int record_index,
                            const SampleWindow& window, int curve_samples) {
    const CoupleRecord& rec = r.records[static_cast<size_t>(record_index)];
    ordered_json j = couple_record_json(r, record_index);
    j["window"] = {{"start_s", window.start},
                   {"spacing_s", window.spacing},
                   {"count", window.count()}};
    j["window_samples"] = ordered_json::array();
    for (int k = 0; k < window.count(); ++k)
        j["window_samples"].push_back(
            {{"delta_rad", window.delta[static_cast<size_t>(k)]},
             {"pe", window.pe[static_cast<size_t>(k)]}});
    j["window_rms_qr"] = window_rms(window, rec.qr);
    j["window_rms_sin"] = window_rms(window, rec.sn);

    // Predicted curves on the scan grid, for external plotting.
    const double d0 = rec.delta_at_clearing;
    const double d1 = crossing_scan_end(d0);
    j["curves"] = ordered_json::array();
    for (int k = 0; k <= curve_samples; ++k) {
        const double d = d0 + (d1 - d0) * k / curve_samples;
        j["curves"].push_back({{"delta_rad", d},
                               {"pe_qr", rec.qr.eval(d)},
                               {"pe_sin", rec.sn.eval(d)}});
    }
    return j.dump(2);
}

std::string assessment_json(const AssessmentReport& r, const std::string& timestamp) {
    ordered_json j;
    if (!timestamp.empty()) j["timestamp"] = timestamp;
    j["scenario"] = scenario_json(r.scenario);
    j["strategy"] = r.strategy_used == Strategy::Small ? "small" : "large";
    j["config"] = {{"dt", r.config.dt},
                   {"horizon", r.config.horizon},
                   {"sigma", r.config.sigma},
                   {"omega_cthr", r.config.omega_cthr},
                   {"omega_sethr", r.config.omega_sethr},
                   {"scan_intervals", r.config.scan_intervals},
                   {"window", {{"start_offset", r.config.window.start_offset},
                               {"spacing", r.config.window.spacing},
                               {"count", r.config.window.count}}}};

    ordered_json speeds = ordered_json::array();
    for (int k : r.couples.speed_order)
        speeds.push_back({{"bus", r.machine_buses[static_cast<size_t>(k)]},
                          {"omega_pu", r.omega_at_clearing(k)}});
    j["omega_at_clearing"] = speeds;
    j["q"] = r.couples.q;
    j["threshold"] = r.couples.threshold;

    auto pairs_json = [&](const std::vector<CouplePair>& v) {
        ordered_json a = ordered_json::array();
        for (const CouplePair& p : v) a.push_back(couple_label(r, p));
        return a;
    };
    j["candidates"] = pairs_json(r.couples.candidates);
    j["confirmed"] = pairs_json(r.couples.confirmed);

    j["couples"] = ordered_json::array();
    for (int k = 0; k < static_cast<int>(r.records.size()); ++k)
        j["couples"].push_back(couple_record_json(r, k));

    j["system"] = {{"verdict", verdict_name(r.margin.verdict)},
                   {"no_couples", r.margin.no_couples},
                   {"lead_couple", r.margin.lead >= 0
                                       ? couple_label(r, r.margin.couples[(size_t)r.margin.lead].pair)
                                       : ""},
                   {"severity", r.margin.severity}};
    j["elapsed_s"] = r.elapsed_s;
    return j.dump(2);
}

namespace {

ordered_json cct_result_json(const CctResult& c) {
    ordered_json j;
    j["method"] = cct_method_name(c.method);
    j["cct_s"] = c.cct;
    j["stable_bracket_s"] = c.stable_bracket;
    j["unstable_bracket_s"] = c.unstable_bracket;
    j["resolution_s"] = c.resolution;
    j["trials"] = ordered_json::array();
    for (const CctTrial& t : c.trials)
        j["trials"].push_back({{"t_clear", t.t_clear}, {"stable", t.stable}});
    return j;
}

} // namespace

std::string cct_json(const CctResult& c, const std::string& fault_label,
                     const std::string& timestamp) {
    ordered_json j;
    if (!timestamp.empty()) j["timestamp"] = timestamp;
    j["fault"] = fault_label;
    j["result"] = cct_result_json(c);
    return j.dump(2);
}

std::string cct_pair_json(const CctResult& proposed, const CctResult& time_domain,
                          const std::string& fault_label, const std::string& timestamp) {
    ordered_json j;
    if (!timestamp.empty()) j["timestamp"] = timestamp;
    j["fault"] = fault_label;
    j["proposed"] = cct_result_json(proposed);
    j["time_domain"] = cct_result_json(time_domain);
    j["difference_s"] = proposed.cct - time_domain.cct;
    return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& contents) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << contents;
}

} // namespace pairstab
