#include "pairstab/assess.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace pairstab {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::Critical: return "critical";
        case Verdict::Unstable: return "unstable";
    }
    return "?";
}

namespace {

// Accelerating-then-decelerating signature over the sampling window:
// positive pair speed at clearing and net deceleration power on average.
bool couple_signature(const Trajectory& traj, const PairSeries& ps,
                      const WindowSpec& window) {
    if (!(ps.omega(ps.clearing_index) > 0.0)) return false;
    const double t_c = traj.t[static_cast<size_t>(traj.clearing_index)];
    double mean = 0.0;
    for (int k = 0; k < window.count; ++k) {
        const double t = t_c + window.start_offset + k * window.spacing;
        const int idx = static_cast<int>(std::llround(t / traj.dt));
        if (idx < 0 || idx >= ps.n_samples()) return false;
        mean += ps.pe(idx) - ps.p_m;
    }
    return mean / window.count > 0.0;
}

std::vector<int> speed_order_at_clearing(const Trajectory& traj) {
    const int n = traj.n_machines();
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const auto wc = traj.omega.row(traj.clearing_index);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return wc(a) > wc(b); });
    return order;
}

} // namespace

CoupleSet identify_couples_small(const Trajectory& traj, double omega_cthr,
                                 const WindowSpec& window, const Eigen::VectorXd& m,
                                 const Eigen::VectorXd& p_m) {
    const int n = traj.n_machines();
    if (n < 2) throw Error("identify_couples_small: need at least two machines");

    CoupleSet cs;
    cs.strategy = Strategy::Small;
    cs.threshold = omega_cthr;
    cs.speed_order = speed_order_at_clearing(traj);
    const auto wc = traj.omega.row(traj.clearing_index);

    // Test pairs (s_k, s_{N+1-k}); q is the largest k whose pair speed
    // exceeds the threshold (ties resolved toward more candidates).
    for (int k = 0; k < n / 2; ++k) {
        const double pair_speed = wc(cs.speed_order[static_cast<size_t>(k)]) -
                                  wc(cs.speed_order[static_cast<size_t>(n - 1 - k)]);
        if (pair_speed > omega_cthr) cs.q = k + 1;
    }

    for (int a = 0; a < cs.q; ++a)
        for (int b = 0; b < cs.q; ++b)
            cs.candidates.push_back(
                {cs.speed_order[static_cast<size_t>(a)],
                 cs.speed_order[static_cast<size_t>(n - 1 - b)]});

    for (const CouplePair& cp : cs.candidates) {
        const PairSeries ps = pair_series(traj, cp.i, cp.j, m, p_m);
        if (couple_signature(traj, ps, window)) cs.confirmed.push_back(cp);
    }
    return cs;
}

CoupleSet identify_couples_large(const Trajectory& traj, double omega_sethr,
                                 int remote_machine, const WindowSpec& window,
                                 const Eigen::VectorXd& m, const Eigen::VectorXd& p_m) {
    const int n = traj.n_machines();
    if (remote_machine < 0 || remote_machine >= n)
        throw Error("identify_couples_large: no such machine index");
    const auto wc = traj.omega.row(traj.clearing_index);
    if (!(std::abs(wc(remote_machine)) < omega_sethr / 3.0))
        throw Error("identify_couples_large: remote machine is itself severely "
                    "disturbed (|omega| >= sethr/3 at clearing)");

    CoupleSet cs;
    cs.strategy = Strategy::Large;
    cs.threshold = omega_sethr;
    cs.speed_order = speed_order_at_clearing(traj);
    for (int i : cs.speed_order) {
        if (i == remote_machine) continue;
        if (wc(i) > omega_sethr) cs.candidates.push_back({i, remote_machine});
    }
    for (const CouplePair& cp : cs.candidates) {
        const PairSeries ps = pair_series(traj, cp.i, cp.j, m, p_m);
        if (couple_signature(traj, ps, window)) cs.confirmed.push_back(cp);
    }
    return cs;
}

int pick_remote_machine(const Trajectory& traj, const SolvedCase& solved,
                        const FaultScenario& scenario) {
    // Thevenin distance |Z_ii + Z_ff - 2 Z_if| between each machine terminal
    // and the faulted node on the prefault network.
    const NetworkCase& net = solved.net;
    int fault_bus;
    if (const BusFault* bf = std::get_if<BusFault>(&scenario.fault))
        fault_bus = bf->bus;
    else
        fault_bus = std::get<LineFault>(scenario.fault).from;

    Eigen::MatrixXcd y = bus_admittance(net, net.branches);
    for (int i = 0; i < static_cast<int>(net.buses.size()); ++i) {
        const Bus& b = net.buses[static_cast<size_t>(i)];
        if (b.load_p != 0.0 || b.load_q != 0.0)
            y(i, i) += std::complex<double>(b.load_p, -b.load_q) /
                       (solved.vm(i) * solved.vm(i));
    }
    for (int k = 0; k < solved.n_machines(); ++k) {
        const Machine& mc = net.machines[static_cast<size_t>(k)];
        y(net.bus_index(mc.bus), net.bus_index(mc.bus)) +=
            1.0 / std::complex<double>(0.0, mc.xd_prime);
    }
    const Eigen::MatrixXcd z = y.partialPivLu().inverse();

    const int f = net.bus_index(fault_bus);
    const int nm = solved.n_machines();
    std::vector<std::pair<double, int>> dist;
    for (int k = 0; k < nm; ++k) {
        const int i = net.bus_index(net.machines[static_cast<size_t>(k)].bus);
        dist.emplace_back(std::abs(z(i, i) + z(f, f) - 2.0 * z(i, f)), k);
    }
    std::sort(dist.begin(), dist.end());
    // Farthest half, then the quietest machine at clearing.
    const auto wc = traj.omega.row(traj.clearing_index);
    int best = dist.back().second;
    for (size_t a = dist.size() / 2; a < dist.size(); ++a) {
        if (std::abs(wc(dist[a].second)) < std::abs(wc(best))) best = dist[a].second;
    }
    return best;
}

CoupleMargin couple_margin(const PairSeries& ps, const Prediction& pred,
                           double a_acc, double a_dec_pred) {
    if (!(a_acc > 0.0))
        throw Error("couple_margin: pair never accelerated (A_acc <= 0); not a couple");
    CoupleMargin cm;
    cm.pair = {ps.machine_i, ps.machine_j};
    cm.cls = pred.cls;
    cm.pcmdlp = pred.pcmdlp;
    cm.late_clearing = pred.late_clearing;
    cm.a_acc = a_acc;
    cm.a_dec_pred = a_dec_pred;
    cm.eta = (a_dec_pred - a_acc) / a_acc;
    if (pred.cls == FitClass::A4) cm.eta = std::max(0.0, cm.eta);
    if (cm.eta < -kCriticalBand)
        cm.verdict = Verdict::Unstable;
    else if (cm.eta <= kCriticalBand)
        cm.verdict = Verdict::Critical;
    else
        cm.verdict = Verdict::Stable;
    return cm;
}

SystemMargin system_margin(std::vector<CoupleMargin> margins) {
    SystemMargin sm;
    sm.couples = std::move(margins);
    if (sm.couples.empty()) {
        sm.no_couples = true;
        sm.verdict = Verdict::Stable;
        return sm;
    }
    sm.lead = 0;
    for (int k = 1; k < static_cast<int>(sm.couples.size()); ++k)
        if (sm.couples[static_cast<size_t>(k)].eta <
            sm.couples[static_cast<size_t>(sm.lead)].eta)
            sm.lead = k;
    sm.severity = sm.couples[static_cast<size_t>(sm.lead)].eta;

    bool any_unstable = false, any_critical = false;
    for (const CoupleMargin& cm : sm.couples) {
        any_unstable = any_unstable || cm.verdict == Verdict::Unstable;
        any_critical = any_critical || cm.verdict == Verdict::Critical;
    }
    sm.verdict = any_unstable ? Verdict::Unstable
                 : any_critical ? Verdict::Critical
                                : Verdict::Stable;
    return sm;
}

AssessmentReport assess(const SolvedCase& solved, const FaultScenario& scenario,
                        const AssessConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    AssessmentReport rep;
    rep.scenario = scenario;
    rep.config = config;
    for (const Machine& mc : solved.net.machines) rep.machine_buses.push_back(mc.bus);

    const Trajectory traj =
        simulate(solved, scenario, config.dt, scenario.t_clear + config.horizon);
    rep.omega_at_clearing = traj.omega.row(traj.clearing_index);

    Strategy strategy = config.strategy;
    if (strategy == Strategy::Auto)
        strategy = solved.n_machines() <= config.small_system_limit ? Strategy::Small
                                                                    : Strategy::Large;
    rep.strategy_used = strategy;

    if (strategy == Strategy::Small) {
        rep.couples = identify_couples_small(traj, config.omega_cthr, config.window,
                                             solved.m, solved.p_m);
    } else {
        const int remote = config.remote_machine
                               ? *config.remote_machine
                               : pick_remote_machine(traj, solved, scenario);
        rep.couples = identify_couples_large(traj, config.omega_sethr, remote,
                                             config.window, solved.m, solved.p_m);
    }

    const double t_c = traj.t[static_cast<size_t>(traj.clearing_index)];
    std::vector<CoupleMargin> margins;
    for (const CouplePair& cp : rep.couples.confirmed) {
        const PairSeries ps = pair_series(traj, cp.i, cp.j, solved.m, solved.p_m);
        const SampleWindow w =
            collect_window(ps, t_c + config.window.start_offset, config.window.spacing,
                           config.window.count);
        CoupleRecord rec;
        rec.window = w;
        rec.omega_at_clearing = ps.omega(ps.clearing_index);
        rec.delta_at_clearing = ps.delta(ps.clearing_index);
        rec.actual_event = detect_events(ps);
        const double delta_c = ps.delta(ps.clearing_index);
        const double a_acc = acceleration_area(ps);

        Prediction pred;
        double a_dec = 0.0;
        if (delta_c >= M_PI) {
            pred = classify(KimbarkFitQr{}, KimbarkFitSin{}, ps.p_m, delta_c,
                            config.scan_intervals);
        } else {
            rec.qr = fit_qr(w, config.sigma);
            rec.sn = fit_sin(w);
            pred = classify(rec.qr, rec.sn, ps.p_m, delta_c, config.scan_intervals);
            a_dec = predicted_dec_area(rec.qr, ps.p_m, delta_c, pred.pcmdlp,
                                       config.scan_intervals);
        }
        rec.margin = couple_margin(ps, pred, a_acc, a_dec);
        margins.push_back(rec.margin);
        rep.records.push_back(rec);
    }
    rep.margin = system_margin(margins);
    rep.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::string couple_label(const AssessmentReport& r, const CouplePair& p) {
    return std::to_string(r.machine_buses[static_cast<size_t>(p.i)]) + "_" +
           std::to_string(r.machine_buses[static_cast<size_t>(p.j)]);
}

} // namespace pairstab
