#include "pairstab/pairs.hpp"

#include <cmath>

namespace pairstab {

const char* event_name(EventKind k) {
    switch (k) {
        case EventKind::None: return "none";
        case EventKind::Cmdlp: return "CMDLP";
        case EventKind::Cmdsp: return "CMDSP";
        case EventKind::Critical: return "critical";
    }
    return "?";
}

PairSeries pair_series(const Trajectory& traj, int i, int j,
                       const Eigen::VectorXd& m, const Eigen::VectorXd& p_m) {
    const int n = traj.n_machines();
    if (i == j) throw Error("pair_series: i and j must differ");
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw Error("pair_series: machine index out of range");

    PairSeries ps;
    ps.machine_i = i;
    ps.machine_j = j;
    const double mi = m(i), mj = m(j);
    ps.m_pair = mi * mj / (mi + mj);
    const double wi = mi / (mi + mj);
    const double wj = mj / (mi + mj);
    ps.p_m = wj * p_m(i) - wi * p_m(j);
    ps.omega_s = traj.omega_s;
    ps.clearing_index = traj.clearing_index;
    ps.t = traj.t;
    ps.delta = traj.delta.col(i) - traj.delta.col(j);
    ps.omega = traj.omega.col(i) - traj.omega.col(j);
    ps.pe = wj * traj.pe.col(i) - wi * traj.pe.col(j);
    ps.pe_fault_at_clearing = wj * traj.pe_fault_at_clearing(i) -
                              wi * traj.pe_fault_at_clearing(j);
    return ps;
}

double acceleration_area(const PairSeries& ps) {
    const int c = ps.clearing_index;
    if (c <= 0) return 0.0;
    double area = 0.0;
    for (int k = 0; k < c; ++k) {
        const double f0 = ps.p_m - ps.pe(k);
        const double pe1 = (k + 1 == c) ? ps.pe_fault_at_clearing : ps.pe(k + 1);
        const double f1 = ps.p_m - pe1;
        area += 0.5 * (f0 + f1) * (ps.delta(k + 1) - ps.delta(k));
    }
    return area;
}

SwingEvent detect_events(const PairSeries& ps) {
    SwingEvent ev;
    const int ns = ps.n_samples();
    bool swung = false; // the pair actually moved; quiet series yield None
    for (int k = ps.clearing_index; k + 1 < ns; ++k) {
        const double a0 = ps.pe(k) - ps.p_m;       // deceleration power
        const double a1 = ps.pe(k + 1) - ps.p_m;
        const double w0 = ps.omega(k);
        const double w1 = ps.omega(k + 1);
        swung = swung || w0 > 1e-4;

        // Ideal critical state: both quantities vanish together.
        if (swung && std::abs(w0) < 1e-4 && std::abs(a0) < 1e-3) {
            ev.kind = EventKind::Critical;
            ev.index = k;
            ev.delta_at_event = ps.delta(k);
            ev.event_angle = ps.delta(k);
            return ev;
        }
        const bool dlp = w0 > 0.0 && a0 > 0.0 && a1 <= 0.0;
        const bool dsp = w0 > 0.0 && w1 <= 0.0 && a0 > 0.0;
        if (dlp && dsp) {
            ev.kind = EventKind::Critical;
            ev.index = k;
            ev.delta_at_event = ps.delta(k);
            ev.event_angle = ps.delta(k);
            return ev;
        }
        if (dlp) {
            ev.kind = EventKind::Cmdlp;
            ev.index = k;
            ev.delta_at_event = ps.delta(k);
            ev.event_angle =
                ps.delta(k) + (ps.delta(k + 1) - ps.delta(k)) * a0 / (a0 - a1);
            return ev;
        }
        if (dsp) {
            ev.kind = EventKind::Cmdsp;
            ev.index = k;
            ev.delta_at_event = ps.delta(k);
            ev.event_angle =
                ps.delta(k) + (ps.delta(k + 1) - ps.delta(k)) * w0 / (w0 - w1);
            return ev;
        }
    }
    return ev;
}

double deceleration_area_actual(const PairSeries& ps, const SwingEvent& ev) {
    if (ev.kind == EventKind::None)
        throw Error("deceleration_area_actual: pair has no swing event");
    double area = 0.0;
    for (int k = ps.clearing_index; k < ev.index; ++k) {
        const double f0 = ps.pe(k) - ps.p_m;
        const double f1 = ps.pe(k + 1) - ps.p_m;
        area += 0.5 * (f0 + f1) * (ps.delta(k + 1) - ps.delta(k));
    }
    // Partial piece up to the interpolated event angle.
    if (ev.index + 1 < ps.n_samples()) {
        const double d0 = ps.delta(ev.index);
        const double d1 = ps.delta(ev.index + 1);
        const double f0 = ps.pe(ev.index) - ps.p_m;
        const double f1 = ps.pe(ev.index + 1) - ps.p_m;
        const double span = d1 - d0;
        if (std::abs(span) > 0.0) {
            const double frac = (ev.event_angle - d0) / span;
            const double fe = f0 + (f1 - f0) * frac;
            area += 0.5 * (f0 + fe) * (ev.event_angle - d0);
        }
    }
    return area;
}

double eac_residual(const PairSeries& ps, int upto) {
    if (upto < ps.clearing_index || upto >= ps.n_samples())
        throw Error("eac_residual: sample index out of range");
    const double a_acc = acceleration_area(ps);
    double a_dec = 0.0;
    for (int k = ps.clearing_index; k < upto; ++k) {
        const double f0 = ps.pe(k) - ps.p_m;
        const double f1 = ps.pe(k + 1) - ps.p_m;
        a_dec += 0.5 * (f0 + f1) * (ps.delta(k + 1) - ps.delta(k));
    }
    return a_acc - a_dec - ps.kinetic_energy(upto) + ps.kinetic_energy(0);
}

AreaResult area_result(const PairSeries& ps, int upto) {
    AreaResult r;
    r.a_acc = acceleration_area(ps);
    r.kinetic = ps.kinetic_energy(upto);
    r.residual = eac_residual(ps, upto);
    r.a_dec = r.a_acc - r.kinetic + ps.kinetic_energy(0) - r.residual;
    return r;
}

} // namespace pairstab
