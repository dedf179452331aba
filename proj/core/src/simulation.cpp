#include "pairstab/simulation.hpp"

#include <cmath>

namespace pairstab {

Eigen::VectorXd electrical_power(const ReducedNetwork& net, const Eigen::VectorXd& delta) {
    const int n = net.n_machines();
    Eigen::VectorXd pe(n);
    for (int i = 0; i < n; ++i) {
        double acc = net.emf(i) * net.emf(i) * net.g_self(i);
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dij = delta(i) - delta(j);
            acc += net.c(i, j) * std::sin(dij) + net.d(i, j) * std::cos(dij);
        }
        pe(i) = acc;
    }
    return pe;
}

namespace {

struct Derivative {
    Eigen::VectorXd ddelta;
    Eigen::VectorXd domega;
};

Derivative rhs(const ReducedNetwork& net, const Eigen::VectorXd& delta,
               const Eigen::VectorXd& omega) {
    Derivative d;
    d.ddelta = net.omega_s * omega;
    d.domega = (net.p_m - electrical_power(net, delta)).cwiseQuotient(net.m);
    return d;
}

} // namespace

Trajectory simulate_reduced(const ReducedNetwork& fault_on, const ReducedNetwork& post,
                            const Eigen::VectorXd& delta0, const Eigen::VectorXd& omega0,
                            double t_clear, double dt, double t_end) {
    if (!(dt > 0.0) || dt > 0.01) throw Error("simulate: dt must lie in (0, 0.01]");
    if (t_end <= t_clear) throw Error("simulate: t_end must exceed t_clear");

    const int n = fault_on.n_machines();
    const int steps = static_cast<int>(std::llround(t_end / dt));
    const int clearing = static_cast<int>(std::ceil(t_clear / dt - 1e-9));

    Trajectory tr;
    tr.dt = dt;
    tr.omega_s = fault_on.omega_s;
    tr.clearing_index = clearing;
    tr.t.resize(static_cast<size_t>(steps) + 1);
    tr.delta.resize(steps + 1, n);
    tr.omega.resize(steps + 1, n);
    tr.pe.resize(steps + 1, n);
    tr.stage.resize(static_cast<size_t>(steps) + 1);

    Eigen::VectorXd delta = delta0;
    Eigen::VectorXd omega = omega0;
    for (int k = 0; k <= steps; ++k) {
        const bool post_stage = k >= clearing;
        const ReducedNetwork& net = post_stage ? post : fault_on;
        tr.t[static_cast<size_t>(k)] = k * dt;
        tr.stage[static_cast<size_t>(k)] = post_stage ? Stage::Postfault : Stage::FaultOn;
        tr.delta.row(k) = delta;
        tr.omega.row(k) = omega;
        tr.pe.row(k) = electrical_power(net, delta);
        if (k == clearing)
            tr.pe_fault_at_clearing = electrical_power(fault_on, delta);
        if (!tr.delta.row(k).allFinite() || !tr.omega.row(k).allFinite())
            throw Error("simulate: non-finite state at t = " + std::to_string(k * dt));
        if (k == steps) break;

        const ReducedNetwork& step_net = (k >= clearing) ? post : fault_on;
        const Derivative k1 = rhs(step_net, delta, omega);
        const Derivative k2 =
            rhs(step_net, delta + 0.5 * dt * k1.ddelta, omega + 0.5 * dt * k1.domega);
        const Derivative k3 =
            rhs(step_net, delta + 0.5 * dt * k2.ddelta, omega + 0.5 * dt * k2.domega);
        const Derivative k4 = rhs(step_net, delta + dt * k3.ddelta, omega + dt * k3.domega);
        delta += dt / 6.0 * (k1.ddelta + 2.0 * k2.ddelta + 2.0 * k3.ddelta + k4.ddelta);
        omega += dt / 6.0 * (k1.domega + 2.0 * k2.domega + 2.0 * k3.domega + k4.domega);
    }
    if (clearing > steps)
        throw Error("simulate: clearing lies beyond the simulation horizon");
    if (tr.pe_fault_at_clearing.size() == 0)
        tr.pe_fault_at_clearing = Eigen::VectorXd::Zero(n);
    return tr;
}

Trajectory simulate(const SolvedCase& solved, const FaultScenario& scenario,
                    double dt, double t_end) {
    const ReducedNetwork fault_on = build_reduced(solved, scenario, Stage::FaultOn);
    const ReducedNetwork post = build_reduced(solved, scenario, Stage::Postfault);
    const Eigen::VectorXd omega0 = Eigen::VectorXd::Zero(solved.n_machines());
    return simulate_reduced(fault_on, post, solved.delta0, omega0, scenario.t_clear,
                            dt, t_end);
}

} // namespace pairstab
