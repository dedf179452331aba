#include "pairstab/coi.hpp"

namespace pairstab {

CoiTrajectory coi_trajectory(const Trajectory& traj, const Eigen::VectorXd& m,
                             const Eigen::VectorXd& p_m) {
    if (traj.n_samples() == 0) throw Error("coi_trajectory: empty trajectory");
    const int ns = traj.n_samples();
    CoiTrajectory c;
    c.m_total = m.sum();
    c.delta_coi = traj.delta * m / c.m_total;
    c.omega_coi = traj.omega * m / c.m_total;
    c.p_coi.resize(ns);
    for (int k = 0; k < ns; ++k) c.p_coi(k) = (p_m - traj.pe.row(k).transpose()).sum();

    c.accel_residual = Eigen::VectorXd::Zero(ns);
    for (int k = 1; k + 1 < ns; ++k) {
        if (std::abs(k - traj.clearing_index) <= 1) continue;
        const double wdot = (c.omega_coi(k + 1) - c.omega_coi(k - 1)) / (2.0 * traj.dt);
        c.accel_residual(k) = c.m_total * wdot - c.p_coi(k);
    }
    return c;
}

SvcsSeries svcs_relative(const Trajectory& traj, const Eigen::VectorXd& m,
                         const Eigen::VectorXd& p_m, int machine) {
    if (machine < 0 || machine >= traj.n_machines())
        throw Error("svcs_relative: no such machine index " + std::to_string(machine));
    const CoiTrajectory c = coi_trajectory(traj, m, p_m);
    const int ns = traj.n_samples();
    SvcsSeries s;
    s.machine = machine;
    s.theta = traj.delta.col(machine) - c.delta_coi;
    s.omega_rel = traj.omega.col(machine) - c.omega_coi;
    s.f.resize(ns);
    const double weight = m(machine) / c.m_total;
    for (int k = 0; k < ns; ++k)
        s.f(k) = p_m(machine) - traj.pe(k, machine) - weight * c.p_coi(k);
    return s;
}

} // namespace pairstab
