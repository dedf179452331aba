#pragma once

#include <Eigen/Dense>

#include "pairstab/simulation.hpp"

namespace pairstab {

// Center-of-inertia view of a trajectory. accel_residual holds
// M_T * d(omega_coi)/dt - P_coi by central differences; entries where the
// difference is undefined (series ends, samples adjacent to the stage
// switch) are zero.
struct CoiTrajectory {
    double m_total = 0.0;
    Eigen::VectorXd delta_coi;  // per sample, rad
    Eigen::VectorXd omega_coi;  // pu
    Eigen::VectorXd p_coi;      // pu
    Eigen::VectorXd accel_residual;
};

CoiTrajectory coi_trajectory(const Trajectory& traj, const Eigen::VectorXd& m,
                             const Eigen::VectorXd& p_m);

// Relative motion of one machine against the virtual COI machine:
// theta = delta_i - delta_coi, omega_rel = omega_i - omega_coi,
// f = Pm_i - Pe_i - (M_i/M_T) P_coi.
struct SvcsSeries {
    int machine = 0;
    Eigen::VectorXd theta;
    Eigen::VectorXd omega_rel;
    Eigen::VectorXd f;
};

SvcsSeries svcs_relative(const Trajectory& traj, const Eigen::VectorXd& m,
                         const Eigen::VectorXd& p_m, int machine);

} // namespace pairstab
