#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pairstab/simulation.hpp"

namespace pairstab {

// Per-sample coefficients of the quasi-sinusoidal decomposition
// P_eij = K_sin sin(d_ij) + K_cos cos(d_ij) + K_tail, computed from the full
// angle state for a partition of the machines into critical (holding i) and
// non-critical (holding j) sets. The reconstruction is an algebraic identity.
struct QuasiCoefficients {
    Eigen::VectorXd k_sin;
    Eigen::VectorXd k_cos;
    Eigen::VectorXd k_tail;
};

QuasiCoefficients quasi_coefficients(const Trajectory& traj, const ReducedNetwork& net,
                                     const std::vector<int>& critical_set,
                                     const std::vector<int>& noncritical_set,
                                     int i, int j);

} // namespace pairstab
