#pragma once

#include <Eigen/Dense>

#include "pairstab/network.hpp"

namespace pairstab {

struct PowerFlowOptions {
    double tolerance = 1e-10; // max |mismatch|, pu
    int max_iterations = 50;
};

// Nodal admittance matrix of the in-service branch set plus fixed bus shunts.
Eigen::MatrixXcd bus_admittance(const NetworkCase& net,
                                const std::vector<Branch>& branches);

// Solved operating point: bus voltages plus per-machine internal EMF,
// initial rotor angle and effective mechanical power (slack machine's
// p_m replaced by the solved injection).
struct SolvedCase {
    NetworkCase net;
    Eigen::VectorXd vm;        // per bus, pu
    Eigen::VectorXd va;        // per bus, rad
    Eigen::VectorXcd injection; // per bus net complex power, pu
    Eigen::VectorXd emf;       // per machine, pu
    Eigen::VectorXd delta0;    // per machine, rad
    Eigen::VectorXd m;         // per machine inertia (2H), s
    Eigen::VectorXd p_m;       // per machine mechanical power, pu
    int iterations = 0;
    double max_mismatch = 0.0;

    int n_machines() const { return static_cast<int>(emf.size()); }
    int machine_bus(int k) const { return net.machines[static_cast<size_t>(k)].bus; }
};

// Newton-Raphson from a flat start. Throws Error on non-convergence.
SolvedCase solve_power_flow(const NetworkCase& net, const PowerFlowOptions& opts = {});

} // namespace pairstab
