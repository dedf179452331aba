#pragma once

#include <vector>

#include <Eigen/Dense>

#include "pairstab/reduction.hpp"

namespace pairstab {

// Pe_i(delta) on the given stage network.
Eigen::VectorXd electrical_power(const ReducedNetwork& net, const Eigen::VectorXd& delta);

// Fixed-step trajectory through fault-on and post-fault stages.
// Rotor angles in rad (synchronous reference), speeds in pu deviation;
// d(delta)/dt = omega_s * omega, M d(omega)/dt = Pm - Pe.
struct Trajectory {
    double dt = 0.0;
    double omega_s = 0.0;
    int clearing_index = 0;           // first post-fault sample
    std::vector<double> t;
    Eigen::MatrixXd delta;            // n_samples x n_machines
    Eigen::MatrixXd omega;
    Eigen::MatrixXd pe;               // per the sample's stage network
    std::vector<Stage> stage;         // per sample
    Eigen::VectorXd pe_fault_at_clearing; // fault-on Pe evaluated at the clearing state

    int n_samples() const { return static_cast<int>(t.size()); }
    int n_machines() const { return static_cast<int>(delta.cols()); }
};

// Classical RK4 at fixed dt. Clearing applied at the first sample with
// t >= t_clear; deterministic for identical inputs. Throws Error on a
// non-finite state, naming the time of failure.
Trajectory simulate(const SolvedCase& solved, const FaultScenario& scenario,
                    double dt, double t_end);

// Same integrator on prebuilt stage networks with an explicit initial state.
Trajectory simulate_reduced(const ReducedNetwork& fault_on, const ReducedNetwork& post,
                            const Eigen::VectorXd& delta0, const Eigen::VectorXd& omega0,
                            double t_clear, double dt, double t_end);

} // namespace pairstab
