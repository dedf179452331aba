#pragma once

#include <optional>
#include <variant>

#include <Eigen/Dense>

#include "pairstab/power_flow.hpp"

namespace pairstab {

enum class Stage { Prefault, FaultOn, Postfault };

const char* stage_name(Stage s);

struct BusFault {
    int bus = 0;
};

// Short circuit at fractional position along a branch (0 = from end).
struct LineFault {
    int from = 0;
    int to = 0;
    double position = 0.5;
};

struct TripBranch {
    int from = 0;
    int to = 0;
};

struct FaultScenario {
    std::variant<BusFault, LineFault> fault;
    double t_clear = 0.0;              // fault inception at t = 0
    std::optional<TripBranch> trip;    // post-fault action; nullopt = restore

    void validate(const NetworkCase& net) const;
};

// Internal-node reduced network for one stage: Pe_i = E_i^2 G_ii +
// sum_j (C_ij sin d_ij + D_ij cos d_ij). Loads enter as constant shunt
// admittances at the solved voltage before Kron elimination.
struct ReducedNetwork {
    Stage stage = Stage::Prefault;
    Eigen::MatrixXd c;       // C_ij = E_i E_j B_ij, zero diagonal
    Eigen::MatrixXd d;       // D_ij = E_i E_j G_ij, zero diagonal
    Eigen::VectorXd g_self;  // driving-point conductance G_ii
    Eigen::VectorXd emf;
    Eigen::VectorXd m;
    Eigen::VectorXd p_m;
    double omega_s = 0.0;

    int n_machines() const { return static_cast<int>(emf.size()); }
};

ReducedNetwork build_reduced(const SolvedCase& solved, const FaultScenario& scenario,
                             Stage stage);

// Admittance added at the faulted node to represent a metallic short.
inline constexpr double kFaultShunt = 1e7;

} // namespace pairstab
