#pragma once

#include <Eigen/Dense>

#include "pairstab/simulation.hpp"

namespace pairstab {

// Two-machine subsystem series: M_ij d(omega_ij)/dt = P_mij - P_eij with
// M_ij = Mi Mj / (Mi + Mj), P_xij = Mj/(Mi+Mj) P_xi - Mi/(Mi+Mj) P_xj.
// A pure transformation of the trajectory; no aggregation.
struct PairSeries {
    int machine_i = 0;  // accelerating member
    int machine_j = 0;
    double m_pair = 0.0;    // M_ij, s
    double p_m = 0.0;       // P_mij, pu
    double omega_s = 0.0;
    int clearing_index = 0;
    std::vector<double> t;
    Eigen::VectorXd delta;  // delta_ij, rad
    Eigen::VectorXd omega;  // omega_ij, pu
    Eigen::VectorXd pe;     // P_eij per the sample's stage
    double pe_fault_at_clearing = 0.0;

    int n_samples() const { return static_cast<int>(t.size()); }
    // 1/2 M_ij omega_ij^2 expressed in pu.rad (speeds are pu, hence omega_s).
    double kinetic_energy(int k) const {
        return 0.5 * omega_s * m_pair * omega[k] * omega[k];
    }
};

PairSeries pair_series(const Trajectory& traj, int i, int j,
                       const Eigen::VectorXd& m, const Eigen::VectorXd& p_m);

enum class EventKind { None, Cmdlp, Cmdsp, Critical };

const char* event_name(EventKind k);

// First post-clearing swing event. Cmdlp: P_eij - P_mij crosses zero
// downward while omega_ij > 0. Cmdsp: omega_ij crosses zero downward while
// P_eij - P_mij > 0. Critical when both hold within one step. Event angle
// linearly interpolated between the bracketing samples.
struct SwingEvent {
    EventKind kind = EventKind::None;
    int index = 0;            // left bracketing sample
    double delta_at_event = 0.0;
    double event_angle = 0.0; // interpolated
};

SwingEvent detect_events(const PairSeries& ps);

// Trapezoidal integral of (P_mij - P_eij) over delta_ij along the fault-on
// samples, from delta0 to the clearing angle.
double acceleration_area(const PairSeries& ps);

// Trapezoidal integral of (P_eij - P_mij) from the clearing angle to the
// event angle along post-fault samples. Rejects EventKind::None.
double deceleration_area_actual(const PairSeries& ps, const SwingEvent& ev);

// A_acc - int_c^upto (P_eij - P_mij) d delta - KE(upto) + KE(0).
// The trailing KE(0) vanishes for series started at equilibrium and keeps
// the identity exact for a nonzero initial speed. Zero up to integration
// tolerance when EAC holds (it always does).
double eac_residual(const PairSeries& ps, int upto);

struct AreaResult {
    double a_acc = 0.0;
    double a_dec = 0.0;
    double kinetic = 0.0;  // at the evaluation endpoint, pu.rad
    double residual = 0.0;
};

AreaResult area_result(const PairSeries& ps, int upto);

} // namespace pairstab
