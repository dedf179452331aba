#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pairstab/coi.hpp"
#include "pairstab/fit.hpp"
#include "pairstab/pairs.hpp"

namespace pairstab {

struct WindowSpec {
    double start_offset = 0.0; // s after clearing
    double spacing = 0.010;    // s
    int count = 10;
};

enum class Strategy { Auto, Small, Large };

struct CouplePair {
    int i = 0; // accelerating member (machine index)
    int j = 0;
    bool operator==(const CouplePair&) const = default;
};

struct CoupleSet {
    Strategy strategy = Strategy::Small;
    double threshold = 0.0;        // omega_cthr or omega_sethr, pu
    int q = 0;                     // small strategy bracket count
    std::vector<int> speed_order;  // machine indices, descending omega at clearing
    std::vector<CouplePair> candidates; // Omega_cc
    std::vector<CouplePair> confirmed;  // Omega_c
};

// Small-system strategy: sort speeds at clearing, bracket q by the pair-speed
// threshold (Eq.-30 style), form the q x q cross candidates, keep those with
// the accelerating-then-decelerating signature over the sampling window.
CoupleSet identify_couples_small(const Trajectory& traj, double omega_cthr,
                                 const WindowSpec& window, const Eigen::VectorXd& m,
                                 const Eigen::VectorXd& p_m);

// Large-system strategy: machines above omega_sethr paired against one remote
// reference machine. The remote machine must be nearly stationary
// (|omega_j| < omega_sethr / 3 at clearing).
CoupleSet identify_couples_large(const Trajectory& traj, double omega_sethr,
                                 int remote_machine, const WindowSpec& window,
                                 const Eigen::VectorXd& m, const Eigen::VectorXd& p_m);

// Remote-reference pick for the large strategy: smallest |omega| at clearing
// among the electrically farthest half (Thevenin distance to the fault node).
int pick_remote_machine(const Trajectory& traj, const SolvedCase& solved,
                        const FaultScenario& scenario);

enum class Verdict { Stable, Critical, Unstable };

const char* verdict_name(Verdict v);

struct CoupleMargin {
    CouplePair pair;
    FitClass cls = FitClass::A4;
    double pcmdlp = 0.0;
    double a_acc = 0.0;
    double a_dec_pred = 0.0;
    double eta = 0.0;
    Verdict verdict = Verdict::Stable;
    bool late_clearing = false;
};

inline constexpr double kCriticalBand = 1e-3; // |eta| band for "critical"

// eta = (A_dec_pred - A_acc) / A_acc, floored at zero for A-4.
// Requires A_acc > 0 (a pair that never accelerated is not a couple).
CoupleMargin couple_margin(const PairSeries& ps, const Prediction& pred,
                           double a_acc, double a_dec_pred);

struct SystemMargin {
    std::vector<CoupleMargin> couples;
    Verdict verdict = Verdict::Stable;
    int lead = -1;          // index into couples, argmin eta
    double severity = 0.0;  // lead couple's eta
    bool no_couples = false;
};

SystemMargin system_margin(std::vector<CoupleMargin> margins);

struct AssessConfig {
    double dt = 1e-3;
    double horizon = 2.0;      // s beyond clearing
    WindowSpec window;
    double sigma = 0.5;
    double omega_cthr = 0.00183;
    double omega_sethr = 0.004;
    Strategy strategy = Strategy::Auto;
    std::optional<int> remote_machine; // machine index override, large strategy
    int scan_intervals = 1000;
    int small_system_limit = 30;       // Auto: small strategy up to this size
};

struct CoupleRecord {
    CoupleMargin margin;
    KimbarkFitQr qr;
    KimbarkFitSin sn;
    SampleWindow window;
    SwingEvent actual_event;
    double omega_at_clearing = 0.0; // pair speed, pu
    double delta_at_clearing = 0.0;
};

struct AssessmentReport {
    FaultScenario scenario;
    AssessConfig config;
    Strategy strategy_used = Strategy::Small;
    CoupleSet couples;
    std::vector<CoupleRecord> records; // aligned with couples.confirmed
    SystemMargin margin;
    Eigen::VectorXd omega_at_clearing; // per machine
    std::vector<int> machine_buses;
    double elapsed_s = 0.0;
};

// End-to-end pipeline: simulate, identify couples, fit both models per
// couple, areas, margins, system verdict.
AssessmentReport assess(const SolvedCase& solved, const FaultScenario& scenario,
                        const AssessConfig& config);

std::string couple_label(const AssessmentReport& r, const CouplePair& p);

} // namespace pairstab
