#pragma once

#include <string>

#include "pairstab/assess.hpp"
#include "pairstab/cct.hpp"
#include "pairstab/quasi.hpp"

namespace pairstab {

// All angle columns are radians (a `units` header row says so); speeds pu.

// t, delta_1..n, omega_1..n, Pe_1..n, stage
std::string trajectory_csv(const Trajectory& traj, const std::vector<int>& buses);

// delta_ij, P_eij, P_mij, omega_ij, t
std::string pair_csv(const PairSeries& ps);

// t, delta_coi, omega_coi, P_coi, accel_residual
std::string coi_csv(const Trajectory& traj, const CoiTrajectory& coi);

// Per-couple fit report: coefficients, window, class, PCMDLP, margin and
// predicted-curve samples over the scan grid.
std::string fit_report_json(const AssessmentReport& r, int record_index,
                            const SampleWindow& window, int curve_samples = 200);

// Assessment report; `timestamp` excluded when empty (comparison mode).
std::string assessment_json(const AssessmentReport& r, const std::string& timestamp);

std::string cct_json(const CctResult& proposed_or_td, const std::string& fault_label,
                     const std::string& timestamp);

std::string cct_pair_json(const CctResult& proposed, const CctResult& time_domain,
                          const std::string& fault_label, const std::string& timestamp);

void write_text_file(const std::string& path, const std::string& contents);

} // namespace pairstab
