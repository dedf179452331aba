#pragma once

#include "pairstab/assess.hpp"

namespace pairstab {

enum class CctMethod { Proposed, TimeDomain };

const char* cct_method_name(CctMethod m);

struct CctTrial {
    double t_clear = 0.0;
    bool stable = false;
};

struct CctResult {
    CctMethod method = CctMethod::Proposed;
    double cct = 0.0;             // last stable clearing time on the grid
    double stable_bracket = 0.0;  // == cct at convergence
    double unstable_bracket = 0.0;
    double resolution = 0.0;
    std::vector<CctTrial> trials;
};

// Bisection on the clearing time over a grid of `resolution` steps.
// Proposed: verdict from the couple-margin pipeline; after the first two
// trials only couples involving the lead machine are evaluated. TimeDomain:
// any pair angle exceeding 2*pi within the horizon is a separation.
// Requires t_lo stable and t_hi unstable under the chosen method.
CctResult cct_search(const SolvedCase& solved, const FaultScenario& fault,
                     double t_lo, double t_hi, double resolution,
                     CctMethod method, const AssessConfig& config);

// Single time-domain verdict (true = stable) used by the search and tests.
bool time_domain_stable(const SolvedCase& solved, FaultScenario scenario,
                        double t_clear, const AssessConfig& config);

} // namespace pairstab
