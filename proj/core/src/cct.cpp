#include "pairstab/cct.hpp"

#include <cmath>

namespace pairstab {

const char* cct_method_name(CctMethod m) {
    return m == CctMethod::Proposed ? "proposed" : "time-domain";
}

bool time_domain_stable(const SolvedCase& solved, FaultScenario scenario,
                        double t_clear, const AssessConfig& config) {
    scenario.t_clear = t_clear;
    const Trajectory traj =
        simulate(solved, scenario, config.dt, t_clear + config.horizon);
    const int n = traj.n_machines();
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const auto rel = traj.delta.col(a) - traj.delta.col(b);
            if (rel.cwiseAbs().maxCoeff() > 2.0 * M_PI) return false;
        }
    }
    return true;
}

namespace {

struct ProposedVerdict {
    bool stable = true;
    int lead_machine = -1; // accelerating member of the minimum-margin pair
};

ProposedVerdict proposed_stable(const SolvedCase& solved, FaultScenario scenario,
                                double t_clear, const AssessConfig& config,
                                int restrict_to_machine) {
    scenario.t_clear = t_clear;
    AssessmentReport rep = assess(solved, scenario, config);
    ProposedVerdict v;
    if (rep.margin.no_couples) return v; // undisturbed

    double min_eta = 0.0;
    bool seen = false;
    for (const CoupleMargin& cm : rep.margin.couples) {
        if (restrict_to_machine >= 0 && cm.pair.i != restrict_to_machine &&
            cm.pair.j != restrict_to_machine)
            continue;
        if (!seen || cm.eta < min_eta) {
            min_eta = cm.eta;
            v.lead_machine = cm.pair.i;
            seen = true;
        }
    }
    if (!seen) return v; // no couple involves the lead machine at this trial
    v.stable = min_eta >= -kCriticalBand;
    return v;
}

} // namespace

CctResult cct_search(const SolvedCase& solved, const FaultScenario& fault,
                     double t_lo, double t_hi, double resolution,
                     CctMethod method, const AssessConfig& config) {
    if (resolution <= 0.0) throw Error("cct_search: resolution must be positive");
    const int n_lo = static_cast<int>(std::llround(t_lo / resolution));
    const int n_hi = static_cast<int>(std::llround(t_hi / resolution));
    if (n_lo >= n_hi) throw Error("cct_search: degenerate bracket");

    CctResult res;
    res.method = method;
    res.resolution = resolution;

    int lead_machine = -1;
    int trials = 0;
    auto verdict = [&](int n) {
        const double tc = n * resolution;
        ++trials;
        bool stable;
        if (method == CctMethod::TimeDomain) {
            stable = time_domain_stable(solved, fault, tc, config);
        } else {
            const int restrict = trials > 2 ? lead_machine : -1;
            const ProposedVerdict v =
                proposed_stable(solved, fault, tc, config, restrict);
            if (trials <= 2 && v.lead_machine >= 0) lead_machine = v.lead_machine;
            stable = v.stable;
        }
        res.trials.push_back({tc, stable});
        return stable;
    };

    int lo = n_lo, hi = n_hi;
    if (!verdict(lo))
        throw Error("cct_search: unbracketed interval (t_lo already unstable)");
    if (verdict(hi))
        throw Error("cct_search: unbracketed interval (t_hi still stable)");
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        if (verdict(mid))
            lo = mid;
        else
            hi = mid;
    }
    res.cct = lo * resolution;
    res.stable_bracket = lo * resolution;
    res.unstable_bracket = hi * resolution;
    return res;
}

} // namespace pairstab
