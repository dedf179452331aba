#include "pairstab/quasi.hpp"

#include <cmath>
#include <set>

namespace pairstab {

QuasiCoefficients quasi_coefficients(const Trajectory& traj, const ReducedNetwork& net,
                                     const std::vector<int>& critical_set,
                                     const std::vector<int>& noncritical_set,
                                     int i, int j) {
    const int n = traj.n_machines();
    std::set<int> cr(critical_set.begin(), critical_set.end());
    std::set<int> ncr(noncritical_set.begin(), noncritical_set.end());
    if (static_cast<int>(cr.size() + ncr.size()) != n ||
        cr.size() + ncr.size() != critical_set.size() + noncritical_set.size())
        throw Error("quasi_coefficients: sets must partition the machines");
    for (int k : cr)
        if (ncr.count(k)) throw Error("quasi_coefficients: sets overlap");
    if (!cr.count(i)) throw Error("quasi_coefficients: i must lie in the critical set");
    if (!ncr.count(j))
        throw Error("quasi_coefficients: j must lie in the non-critical set");

    const double mi = net.m(i), mj = net.m(j);
    const double wi = mi / (mi + mj);
    const double wj = mj / (mi + mj);

    const int ns = traj.n_samples();
    QuasiCoefficients out;
    out.k_sin.resize(ns);
    out.k_cos.resize(ns);
    out.k_tail.resize(ns);

    for (int s = 0; s < ns; ++s) {
        const auto delta = traj.delta.row(s);
        double ksin = 0.0, kcos = 0.0, ktail = 0.0;
        // Cross-set couplings carry sin/cos of d_ij; intra-set angle
        // differences enter as the slowly varying weights.
        for (int nn : ncr) {
            const double djn = delta(j) - delta(nn); // zero when nn == j
            const double c = net.c(i, nn), d = net.d(i, nn);
            ksin += wj * (c * std::cos(djn) - d * std::sin(djn));
            kcos += wj * (c * std::sin(djn) + d * std::cos(djn));
        }
        for (int mm : cr) {
            const double dim = delta(i) - delta(mm); // zero when mm == i
            const double c = net.c(j, mm), d = net.d(j, mm);
            ksin += wi * (c * std::cos(dim) - d * std::sin(dim));
            kcos -= wi * (c * std::sin(dim) + d * std::cos(dim));
        }
        // Intra-set interactions and self conductances.
        ktail += wj * net.emf(i) * net.emf(i) * net.g_self(i);
        ktail -= wi * net.emf(j) * net.emf(j) * net.g_self(j);
        for (int mm : cr) {
            if (mm == i) continue;
            const double dim = delta(i) - delta(mm);
            ktail += wj * (net.c(i, mm) * std::sin(dim) + net.d(i, mm) * std::cos(dim));
        }
        for (int nn : ncr) {
            if (nn == j) continue;
            const double djn = delta(j) - delta(nn);
            ktail -= wi * (net.c(j, nn) * std::sin(djn) + net.d(j, nn) * std::cos(djn));
        }
        out.k_sin(s) = ksin;
        out.k_cos(s) = kcos;
        out.k_tail(s) = ktail;
    }
    return out;
}

} // namespace pairstab
