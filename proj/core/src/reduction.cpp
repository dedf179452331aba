#include "pairstab/reduction.hpp"

#include <cmath>
#include <complex>

namespace pairstab {

using Complex = std::complex<double>;

const char* stage_name(Stage s) {
    switch (s) {
        case Stage::Prefault: return "prefault";
        case Stage::FaultOn: return "fault-on";
        case Stage::Postfault: return "postfault";
    }
    return "?";
}

void FaultScenario::validate(const NetworkCase& net) const {
    if (t_clear <= 0.0) throw Error("scenario: t_clear must be positive");
    if (const BusFault* bf = std::get_if<BusFault>(&fault)) {
        if (net.bus_index(bf->bus) < 0)
            throw Error("scenario: fault bus " + std::to_string(bf->bus) +
                        " does not exist");
    } else {
        const LineFault& lf = std::get<LineFault>(fault);
        if (lf.position < 0.0 || lf.position > 1.0)
            throw Error("scenario: line fault position must lie in [0,1]");
        bool found = false;
        for (const Branch& br : net.branches)
            if ((br.from == lf.from && br.to == lf.to) ||
                (br.from == lf.to && br.to == lf.from))
                found = br.in_service || found;
        if (!found)
            throw Error("scenario: faulted line " + std::to_string(lf.from) + "-" +
                        std::to_string(lf.to) + " does not exist");
    }
    if (trip) {
        bool found = false;
        for (const Branch& br : net.branches)
            if ((br.from == trip->from && br.to == trip->to) ||
                (br.from == trip->to && br.to == trip->from))
                found = true;
        if (!found)
            throw Error("scenario: tripped branch " + std::to_string(trip->from) + "-" +
                        std::to_string(trip->to) + " does not exist");
    }
}

namespace {

struct StagedTopology {
    std::vector<Branch> branches;
    std::vector<Bus> extra_buses;       // synthetic mid-point node for line faults
    std::vector<std::pair<int, Complex>> shunts; // bus id -> added admittance
};

// Branch set and fault shunts for one network stage.
StagedTopology stage_topology(const NetworkCase& net, const FaultScenario& sc,
                              Stage stage) {
    StagedTopology out;
    out.branches = net.branches;

    auto drop_branch = [&](int from, int to) {
        for (Branch& br : out.branches) {
            if (((br.from == from && br.to == to) ||
                 (br.from == to && br.to == from)) &&
                br.in_service) {
                br.in_service = false;
                return;
            }
        }
        throw Error("scenario: branch " + std::to_string(from) + "-" +
                    std::to_string(to) + " not found");
    };

    if (stage == Stage::Postfault && sc.trip) drop_branch(sc.trip->from, sc.trip->to);

    if (stage != Stage::FaultOn) return out;

    if (const BusFault* bf = std::get_if<BusFault>(&sc.fault)) {
        out.shunts.emplace_back(bf->bus, Complex(kFaultShunt, 0.0));
        return out;
    }

    const LineFault& lf = std::get<LineFault>(sc.fault);
    if (lf.position <= 0.0) {
        out.shunts.emplace_back(lf.from, Complex(kFaultShunt, 0.0));
        return out;
    }
    if (lf.position >= 1.0) {
        out.shunts.emplace_back(lf.to, Complex(kFaultShunt, 0.0));
        return out;
    }

    // Split the branch at the fault point and ground the internal node.
    int mid_id = 0;
    for (const Bus& b : net.buses) mid_id = std::max(mid_id, b.id);
    ++mid_id;
    for (Branch& br : out.branches) {
        if (((br.from == lf.from && br.to == lf.to) ||
             (br.from == lf.to && br.to == lf.from)) &&
            br.in_service) {
            const Branch orig = br;
            const double lam =
                (orig.from == lf.from) ? lf.position : 1.0 - lf.position;
            br.to = mid_id; // near piece keeps the tap on the from side
            br.r = orig.r * lam;
            br.x = orig.x * lam;
            br.b = orig.b * lam;
            Branch far;
            far.from = mid_id;
            far.to = orig.to;
            far.r = orig.r * (1.0 - lam);
            far.x = orig.x * (1.0 - lam);
            far.b = orig.b * (1.0 - lam);
            out.branches.push_back(far);
            Bus mid;
            mid.id = mid_id;
            mid.type = BusType::PQ;
            out.extra_buses.push_back(mid);
            out.shunts.emplace_back(mid_id, Complex(kFaultShunt, 0.0));
            return out;
        }
    }
    throw Error("scenario: faulted line not found in service");
}

} // namespace

ReducedNetwork build_reduced(const SolvedCase& solved, const FaultScenario& scenario,
                             Stage stage) {
    const NetworkCase& net = solved.net;
    scenario.validate(net);

    NetworkCase work = net;
    StagedTopology topo = stage_topology(net, scenario, stage);
    for (const Bus& b : topo.extra_buses) work.buses.push_back(b);
    const int nb = static_cast<int>(work.buses.size());
    const int nm = solved.n_machines();

    Eigen::MatrixXcd ybus = bus_admittance(work, topo.branches);
    for (const auto& [bus_id, ysh] : topo.shunts) ybus(work.bus_index(bus_id), work.bus_index(bus_id)) += ysh;

    // Loads as constant admittances at the solved voltage.
    for (int i = 0; i < static_cast<int>(net.buses.size()); ++i) {
        const Bus& b = net.buses[static_cast<size_t>(i)];
        if (b.load_p == 0.0 && b.load_q == 0.0) continue;
        const double v2 = solved.vm(i) * solved.vm(i);
        ybus(i, i) += Complex(b.load_p, -b.load_q) / v2;
    }

    // Augment with machine internal nodes behind x'd and eliminate every bus.
    Eigen::MatrixXcd ygg = Eigen::MatrixXcd::Zero(nm, nm);
    Eigen::MatrixXcd ygb = Eigen::MatrixXcd::Zero(nm, nb);
    for (int k = 0; k < nm; ++k) {
        const Machine& mc = net.machines[static_cast<size_t>(k)];
        const int i = work.bus_index(mc.bus);
        const Complex yg = 1.0 / Complex(0.0, mc.xd_prime);
        ygg(k, k) += yg;
        ybus(i, i) += yg;
        ygb(k, i) -= yg;
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(ybus);
    const Eigen::MatrixXcd x = lu.solve(ygb.transpose());
    if (!x.allFinite())
        throw Error("network reduction is singular (isolated machine island?)");
    const Eigen::MatrixXcd yred = ygg - ygb * x;

    ReducedNetwork rn;
    rn.stage = stage;
    rn.emf = solved.emf;
    rn.m = solved.m;
    rn.p_m = solved.p_m;
    rn.omega_s = net.omega_s();
    rn.c = Eigen::MatrixXd::Zero(nm, nm);
    rn.d = Eigen::MatrixXd::Zero(nm, nm);
    rn.g_self.resize(nm);
    for (int a = 0; a < nm; ++a) {
        rn.g_self(a) = yred(a, a).real();
        for (int b = 0; b < nm; ++b) {
            if (a == b) continue;
            rn.c(a, b) = solved.emf(a) * solved.emf(b) * yred(a, b).imag();
            rn.d(a, b) = solved.emf(a) * solved.emf(b) * yred(a, b).real();
        }
    }
    return rn;
}

} // namespace pairstab
