#include "pairstab/power_flow.hpp"

#include <cmath>
#include <complex>

namespace pairstab {

using Complex = std::complex<double>;

Eigen::MatrixXcd bus_admittance(const NetworkCase& net,
                                const std::vector<Branch>& branches) {
    const int n = static_cast<int>(net.buses.size());
    Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
    for (const Branch& br : branches) {
        if (!br.in_service) continue;
        const int i = net.bus_index(br.from);
        const int j = net.bus_index(br.to);
        const Complex ys = 1.0 / Complex(br.r, br.x);
        const Complex ysh(0.0, br.b / 2.0);
        const double a = br.tap;
        y(i, i) += ys / (a * a) + ysh;
        y(j, j) += ys + ysh;
        y(i, j) -= ys / a;
        y(j, i) -= ys / a;
    }
    for (int i = 0; i < n; ++i) {
        const Bus& b = net.buses[static_cast<size_t>(i)];
        y(i, i) += Complex(b.shunt_g, b.shunt_b);
    }
    return y;
}

SolvedCase solve_power_flow(const NetworkCase& net, const PowerFlowOptions& opts) {
    net.validate();
    const int n = static_cast<int>(net.buses.size());
    const Eigen::MatrixXcd y = bus_admittance(net, net.branches);

    // Specified injections: machine dispatch minus load.
    Eigen::VectorXd p_spec = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd q_spec = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        const Bus& b = net.buses[static_cast<size_t>(i)];
        p_spec(i) -= b.load_p;
        q_spec(i) -= b.load_q;
    }
    for (const Machine& mc : net.machines)
        p_spec(net.bus_index(mc.bus)) += mc.p_m;

    std::vector<int> pv, pq;
    for (int i = 0; i < n; ++i) {
        switch (net.buses[static_cast<size_t>(i)].type) {
            case BusType::PV: pv.push_back(i); break;
            case BusType::PQ: pq.push_back(i); break;
            case BusType::Slack: break;
        }
    }
    std::vector<int> pvpq = pv;
    pvpq.insert(pvpq.end(), pq.begin(), pq.end());
    const int npv = static_cast<int>(pv.size());
    const int npq = static_cast<int>(pq.size());
    const int nx = npv + 2 * npq;

    // Flat start: setpoint magnitudes, zero angles.
    Eigen::VectorXd vm(n), va = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
        const Bus& b = net.buses[static_cast<size_t>(i)];
        vm(i) = (b.type == BusType::PQ) ? 1.0 : b.v_set;
    }

    const Eigen::MatrixXd g = y.real();
    const Eigen::MatrixXd b = y.imag();

    auto injections = [&](Eigen::VectorXd& p, Eigen::VectorXd& q) {
        for (int i = 0; i < n; ++i) {
            double pi = 0.0, qi = 0.0;
            for (int j = 0; j < n; ++j) {
                const double th = va(i) - va(j);
                const double c = std::cos(th), s = std::sin(th);
                pi += vm(i) * vm(j) * (g(i, j) * c + b(i, j) * s);
                qi += vm(i) * vm(j) * (g(i, j) * s - b(i, j) * c);
            }
            p(i) = pi;
            q(i) = qi;
        }
    };

    Eigen::VectorXd p(n), q(n);
    int iter = 0;
    double worst = 0.0;
    for (;; ++iter) {
        injections(p, q);
        Eigen::VectorXd mis(nx);
        for (int a = 0; a < npv + npq; ++a) mis(a) = p_spec(pvpq[(size_t)a]) - p(pvpq[(size_t)a]);
        for (int a = 0; a < npq; ++a)
            mis(npv + npq + a) = q_spec(pq[(size_t)a]) - q(pq[(size_t)a]);
        worst = nx > 0 ? mis.cwiseAbs().maxCoeff() : 0.0;
        if (worst < opts.tolerance) break;
        if (iter >= opts.max_iterations)
            throw Error("power flow did not converge in " +
                        std::to_string(opts.max_iterations) +
                        " iterations (max mismatch " + std::to_string(worst) + " pu)");

        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(nx, nx);
        // dP/dtheta, dP/dV | dQ/dtheta, dQ/dV in polar form
        for (int a = 0; a < npv + npq; ++a) {
            const int i = pvpq[(size_t)a];
            for (int c = 0; c < npv + npq; ++c) {
                const int j = pvpq[(size_t)c];
                if (i == j)
                    jac(a, c) = -q(i) - b(i, i) * vm(i) * vm(i);
                else
                    jac(a, c) = vm(i) * vm(j) *
                                (g(i, j) * std::sin(va(i) - va(j)) -
                                 b(i, j) * std::cos(va(i) - va(j)));
            }
            for (int c = 0; c < npq; ++c) {
                const int j = pq[(size_t)c];
                if (i == j)
                    jac(a, npv + npq + c) = p(i) / vm(i) + g(i, i) * vm(i);
                else
                    jac(a, npv + npq + c) = vm(i) * (g(i, j) * std::cos(va(i) - va(j)) +
                                                     b(i, j) * std::sin(va(i) - va(j)));
            }
        }
        for (int a = 0; a < npq; ++a) {
            const int i = pq[(size_t)a];
            for (int c = 0; c < npv + npq; ++c) {
                const int j = pvpq[(size_t)c];
                if (i == j)
                    jac(npv + npq + a, c) = p(i) - g(i, i) * vm(i) * vm(i);
                else
                    jac(npv + npq + a, c) =
                        -vm(i) * vm(j) * (g(i, j) * std::cos(va(i) - va(j)) +
                                          b(i, j) * std::sin(va(i) - va(j)));
            }
            for (int c = 0; c < npq; ++c) {
                const int j = pq[(size_t)c];
                if (i == j)
                    jac(npv + npq + a, npv + npq + c) = q(i) / vm(i) - b(i, i) * vm(i);
                else
                    jac(npv + npq + a, npv + npq + c) =
                        vm(i) * (g(i, j) * std::sin(va(i) - va(j)) -
                                 b(i, j) * std::cos(va(i) - va(j)));
            }
        }

        const Eigen::VectorXd dx = jac.partialPivLu().solve(mis);
        if (!dx.allFinite())
            throw Error("power flow Jacobian solve produced non-finite update");
        for (int a = 0; a < npv + npq; ++a) va(pvpq[(size_t)a]) += dx(a);
        for (int a = 0; a < npq; ++a) vm(pq[(size_t)a]) += dx(npv + npq + a);
    }

    SolvedCase sc;
    sc.net = net;
    sc.vm = vm;
    sc.va = va;
    sc.iterations = iter;
    sc.max_mismatch = worst;

    sc.injection.resize(n);
    Eigen::VectorXcd vc(n);
    for (int i = 0; i < n; ++i) vc(i) = std::polar(vm(i), va(i));
    const Eigen::VectorXcd iinj = y * vc;
    for (int i = 0; i < n; ++i) sc.injection(i) = vc(i) * std::conj(iinj(i));

    const int nm = static_cast<int>(net.machines.size());
    sc.emf.resize(nm);
    sc.delta0.resize(nm);
    sc.m.resize(nm);
    sc.p_m.resize(nm);
    for (int k = 0; k < nm; ++k) {
        const Machine& mc = net.machines[static_cast<size_t>(k)];
        const int i = net.bus_index(mc.bus);
        const Bus& bus = net.buses[static_cast<size_t>(i)];
        // Generation = net injection + local load.
        const Complex s_gen = sc.injection(i) + Complex(bus.load_p, bus.load_q);
        const Complex v = vc(i);
        const Complex cur = std::conj(s_gen / v);
        const Complex e = v + Complex(0.0, mc.xd_prime) * cur;
        sc.emf(k) = std::abs(e);
        sc.delta0(k) = std::arg(e);
        sc.m(k) = mc.m;
        sc.p_m(k) = s_gen.real();
    }
    return sc;
}

} // namespace pairstab
