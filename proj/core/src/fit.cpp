#include "pairstab/fit.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace pairstab {

const char* fit_class_name(FitClass c) {
    switch (c) {
        case FitClass::A1: return "A-1";
        case FitClass::A2: return "A-2";
        case FitClass::A3: return "A-3";
        case FitClass::A4: return "A-4";
    }
    return "?";
}

SampleWindow collect_window(const PairSeries& ps, double start, double spacing,
                            int count) {
    if (count < 5) throw Error("collect_window: at least 5 samples required");
    if (spacing <= 0.0) throw Error("collect_window: spacing must be positive");
    const double dt = ps.t.size() > 1 ? ps.t[1] - ps.t[0] : 0.0;
    if (dt <= 0.0) throw Error("collect_window: series too short");

    SampleWindow w;
    w.start = start;
    w.spacing = spacing;
    w.delta.reserve(static_cast<size_t>(count));
    w.pe.reserve(static_cast<size_t>(count));
    for (int k = 0; k < count; ++k) {
        const double t = start + k * spacing;
        const int idx = static_cast<int>(std::llround(t / dt));
        if (idx < 0 || idx >= ps.n_samples())
            throw Error("collect_window: window exceeds the simulated trajectory");
        w.delta.push_back(ps.delta(idx));
        w.pe.push_back(ps.pe(idx));
    }
    return w;
}

double KimbarkFitSin::eval(double d) const {
    return h_sin * std::sin(d) + h_cos * std::cos(d) + h_cst;
}

double KimbarkFitQr::eval(double d) const {
    return (h_q1 * d * d + h_q2 * d + h_q3) * std::sin(d) + h_cos * std::cos(d) + h_cst;
}

namespace {

Eigen::VectorXd solve_lsq(const Eigen::MatrixXd& a, const Eigen::VectorXd& y,
                          const char* what) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    qr.setThreshold(1e-10);
    if (qr.rank() < a.cols())
        throw Error(std::string(what) +
                    ": rank-deficient regressors (unusable sampling window)");
    return qr.solve(y);
}

} // namespace

KimbarkFitSin fit_sin(const SampleWindow& w) {
    const int n = w.count();
    if (n < 3) throw Error("fit_sin: window too small");
    Eigen::MatrixXd a(n, 3);
    Eigen::VectorXd y(n);
    for (int k = 0; k < n; ++k) {
        const double d = w.delta[static_cast<size_t>(k)];
        a(k, 0) = std::sin(d);
        a(k, 1) = std::cos(d);
        a(k, 2) = 1.0;
        y(k) = w.pe[static_cast<size_t>(k)];
    }
    const Eigen::VectorXd h = solve_lsq(a, y, "fit_sin");
    return KimbarkFitSin{h(0), h(1), h(2)};
}

KimbarkFitQr fit_qr(const SampleWindow& w, double sigma) {
    if (!(sigma > 0.0) || sigma > 1.0) throw Error("fit_qr: sigma must lie in (0, 1]");
    const int n = w.count();
    if (n < 5) throw Error("fit_qr: at least 5 samples required");

    Eigen::MatrixXd a(n, 5);
    Eigen::VectorXd y(n);
    for (int k = 0; k < n; ++k) {
        const double d = w.delta[static_cast<size_t>(k)];
        const double s = std::sin(d);
        a(k, 0) = d * d * s;
        a(k, 1) = d * s;
        a(k, 2) = s;
        a(k, 3) = std::cos(d);
        a(k, 4) = 1.0;
        y(k) = w.pe[static_cast<size_t>(k)];
    }
    const Eigen::VectorXd h0 = solve_lsq(a, y, "fit_qr");

    KimbarkFitQr fit;
    fit.sigma = sigma;
    fit.h_q1 = sigma * h0(0);
    fit.h_q2 = sigma * h0(1);

    // Re-identify the remaining terms with the scaled quadratic part frozen.
    Eigen::VectorXd resid = y - fit.h_q1 * a.col(0) - fit.h_q2 * a.col(1);
    const Eigen::VectorXd h1 = solve_lsq(a.rightCols(3), resid, "fit_qr");
    fit.h_q3 = h1(0);
    fit.h_cos = h1(1);
    fit.h_cst = h1(2);
    return fit;
}

double window_rms(const SampleWindow& w, const KimbarkFitSin& f) {
    double ss = 0.0;
    for (int k = 0; k < w.count(); ++k) {
        const double e = f.eval(w.delta[(size_t)k]) - w.pe[(size_t)k];
        ss += e * e;
    }
    return std::sqrt(ss / w.count());
}

double window_rms(const SampleWindow& w, const KimbarkFitQr& f) {
    double ss = 0.0;
    for (int k = 0; k < w.count(); ++k) {
        const double e = f.eval(w.delta[(size_t)k]) - w.pe[(size_t)k];
        ss += e * e;
    }
    return std::sqrt(ss / w.count());
}

double crossing_scan_end(double delta_c) {
    return std::max(M_PI, delta_c + M_PI / 2.0);
}

namespace {

// First downward crossing of p_m on the scan grid; midpoint of the bracket.
double scan_crossing(const std::function<double(double)>& f, double p_m,
                     double delta_c, double scan_end, int intervals, bool* found) {
    const double h = (scan_end - delta_c) / intervals;
    double prev = f(delta_c) - p_m;
    for (int k = 0; k < intervals; ++k) {
        const double d1 = delta_c + (k + 1) * h;
        const double cur = f(d1) - p_m;
        if (prev > 0.0 && cur < 0.0) {
            *found = true;
            return delta_c + k * h + 0.5 * h;
        }
        prev = cur;
    }
    *found = false;
    return 0.0;
}

} // namespace

Prediction classify(const KimbarkFitQr& qr, const KimbarkFitSin& sn,
                    double p_m, double delta_c, int intervals) {
    if (intervals < 100) throw Error("classify: at least 100 scan intervals required");
    Prediction pred;
    if (delta_c >= M_PI) {
        // Pathologically late clearing: no room left for deceleration.
        pred.cls = FitClass::A1;
        pred.pcmdlp = delta_c;
        pred.source = CurveSource::Qr;
        pred.late_clearing = true;
        pred.scan_end = delta_c;
        return pred;
    }
    pred.scan_end = crossing_scan_end(delta_c);
    bool qr_hit = false, sin_hit = false;
    const double x_qr = scan_crossing([&](double d) { return qr.eval(d); }, p_m,
                                      delta_c, pred.scan_end, intervals, &qr_hit);
    const double x_sin = scan_crossing([&](double d) { return sn.eval(d); }, p_m,
                                       delta_c, pred.scan_end, intervals, &sin_hit);
    if (qr_hit && sin_hit) {
        pred.cls = FitClass::A1;
        pred.pcmdlp = x_qr;
        pred.source = CurveSource::Qr;
    } else if (qr_hit) {
        pred.cls = FitClass::A2;
        pred.pcmdlp = x_qr;
        pred.source = CurveSource::Qr;
    } else if (sin_hit) {
        pred.cls = FitClass::A3;
        pred.pcmdlp = x_sin;
        pred.source = CurveSource::Sin;
    } else {
        pred.cls = FitClass::A4;
        pred.pcmdlp = pred.scan_end;
        pred.source = CurveSource::None;
    }
    return pred;
}

double predicted_dec_area_fn(const std::function<double(double)>& fit, double p_m,
                             double delta_c, double pcmdlp, int intervals,
                             double scan_end) {
    if (pcmdlp <= delta_c) throw Error("predicted_dec_area: pcmdlp must exceed delta_c");
    const double h = (scan_end - delta_c) / intervals;
    double area = 0.0;
    for (int k = 0; k < intervals; ++k) {
        const double d0 = delta_c + k * h;
        const double d1 = delta_c + (k + 1) * h;
        if (d1 <= pcmdlp) {
            area += 0.5 * (fit(d0) + fit(d1) - 2.0 * p_m) * (d1 - d0);
        } else {
            if (pcmdlp > d0)
                area += 0.5 * (fit(d0) + fit(pcmdlp) - 2.0 * p_m) * (pcmdlp - d0);
            break;
        }
    }
    return area;
}

double predicted_dec_area(const KimbarkFitQr& fit, double p_m, double delta_c,
                          double pcmdlp, int intervals) {
    return predicted_dec_area_fn([&](double d) { return fit.eval(d); }, p_m, delta_c,
                                 pcmdlp, intervals, crossing_scan_end(delta_c));
}

} // namespace pairstab
