#pragma once

#include <functional>
#include <vector>

#include "pairstab/pairs.hpp"

namespace pairstab {

// Post-clearing samples of (delta_ij, P_eij) for curve identification.
struct SampleWindow {
    double start = 0.0;    // s, absolute trajectory time of the first sample
    double spacing = 0.0;  // s
    std::vector<double> delta;
    std::vector<double> pe;

    int count() const { return static_cast<int>(delta.size()); }
};

// Nearest-sample extraction at the requested cadence; count >= 5.
SampleWindow collect_window(const PairSeries& ps, double start, double spacing, int count);

// P = H_sin sin d + H_cos cos d + H_cst
struct KimbarkFitSin {
    double h_sin = 0.0, h_cos = 0.0, h_cst = 0.0;
    double eval(double d) const;
};

// P = (H_q1 d^2 + H_q2 d + H_q3) sin d + H_cos cos d + H_cst
struct KimbarkFitQr {
    double h_q1 = 0.0, h_q2 = 0.0, h_q3 = 0.0, h_cos = 0.0, h_cst = 0.0;
    double sigma = 1.0;
    double eval(double d) const;
};

// Least squares by column-pivoted QR; throws Error on a rank-deficient
// regressor matrix (e.g. delta nearly constant over the window).
KimbarkFitSin fit_sin(const SampleWindow& w);

// Weighted three-step identification: full fit, quadratic terms scaled by
// sigma, then H_q3/H_cos/H_cst re-fit with the scaled terms frozen.
KimbarkFitQr fit_qr(const SampleWindow& w, double sigma);

double window_rms(const SampleWindow& w, const KimbarkFitSin& f);
double window_rms(const SampleWindow& w, const KimbarkFitQr& f);

enum class FitClass { A1, A2, A3, A4 };

const char* fit_class_name(FitClass c);

enum class CurveSource { Qr, Sin, None };

struct Prediction {
    FitClass cls = FitClass::A4;
    double pcmdlp = 0.0;
    CurveSource source = CurveSource::None; // curve that supplied the PCMDLP
    bool late_clearing = false;             // delta_c >= pi at clearing
    double scan_end = 0.0;                  // upper bound of the crossing scan
};

// Scans [delta_c, max(pi, delta_c + pi/2)] on a uniform grid for each fitted
// curve's downward crossing of p_m; crossing angle is the midpoint of the
// bracketing grid points. A-4 takes the scan end as its PCMDLP.
Prediction classify(const KimbarkFitQr& qr, const KimbarkFitSin& sn,
                    double p_m, double delta_c, int intervals = 1000);

// Trapezoidal integral of (fit(d) - p_m) from delta_c to pcmdlp on the same
// uniform grid the classification scanned.
double predicted_dec_area(const KimbarkFitQr& fit, double p_m, double delta_c,
                          double pcmdlp, int intervals = 1000);

// Generic-curve form; the grid spans [delta_c, scan_end] in `intervals` steps.
double predicted_dec_area_fn(const std::function<double(double)>& fit, double p_m,
                             double delta_c, double pcmdlp, int intervals,
                             double scan_end);

double crossing_scan_end(double delta_c);

} // namespace pairstab
