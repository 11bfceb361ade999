#pragma once

#include <optional>

#include "psap/arith.hpp"

namespace psap {

// Zero-free-region profile: no zeros with beta > 1 - eta(T), |gamma| <= T,
// save possibly one real exceptional zero.
class EtaProfile {
public:
    enum class Family { classical, vinogradov_korobov, constant, grh };

    static EtaProfile classical(double c, double t0 = 4);
    static EtaProfile vinogradov_korobov(double c = 0.05, double t0 = 100);
    static EtaProfile constant(double eta0, double t0 = 4);
    static EtaProfile grh(double t0 = 4);

    Family family() const { return family_; }
    double t0() const { return t0_; }
    double scale() const { return c_; }

    // eta(T); domain T >= t0. Values lie in (0, 1/2] and are non-increasing.
    double eta(double T) const;
    // eta_0 = lim eta(T).
    double limit() const;
    bool strictly_decreasing() const;

private:
    EtaProfile(Family f, double c, double t0);
    Family family_;
    double c_;
    double t0_;
};

// T with eta(T) = v, by bisection to 1e-9 relative; constant profiles return
// t0 by convention. Throws when v is outside the profile's range.
double eta_inverse(const EtaProfile& profile, double v);

// omega(x) = log x * eta(T*) where T* minimizes log x * eta(T) + log T over
// [t0, x]. Coarse 2048-point grid in log T, then golden-section refinement;
// ties break toward smaller T.
double omega(const EtaProfile& profile, double x);

// tau = 1 / (1 + A eta(x^{1/A})), in (1/2, 1). Throws when the hypothesis
// eta(x^{1/A}) < 1/A fails (fall back to the zero-free-region envelope).
double tau_exponent(double A, const EtaProfile& profile, double x);

// Zero-density estimate: sum over chi of N(sigma, T, chi) bounded by
// (qT)^(A(1-sigma)) g(q, T).
struct DensityEstimate {
    enum class GFamily { constant, log_power, subexp };
    double A = 2.0;
    GFamily family = GFamily::constant;
    double g0 = 1.0;  // constant-family value (>= 1)
    double B = 0.0;   // log-power exponent
    double t0 = 4;

    double g(u64 q, double T) const;
    void validate() const;
};

struct ExceptionalZero {
    u64 q = 1;
    double beta0 = 0.5;
};

// B(x, q) = x^beta0 / phi(q) when an exceptional zero is supplied, else 0.
double exceptional_term(double x, u64 q, const std::optional<ExceptionalZero>& ez);

// Siegel bound beta0 < 1 - c0 / q^eps0 with user-supplied (ineffective) c0.
double siegel_upper(u64 q, double eps0, double c0);

enum class EnvelopeMode { ingham, density };

// Lower admissibility endpoint for |y| in the all-intervals theorems; the
// admissible window is [threshold, x] (the threshold may exceed x at desk
// scale, which is reported, not an error).
double y_threshold(EnvelopeMode mode, const EtaProfile& profile, const DensityEstimate& density,
                   u64 q, double x, double eps);
bool y_admissible(EnvelopeMode mode, const EtaProfile& profile, const DensityEstimate& density,
                  u64 q, double x, double y, double eps);

// Right-hand side of the all-intervals bounds, constants normalized to 1.
double envelope_all(EnvelopeMode mode, const EtaProfile& profile, const DensityEstimate& density,
                    u64 q, double x, double y, const std::optional<ExceptionalZero>& ez);

// Lower admissibility endpoint for |h| in the almost-all theorems.
double h_threshold(EnvelopeMode mode, const EtaProfile& profile, const DensityEstimate& density,
                   u64 q, double X, double eps);

// Right-hand side of the almost-all (averaged square) bounds.
double envelope_almost_all(EnvelopeMode mode, const EtaProfile& profile,
                           const DensityEstimate& density, u64 q, double X, double h,
                           const std::optional<ExceptionalZero>& ez);

// Truncation height minimizing the zero-sum bound,
//   T = (q^(1-A eta) x^(1+eta) / |y| * log(qx)/g(q,x))^(1/(1+A eta)),
// eta = eta(x^{1/A}). `below_cap` reports T < x^{1/A}/q.
double optimal_truncation(double A, const EtaProfile& profile, const DensityEstimate& density,
                          u64 q, double x, double y, bool* below_cap = nullptr);

// Admissibility windows of the corollaries, named by the profile/density
// family they instantiate.
enum class WindowKind {
    korobov_all,           // subexponential g, all intervals
    log_power_all,         // constant eta, g = log^B, all intervals
    korobov_almost_all,    // subexponential g, almost all intervals
    log_power_almost_all,  // constant eta, g = log^B, almost all intervals
};

struct CorollaryParams {
    double A = 7.0 / 3;
    double alpha = 0.7;  // korobov kinds; requires alpha > 2/3
    double B = 0.0;      // log-power kinds
    double C = 0.0;      // log-power kinds; strict lower bounds apply
    double eta0 = 0.2;   // log-power kinds
    u64 q = 1;
    double x = 0;                  // x or X
    std::optional<double> h = {};  // almost-all kinds: evaluate exception count
};

struct CorollaryWindow {
    double lo = 0;
    double hi = 0;
    std::optional<double> exceptions;
};

CorollaryWindow corollary_window(WindowKind kind, const CorollaryParams& p);

}  // namespace psap
