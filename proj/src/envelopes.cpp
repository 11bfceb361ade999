#include "psap/envelopes.hpp"

#include <cmath>
#include <stdexcept>

namespace psap {

namespace {

double log_qx(u64 q, double x) { return std::log(static_cast<double>(q) * x); }

}  // namespace

EtaProfile::EtaProfile(Family f, double c, double t0) : family_(f), c_(c), t0_(t0) {
    if (t0_ <= 1) throw std::invalid_argument("EtaProfile: t0 must exceed 1");
    if ((f == Family::classical || f == Family::vinogradov_korobov) && c <= 0)
        throw std::invalid_argument("EtaProfile: scale constant must be positive");
    if (f == Family::constant && (c <= 0 || c > 0.5))
        throw std::invalid_argument("EtaProfile: constant eta0 must lie in (0, 1/2]");
    if (f == Family::vinogradov_korobov && t0 <= std::exp(1.0))
        throw std::invalid_argument("EtaProfile: vinogradov-korobov needs t0 > e");
}

EtaProfile EtaProfile::classical(double c, double t0) { return {Family::classical, c, t0}; }
EtaProfile EtaProfile::vinogradov_korobov(double c, double t0) {
    return {Family::vinogradov_korobov, c, t0};
}
EtaProfile EtaProfile::constant(double eta0, double t0) { return {Family::constant, eta0, t0}; }
EtaProfile EtaProfile::grh(double t0) { return {Family::grh, 0.5, t0}; }

double EtaProfile::eta(double T) const {
    if (T < t0_) throw std::invalid_argument("eta: T below the profile's domain bound");
    switch (family_) {
        case Family::classical:
            return std::min(0.5, c_ / std::log(T));
        case Family::vinogradov_korobov:
            return std::min(0.5, c_ * std::pow(std::log(T), -2.0 / 3) *
                                     std::pow(std::log(std::log(T)), -1.0 / 3));
        case Family::constant:
        case Family::grh:
            return c_;
    }
    return c_;
}

double EtaProfile::limit() const {
    switch (family_) {
        case Family::classical:
        case Family::vinogradov_korobov:
            return 0.0;
        default:
            return c_;
    }
}

bool EtaProfile::strictly_decreasing() const {
    return family_ == Family::classical || family_ == Family::vinogradov_korobov;
}

double eta_inverse(const EtaProfile& profile, double v) {
    if (!profile.strictly_decreasing()) return profile.t0();
    double top = profile.eta(profile.t0());
    if (v <= 0 || v > top) throw std::invalid_argument("eta_inverse: value outside the range of eta");
    if (v == top) return profile.t0();
    double lo = profile.t0(), hi = 2 * profile.t0();
    while (profile.eta(hi) > v) {
        lo = hi;
        hi *= 2;
        if (hi > 1e300) throw std::invalid_argument("eta_inverse: value below the range of eta");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-9 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (profile.eta(mid) > v ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double omega(const EtaProfile& profile, double x) {
    if (x <= profile.t0()) throw std::invalid_argument("omega: x must exceed the profile's t0");
    double L = std::log(x);
    auto objective = [&](double log_t) { return L * profile.eta(std::exp(log_t)) + log_t; };
    double lo = std::log(profile.t0()), hi = L;
    // Coarse bracketing grid, then golden-section refinement.
    constexpr int kGrid = 2048;
    double best = lo;
    double best_val = objective(lo);
    for (int i = 1; i <= kGrid; ++i) {
        double lt = lo + (hi - lo) * static_cast<double>(i) / kGrid;
        double val = objective(lt);
        if (val < best_val) {
            best_val = val;
            best = lt;
        }
    }
    double a = std::max(lo, best - (hi - lo) / kGrid);
    double b = std::min(hi, best + (hi - lo) / kGrid);
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
    double f1 = objective(x1), f2 = objective(x2);
    for (int it = 0; it < 120; ++it) {
        if (f1 <= f2) {  // ties toward smaller T
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = objective(x2);
        }
    }
    double t_star = std::exp(f1 <= f2 ? x1 : x2);
    return L * profile.eta(std::min(std::max(t_star, profile.t0()), x));
}

double tau_exponent(double A, const EtaProfile& profile, double x) {
    if (A < 2) throw std::invalid_argument("tau_exponent: A must be at least 2");
    double point = std::pow(x, 1.0 / A);
    double e = profile.eta(point);
    if (!(e < 1.0 / A))
        throw std::invalid_argument("tau_exponent: hypothesis eta(x^(1/A)) < 1/A fails");
    return 1.0 / (1.0 + A * e);
}

double DensityEstimate::g(u64 q, double T) const {
    validate();
    double qT = static_cast<double>(q) * T;
    switch (family) {
        case GFamily::constant:
            return g0;
        case GFamily::log_power:
            return std::pow(std::log(qT), B);
        case GFamily::subexp:
            return std::exp(std::pow(std::log(qT), 2.0 / 3));
    }
    return g0;
}

void DensityEstimate::validate() const {
    if (A < 2) throw std::invalid_argument("DensityEstimate: A must be at least 2");
    if (family == GFamily::constant && g0 < 1)
        throw std::invalid_argument("DensityEstimate: constant g must be at least 1");
    if (family == GFamily::log_power && B < 0)
        throw std::invalid_argument("DensityEstimate: log-power exponent must be nonnegative");
}

double exceptional_term(double x, u64 q, const std::optional<ExceptionalZero>& ez) {
    if (!ez) return 0.0;
    if (!(ez->beta0 > 0 && ez->beta0 < 1))
        throw std::invalid_argument("exceptional_term: beta0 must lie in (0,1)");
    return std::pow(x, ez->beta0) / static_cast<double>(euler_phi(q));
}

double siegel_upper(u64 q, double eps0, double c0) {
    if (eps0 <= 0 || c0 <= 0)
        throw std::invalid_argument("siegel_upper: eps0 and c0 must be positive");
    return 1.0 - c0 / std::pow(static_cast<double>(q), eps0);
}

double y_threshold(EnvelopeMode mode, const EtaProfile& profile, const DensityEstimate& density,
                   u64 q, double x, double eps) {
    if (eps <= 0) throw std::invalid_argument("y_threshold: eps must be positive");
    double L = log_qx(q, x);
    if (mode == EnvelopeMode::ingham) {
        double log_v = std::log(static_cast<double>(q)) + std::log(x) - omega(profile, x) +
                       (2 + eps) * std::log(L);
        return std::exp(log_v);
    }
    density.validate();
    double A = density.A;
    double e = profile.eta(std::pow(x, 1.0 / A));
    if (!(e < 1.0 / A))
        throw std::invalid_argument("y_threshold: hypothesis eta(x^(1/A)) < 1/A fails");
    double log_v = 2 * std::log(static_cast<double>(q)) + (1.0 - 1.0 / A) * std::log(x) +
                   std::log(L * density.g(q, x)) / (A * e) + (2 + eps) * std::log(L);
    return std::exp(log_v);
}

bool y_admissible(EnvelopeMode mode, const EtaProfile& profile, const DensityEstimate& density,
                  u64 q, double x, double y, double eps) {
    double lo = y_threshold(mode, profile, density, q, x, eps);
    return std::abs(y) >= lo && std::abs(y) <= x;
}

double envelope_all(EnvelopeMode mode, const EtaProfile& profile, const DensityEstimate& density,
                    u64 q, double x, double y, const std::optional<ExceptionalZero>& ez) {
    double L = log_qx(q, x);
    if (mode == EnvelopeMode::ingham)
        return exceptional_term(x, q, ez) + x * L * L * std::exp(-omega(profile, x));
    double A = density.A;
    double tau = tau_exponent(A, profile, x);
    double log_main = tau * std::log(std::abs(y)) + (1.0 - 1.0 / A) * (1.0 - tau) * std::log(x) +
                      std::log(static_cast<double>(q)) + 2 * std::log(L) +
                      tau * (std::log(density.g(q, x)) -
                             2 * std::log(static_cast<double>(q)) - std::log(L));
    return std::abs(y) / x * exceptional_term(x, q, ez) + std::exp(log_main);
}

double h_threshold(EnvelopeMode mode, const EtaProfile& profile, const DensityEstimate& density,
                   u64 q, double X, double eps) {
    if (eps <= 0) throw std::invalid_argument("h_threshold: eps must be positive");
    double L = log_qx(q, X);
    if (mode == EnvelopeMode::ingham) {
        double log_v = std::log(static_cast<double>(q)) +
                       (1.0 - 2.0 * profile.eta(X)) * std::log(X) + (2 + eps) * std::log(L);
        return std::exp(log_v);
    }
    density.validate();
    double A = density.A;
    if (!(profile.limit() < 1.0 / A))
        throw std::invalid_argument("h_threshold: hypothesis eta0 < 1/A fails");
    double e = profile.eta(X);
    double log_v = std::log(static_cast<double>(q)) + (1.0 - 2.0 / A) * std::log(X) +
                   std::log(density.g(q, X) * std::pow(L, 2 + eps)) / (A * e);
    return std::exp(log_v);
}

double envelope_almost_all(EnvelopeMode mode, const EtaProfile& profile,
                           const DensityEstimate& density, u64 q, double X, double h,
                           const std::optional<ExceptionalZero>& ez) {
    double ah = std::abs(h);
    double L = log_qx(q, X);
    double b_term = exceptional_term(X * X, q, ez);
    if (mode == EnvelopeMode::ingham) {
        double lq = std::log(static_cast<double>(q));
        double main = ah * std::pow(X, 2.0 - 2.0 * profile.eta(X)) *
                      std::pow(std::log(2.0 * static_cast<double>(q) * X / ah), 2.0);
        return ah * ah / X * b_term * lq + main;
    }
    density.validate();
    double A = density.A;
    if (!(profile.limit() < 1.0 / A))
        throw std::invalid_argument("envelope_almost_all: hypothesis eta0 < 1/A fails");
    double e = profile.eta(X);
    double ratio = ah / (static_cast<double>(q) * std::pow(X, 1.0 - 2.0 / A));
    double main = ah * ah * X * std::pow(ratio, -A * e) * density.g(q, X) * L * L /
                  static_cast<double>(euler_phi(q));
    return ah * ah / X * b_term + main;
}

double optimal_truncation(double A, const EtaProfile& profile, const DensityEstimate& density,
                          u64 q, double x, double y, bool* below_cap) {
    double e = profile.eta(std::pow(x, 1.0 / A));
    if (!(e < 1.0 / A))
        throw std::invalid_argument("optimal_truncation: hypothesis eta(x^(1/A)) < 1/A fails");
    double L = log_qx(q, x);
    double log_T = ((1.0 - A * e) * std::log(static_cast<double>(q)) + (1.0 + e) * std::log(x) -
                    std::log(std::abs(y)) + std::log(L / density.g(q, x))) /
                   (1.0 + A * e);
    double T = std::exp(log_T);
    bool ok = T < std::pow(x, 1.0 / A) / static_cast<double>(q);
    if (below_cap) *below_cap = ok;
    return T;
}

CorollaryWindow corollary_window(WindowKind kind, const CorollaryParams& p) {
    if (p.x <= 1) throw std::invalid_argument("corollary_window: x must exceed 1");
    double lx = std::log(p.x);
    double lqx = log_qx(p.q, p.x);
    CorollaryWindow w;
    w.hi = p.x;
    switch (kind) {
        case WindowKind::korobov_all: {
            if (!(p.alpha > 2.0 / 3))
                throw std::invalid_argument("corollary_window: requires alpha > 2/3");
            w.lo = std::exp((1.0 - 1.0 / p.A) * lx + std::pow(lx, p.alpha));
            break;
        }
        case WindowKind::log_power_all: {
            double min_c = 2.0 + (1.0 + p.B) / (p.A * p.eta0);
            if (!(p.C > min_c))
                throw std::invalid_argument("corollary_window: requires C > 2 + (1+B)/(A eta0)");
            w.lo = std::exp(2 * std::log(static_cast<double>(p.q)) + (1.0 - 1.0 / p.A) * lx +
                            p.C * std::log(lqx));
            break;
        }
        case WindowKind::korobov_almost_all: {
            if (!(p.alpha > 2.0 / 3))
                throw std::invalid_argument("corollary_window: requires alpha > 2/3");
            w.lo = std::exp((1.0 - 2.0 / p.A) * lx + std::pow(lx, p.alpha));
            if (p.h) {
                double arg = *p.h / (static_cast<double>(p.q) * std::pow(p.x, 1.0 - 2.0 / p.A));
                w.exceptions = p.x * std::exp(-std::log(arg) / std::pow(lx, p.alpha));
            }
            break;
        }
        case WindowKind::log_power_almost_all: {
            double min_c = (p.B + 2.0) / (p.A * p.eta0);
            if (!(p.C > min_c))
                throw std::invalid_argument("corollary_window: requires C > (B+2)/(A eta0)");
            w.lo = std::exp((1.0 + 1.0 / (p.A * p.eta0)) * std::log(static_cast<double>(p.q)) +
                            (1.0 - 2.0 / p.A) * lx + p.C * std::log(lqx));
            if (p.h) {
                double arg = *p.h / (static_cast<double>(p.q) * std::pow(p.x, 1.0 - 2.0 / p.A));
                w.exceptions = static_cast<double>(p.q) * p.x * std::pow(arg, -p.A * p.eta0) *
                               std::pow(lqx, p.C);
            }
            break;
        }
    }
    return w;
}

}  // namespace psap
