#pragma once

// Test-side oracles, independent of the library's event-sweep machinery:
// fresh window sums via binary search, plus piecewise-exact quadrature at a
// fixed step resolution.

#include <algorithm>
#include <cmath>
#include <vector>

#include "psap/chebyshev.hpp"

namespace psap::test_oracles {

struct PointList {
    std::vector<double> pos;
    std::vector<complex> val;

    static PointList build(double lo, double hi, const TwistKernel& kernel, Weight w) {
        PrimeSegment seg = w == Weight::psi ? lambda_points(lo, hi - lo) : primes_in(lo, hi - lo);
        PointList out;
        auto push = [&](u64 n, double lp) {
            out.pos.push_back(static_cast<double>(n));
            out.val.push_back(kernel_value(kernel, n) * lp);
        };
        if (w == Weight::psi) {
            for (const auto& p : seg.all_points()) push(p.n, p.log_p);
        } else {
            for (std::size_t i = 0; i < seg.primes.size(); ++i)
                push(seg.primes[i], seg.prime_logs[i]);
        }
        return out;
    }

    complex window(double u, double len) const {
        auto lo = std::upper_bound(pos.begin(), pos.end(), u);
        auto hi = std::upper_bound(pos.begin(), pos.end(), u + len);
        complex s = 0;
        for (auto it = lo; it != hi; ++it) s += val[static_cast<std::size_t>(it - pos.begin())];
        return s;
    }
};

// Midpoint quadrature for the fixed-length mode. With integer h every jump of
// the integrand sits on an integer, so step-1 midpoint sampling is exact.
inline double h_mode_quadrature(double X, double h, const TwistKernel& kernel, Weight w) {
    PointList pts = PointList::build(X, 2 * X + h + 1, kernel, w);
    double c = main_coefficient(kernel);
    KahanSum acc;
    for (double u = X + 0.5; u < 2 * X; u += 1.0) acc.add(std::norm(pts.window(u, h) - c * h));
    return acc.value();
}

// Step-resolution quadrature for the proportional mode: cells of width `step`
// split at the integrand's jump positions (re-derived here from the window
// membership rule n/(1+theta) <= u < n), with the quadratic midpoint
// correction applied per piece.
inline double theta_mode_quadrature(double X, double theta, const TwistKernel& kernel, Weight w,
                                    double step = 1e-2) {
    PointList pts = PointList::build(X, 2 * X * (1 + theta) + 1, kernel, w);
    double c = main_coefficient(kernel);
    KahanSum acc;
    std::size_t cells = static_cast<std::size_t>(std::ceil(X / step));
    for (std::size_t k = 0; k < cells; ++k) {
        double a = X + static_cast<double>(k) * step;
        double b = std::min(2 * X, a + step);
        if (b <= a) break;
        std::vector<double> cuts{a, b};
        for (double n = std::floor(a) + 1; n < b; n += 1.0)
            if (n > a) cuts.push_back(n);
        double am = a * (1 + theta), bm = b * (1 + theta);
        for (double n = std::floor(am) + 1; n <= bm; n += 1.0) {
            double enter = n / (1 + theta);
            if (enter > a && enter < b) cuts.push_back(enter);
        }
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double p = cuts[i], q = cuts[i + 1];
            if (q <= p) continue;
            double mid = 0.5 * (p + q), len = q - p;
            complex d = pts.window(mid, theta * mid) - c * theta * mid;
            acc.add(std::norm(d) * len + c * c * theta * theta * len * len * len / 12.0);
        }
    }
    return acc.value();
}

}  // namespace psap::test_oracles
