#include "psap/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace psap {

complex zero_sum(double x, double y, const ZeroSet& zeros, double T) {
    if (T > zeros.t_max + 1e-9)
        throw std::invalid_argument("zero_sum: T exceeds the zero set's completeness bound");
    if (std::abs(y) < 1 || std::abs(y) > x)
        throw std::invalid_argument("zero_sum: requires 1 <= |y| <= x");
    if (x + y <= 0) throw std::invalid_argument("zero_sum: interval must stay positive");

    std::vector<std::size_t> order(zeros.zeros.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double ga = std::abs(zeros.zeros[a].gamma), gb = std::abs(zeros.zeros[b].gamma);
        if (ga != gb) return ga < gb;
        return zeros.zeros[a].gamma < zeros.zeros[b].gamma;
    });

    double lx = std::log(x), lxy = std::log(x + y);
    KahanSumC acc;
    for (std::size_t idx : order) {
        const Zero& z = zeros.zeros[idx];
        if (std::abs(z.gamma) > T) break;
        complex rho(z.beta, z.gamma);
        complex term = (std::exp(rho * lxy) - std::exp(rho * lx)) / rho;
        acc.add(-term);
    }
    return acc.value();
}

std::vector<FormulaEvaluation> residual_scan(double x, double y, const DirichletCharacter& chi,
                                             const ZeroSet& zeros,
                                             const std::vector<double>& t_list, u64 cap) {
    complex truth = chebyshev_error(x, y, TwistKernel(chi), Weight::psi, cap).value;
    double lq = std::log(static_cast<double>(std::max<u64>(chi.modulus(), 1)) * x);
    std::vector<FormulaEvaluation> out;
    out.reserve(t_list.size());
    for (double T : t_list) {
        FormulaEvaluation fe;
        fe.x = x;
        fe.y = y;
        fe.T = T;
        fe.zero_sum_value = zero_sum(x, y, zeros, T);
        fe.truth = truth;
        fe.residual = truth - fe.zero_sum_value;
        fe.envelope = x / T * lq * lq;
        out.push_back(fe);
    }
    return out;
}

double lemma_allints_bound(double x, double y, const ZeroSet& zeros, double T) {
    double lqx = std::log(static_cast<double>(std::max<u64>(zeros.q, 1)) * x);
    KahanSum sum;
    for (const Zero& z : zeros.zeros)
        if (std::abs(z.gamma) <= T) sum.add(std::pow(x, z.beta));
    return std::abs(y) / x * sum.value() + x / T * lqx * lqx;
}

double lemma_l2_bound(double X, double theta, const ZeroSet& zeros, double T) {
    if (theta <= 0 || theta > 1) throw std::invalid_argument("lemma_l2_bound: need 0 < theta <= 1");
    if (T < 4 || T > X) throw std::invalid_argument("lemma_l2_bound: need 4 <= T <= X");
    double q = static_cast<double>(std::max<u64>(zeros.q, 1));
    double lqX = std::log(q * X);
    KahanSum sum;
    for (const Zero& z : zeros.zeros) {
        double g = std::abs(z.gamma);
        if (g > T) continue;
        double weight = g == 0 ? theta * theta : std::min(theta * theta, 1.0 / (g * g));
        sum.add(std::pow(X, 1.0 + 2.0 * z.beta) * weight * std::log(q * (g + 2.0)));
    }
    double tail = X * X * X / (T * T) * lqX * lqX * lqX * lqX;
    return sum.value() + tail;
}

namespace {

struct SweepEvent {
    double pos;
    bool removal;
    u64 n;
    complex value;
};

}  // namespace

double l2_integral_range(double lo, double hi, const WindowMode& mode, const TwistKernel& kernel,
                         Weight w, u64 cap) {
    validate_kernel(kernel);
    if (hi <= lo) return 0.0;
    if (lo < 0) throw std::invalid_argument("l2_integral_range: range must be nonnegative");

    double c = main_coefficient(kernel);

    bool theta_mode = false;
    double h = 0, theta = 0;
    if (const auto* fl = std::get_if<FixedLength>(&mode)) {
        h = fl->h;
        if (h == 0 || std::abs(h) > lo)
            throw std::invalid_argument("l2_integral_range: need 0 < |h| <= lo");
        if (h < 0) {
            // |Delta(u, h)| = |Delta(u + h, -h)|: shift the range instead.
            lo += h;
            hi += h;
            h = -h;
        }
    } else {
        theta = std::get<Proportional>(mode).theta;
        if (theta <= 0 || theta > 1)
            throw std::invalid_argument("l2_integral_range: need 0 < theta <= 1");
        theta_mode = true;
    }

    double upper = theta_mode ? hi * (1.0 + theta) : hi + h;
    PrimeSegment seg =
        sieve_range(static_cast<u64>(std::floor(lo)), static_cast<u64>(std::floor(upper)),
                    w == Weight::psi, cap);
    auto points = seg.all_points();
    if (w == Weight::theta) {
        points.clear();
        points.reserve(seg.primes.size());
        for (std::size_t i = 0; i < seg.primes.size(); ++i)
            points.push_back({seg.primes[i], seg.prime_logs[i]});
    }
    if (points.size() * 2 > (1ull << 27))
        throw std::invalid_argument("l2_integral_range: event count above memory budget");

    std::vector<SweepEvent> events;
    events.reserve(points.size() * 2);
    KahanSumC window;  // running windowed sum D(u)
    for (const auto& pt : points) {
        double n = static_cast<double>(pt.n);
        if (n <= lo) continue;
        complex v = kernel_value(kernel, pt.n) * pt.log_p;
        if (v == complex(0.0, 0.0)) continue;
        double enter = theta_mode ? n / (1.0 + theta) : n - h;
        double leave = n;
        if (enter <= lo) {
            if (leave > lo) window.add(v);  // active at u = lo
        } else if (enter < hi) {
            events.push_back({enter, false, pt.n, v});
        }
        if (leave > lo && leave < hi) events.push_back({leave, true, pt.n, -v});
    }
    std::sort(events.begin(), events.end(), [](const SweepEvent& a, const SweepEvent& b) {
        if (a.pos != b.pos) return a.pos < b.pos;
        if (a.removal != b.removal) return a.removal < b.removal;
        return a.n < b.n;
    });

    KahanSum integral;
    double u_cur = lo;
    std::size_t i = 0;
    auto add_piece = [&](double u1, double u2) {
        if (u2 <= u1) return;
        complex d = window.value();
        if (theta_mode) {
            // |D - c theta u|^2 = |D|^2 - 2 c theta Re(D) u + c^2 theta^2 u^2
            double len = u2 - u1;
            double a2 = std::norm(d);
            double b1 = -2.0 * c * theta * d.real();
            double b2 = c * c * theta * theta;
            integral.add(a2 * len + b1 * 0.5 * (u2 * u2 - u1 * u1) +
                         b2 * (u2 * u2 * u2 - u1 * u1 * u1) / 3.0);
        } else {
            integral.add(std::norm(d - c * h) * (u2 - u1));
        }
    };
    while (i < events.size()) {
        double pos = events[i].pos;
        add_piece(u_cur, pos);
        while (i < events.size() && events[i].pos == pos) {
            window.add(events[i].value);
            ++i;
        }
        u_cur = pos;
    }
    add_piece(u_cur, hi);
    return integral.value();
}

double l2_integral_exact(double X, const WindowMode& mode, const TwistKernel& kernel, Weight w,
                         u64 cap) {
    if (X <= 0) throw std::invalid_argument("l2_integral_exact: X must be positive");
    return l2_integral_range(X, 2.0 * X, mode, kernel, w, cap);
}

}  // namespace psap
