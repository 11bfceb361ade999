#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace psap {

using complex = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

// e(x) = exp(2*pi*i*x)
inline complex unit_exp(double x) {
    return {std::cos(two_pi * x), std::sin(two_pi * x)};
}

// Compensated (Kahan-Neumaier) accumulator. Long sieve sums cancel against
// main terms of comparable size, so the naive running error is not acceptable.
class KahanSum {
public:
    void add(double v) {
        double t = sum_ + v;
        comp_ += (std::abs(sum_) >= std::abs(v)) ? (sum_ - t) + v : (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class KahanSumC {
public:
    void add(complex v) {
        re_.add(v.real());
        im_.add(v.imag());
    }
    complex value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_, im_;
};

// Runs fn(i) for i in [0, n). Each index is computed independently and results
// must be written to caller-owned slots, so the outcome is identical for any
// thread count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         unsigned threads = 1) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    unsigned nt = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::size_t chunk = (n + nt - 1) / nt;
    for (unsigned t = 0; t < nt; ++t) {
        std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Default printing uses 9 significant digits; CSV and --full use 17.
std::string format_number(double v, int sig_digits = 9);
std::string format_complex(complex v, int sig_digits = 9);

// FNV-1a 64-bit, used for input digests in experiment reports.
std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed = 14695981039346656037ull);
std::uint64_t fnv1a_file(const std::string& path);

}  // namespace psap
