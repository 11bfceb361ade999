#include "psap/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace psap {

namespace {

constexpr u64 kBlockSize = 1ull << 18;

std::pair<u64, u64> integer_bounds(double x, double y) {
    double lo_r = y >= 0 ? x : x + y;
    double hi_r = y >= 0 ? x + y : x;
    if (lo_r < 0) throw std::invalid_argument("sieve: interval extends below 0");
    return {static_cast<u64>(std::floor(lo_r)), static_cast<u64>(std::floor(hi_r))};
}

}  // namespace

bool PrimeSegment::contains(u64 n) const {
    return std::binary_search(primes.begin(), primes.end(), n) ||
           std::any_of(powers.begin(), powers.end(), [n](const WeightedPoint& w) { return w.n == n; });
}

std::vector<WeightedPoint> PrimeSegment::all_points() const {
    std::vector<WeightedPoint> out;
    out.reserve(primes.size() + powers.size());
    std::size_t i = 0, j = 0;
    while (i < primes.size() || j < powers.size()) {
        if (j == powers.size() || (i < primes.size() && primes[i] < powers[j].n))
            out.push_back({primes[i], prime_logs[i]}), ++i;
        else
            out.push_back(powers[j]), ++j;
    }
    return out;
}

std::vector<u64> small_primes(u64 limit) {
    if (limit < 2) return {};
    std::vector<bool> comp(limit + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
    }
    return out;
}

PrimeSegment sieve_range(u64 lo, u64 hi, bool with_powers, u64 cap) {
    if (hi > cap) throw std::invalid_argument("sieve: range exceeds configured cap");
    PrimeSegment seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.block_size = kBlockSize;
    if (hi <= lo) return seg;

    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 2;
    auto base = small_primes(root);

    if (lo < 2 && hi >= 2) seg.primes.push_back(2);
    if (lo < 3 && hi >= 3) seg.primes.push_back(3);

    // Odd-only bitset blocks over (lo, hi].
    u64 start = std::max<u64>(lo + 1, 5);
    if (start % 2 == 0) ++start;
    for (u64 block_lo = start; block_lo <= hi; block_lo += 2 * kBlockSize) {
        u64 block_hi = std::min(hi, block_lo + 2 * kBlockSize - 2);  // odd values block_lo..block_hi
        u64 count = (block_hi - block_lo) / 2 + 1;
        std::vector<bool> comp(count, false);
        for (u64 p : base) {
            if (p == 2) continue;
            if (p * p > block_hi) break;
            u64 first = std::max(p * p, ((block_lo + p - 1) / p) * p);
            if (first % 2 == 0) first += p;
            for (u64 m = first; m <= block_hi; m += 2 * p) comp[(m - block_lo) / 2] = true;
        }
        for (u64 i = 0; i < count; ++i)
            if (!comp[i]) seg.primes.push_back(block_lo + 2 * i);
    }
    seg.prime_logs.resize(seg.primes.size());
    for (std::size_t i = 0; i < seg.primes.size(); ++i)
        seg.prime_logs[i] = std::log(static_cast<double>(seg.primes[i]));

    if (with_powers) {
        for (u64 p : base) {
            if (p * p > hi) break;
            double lp = std::log(static_cast<double>(p));
            u64 pk = p * p;
            while (true) {
                if (pk > lo && pk <= hi) seg.powers.push_back({pk, lp});
                if (pk > hi / p) break;
                pk *= p;
            }
        }
        std::sort(seg.powers.begin(), seg.powers.end(),
                  [](const WeightedPoint& a, const WeightedPoint& b) { return a.n < b.n; });
    }
    return seg;
}

PrimeSegment primes_in(double x, double y, u64 cap) {
    auto [lo, hi] = integer_bounds(x, y);
    PrimeSegment seg = sieve_range(lo, hi, false, cap);
    seg.x = x;
    seg.y = y;
    seg.orientation = y < 0 ? -1 : 1;
    return seg;
}

PrimeSegment lambda_points(double x, double y, u64 cap) {
    auto [lo, hi] = integer_bounds(x, y);
    PrimeSegment seg = sieve_range(lo, hi, true, cap);
    seg.x = x;
    seg.y = y;
    seg.orientation = y < 0 ? -1 : 1;
    return seg;
}

complex kernel_value(const TwistKernel& kernel, u64 n) {
    if (const auto* chi = std::get_if<DirichletCharacter>(&kernel)) return (*chi)(n);
    if (const auto* add = std::get_if<AdditiveTwist>(&kernel))
        return unit_exp(static_cast<double>(mulmod(n % add->q, add->a, add->q)) /
                        static_cast<double>(add->q));
    const auto& rc = std::get<ResidueClass>(kernel);
    return n % rc.q == rc.a % rc.q ? complex(1.0, 0.0) : complex(0.0, 0.0);
}

u64 kernel_modulus(const TwistKernel& kernel) {
    if (const auto* chi = std::get_if<DirichletCharacter>(&kernel)) return chi->modulus();
    if (const auto* add = std::get_if<AdditiveTwist>(&kernel)) return add->q;
    return std::get<ResidueClass>(kernel).q;
}

void validate_kernel(const TwistKernel& kernel) {
    if (const auto* add = std::get_if<AdditiveTwist>(&kernel)) {
        if (add->q == 0) throw std::invalid_argument("additive twist: modulus must be positive");
        if (add->q != 1 && gcd_u64(add->a % add->q, add->q) != 1)
            throw std::invalid_argument("additive twist: residue not coprime to modulus");
    } else if (const auto* rc = std::get_if<ResidueClass>(&kernel)) {
        if (rc->q == 0) throw std::invalid_argument("residue class: modulus must be positive");
        if (rc->q != 1 && gcd_u64(rc->a % rc->q, rc->q) != 1)
            throw std::invalid_argument("residue class: residue not coprime to modulus");
    }
}

complex twisted_sum(const PrimeSegment& seg, const TwistKernel& kernel, Weight w) {
    validate_kernel(kernel);
    KahanSumC acc;
    if (const auto* chi = std::get_if<DirichletCharacter>(&kernel)) {
        u64 q = std::max<u64>(chi->modulus(), 1);
        const auto& table = chi->table();
        for (std::size_t i = 0; i < seg.primes.size(); ++i) {
            const complex v = table[seg.primes[i] % q];
            if (v != complex(0.0, 0.0)) acc.add(seg.prime_logs[i] * v);
        }
        if (w == Weight::psi)
            for (const auto& pt : seg.powers) {
                const complex v = table[pt.n % q];
                if (v != complex(0.0, 0.0)) acc.add(pt.log_p * v);
            }
    } else {
        for (std::size_t i = 0; i < seg.primes.size(); ++i) {
            const complex v = kernel_value(kernel, seg.primes[i]);
            if (v != complex(0.0, 0.0)) acc.add(seg.prime_logs[i] * v);
        }
        if (w == Weight::psi)
            for (const auto& pt : seg.powers) {
                const complex v = kernel_value(kernel, pt.n);
                if (v != complex(0.0, 0.0)) acc.add(pt.log_p * v);
            }
    }
    return static_cast<double>(seg.orientation) * acc.value();
}

}  // namespace psap
