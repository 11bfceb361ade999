#pragma once

#include <variant>
#include <vector>

#include "psap/characters.hpp"
#include "psap/common.hpp"

namespace psap {

enum class Weight { theta, psi };

// Additive twist e(na/q).
struct AdditiveTwist {
    u64 a;
    u64 q;
};

// Indicator of the residue class n = a mod q.
struct ResidueClass {
    u64 a;
    u64 q;
};

using TwistKernel = std::variant<ResidueClass, AdditiveTwist, DirichletCharacter>;

struct WeightedPoint {
    u64 n;
    double log_p;  // Lambda(n) = log p for n = p^k
};

// Primes and Lambda-weighted prime powers in a half-open integer interval
// (lo, hi]. Immutable after construction.
struct PrimeSegment {
    double x = 0;  // requested real lower endpoint (exclusive)
    double y = 0;  // requested signed length; interval is (x, x+y] for y > 0
    u64 lo = 0;    // integer sieve bounds: points n with lo < n <= hi
    u64 hi = 0;
    int orientation = 1;  // -1 when y < 0: sums acquire a minus sign
    std::vector<u64> primes;
    std::vector<double> prime_logs;
    std::vector<WeightedPoint> powers;  // p^k, k >= 2 only
    u64 block_size = 0;

    bool contains(u64 n) const;
    // All weighted points (primes then powers) merged in increasing n order.
    std::vector<WeightedPoint> all_points() const;
};

inline constexpr u64 default_sieve_cap = 1'000'000'000;

// Base primes up to `limit` by plain Eratosthenes.
std::vector<u64> small_primes(u64 limit);

// Primes in the signed interval: (x, x+y] for y > 0, (x+y, x] for y < 0,
// empty for y = 0.
PrimeSegment primes_in(double x, double y, u64 cap = default_sieve_cap);

// As primes_in, but also lists prime powers p^k (k >= 2) with weight log p.
PrimeSegment lambda_points(double x, double y, u64 cap = default_sieve_cap);

// Core integer-range sieve over (lo, hi].
PrimeSegment sieve_range(u64 lo, u64 hi, bool with_powers, u64 cap = default_sieve_cap);

// Sum over the segment of weight(n) * kernel(n); the theta weight restricts to
// primes, psi uses all Lambda-weighted points. Signed intervals flip the sign.
complex twisted_sum(const PrimeSegment& seg, const TwistKernel& kernel, Weight w);

// Kernel helpers shared with the integration code.
complex kernel_value(const TwistKernel& kernel, u64 n);
u64 kernel_modulus(const TwistKernel& kernel);
void validate_kernel(const TwistKernel& kernel);

}  // namespace psap
