#pragma once

#include <cstdint>
#include <vector>

namespace psap {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

struct PrimePower {
    u64 p;
    unsigned e;
    u64 value;  // p^e
};

u64 gcd_u64(u64 a, u64 b);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime_u64(u64 n);

// Trial-division factorization, ascending prime order. n >= 1.
std::vector<PrimePower> factorize(u64 n);

u64 euler_phi(u64 n);
int mobius(u64 n);

// Smallest primitive root of p^e (p odd prime, e >= 1).
u64 primitive_root(u64 p, unsigned e);

// x with x = r[i] mod m[i], moduli pairwise coprime; result mod prod(m).
u64 crt(const std::vector<u64>& residues, const std::vector<u64>& moduli);

}  // namespace psap
