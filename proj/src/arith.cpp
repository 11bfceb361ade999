#include "psap/arith.hpp"

#include <stdexcept>

namespace psap {

u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These witnesses decide primality for all n < 2^64.
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<PrimePower> factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<PrimePower> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        PrimePower pp{p, 0, 1};
        while (n % p == 0) {
            n /= p;
            ++pp.e;
            pp.value *= p;
        }
        out.push_back(pp);
    }
    if (n > 1) out.push_back({n, 1, n});
    return out;
}

u64 euler_phi(u64 n) {
    if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
    u64 phi = 1;
    for (const auto& pp : factorize(n)) phi *= (pp.value / pp.p) * (pp.p - 1);
    return phi;
}

int mobius(u64 n) {
    if (n == 0) throw std::invalid_argument("mobius: n must be positive");
    auto f = factorize(n);
    for (const auto& pp : f)
        if (pp.e > 1) return 0;
    return (f.size() % 2 == 0) ? 1 : -1;
}

u64 primitive_root(u64 p, unsigned e) {
    if (p == 2) throw std::invalid_argument("primitive_root: p must be odd");
    u64 phi_p = p - 1;
    auto fac = factorize(phi_p);
    auto is_root_mod_p = [&](u64 g) {
        for (const auto& pp : fac)
            if (powmod(g, phi_p / pp.p, p) == 1) return false;
        return true;
    };
    u64 g = 2;
    while (!is_root_mod_p(g)) ++g;
    if (e == 1) return g;
    // g lifts to a primitive root of p^e iff g^(p-1) != 1 mod p^2.
    u64 p2 = p * p;
    if (powmod(g, p - 1, p2) == 1) g += p;
    return g;
}

u64 crt(const std::vector<u64>& residues, const std::vector<u64>& moduli) {
    if (residues.size() != moduli.size()) throw std::invalid_argument("crt: size mismatch");
    u64 m = 1, x = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        u64 mi = moduli[i], ri = residues[i] % mi;
        // Solve x + m*t = ri (mod mi).
        u64 g = gcd_u64(m % mi, mi);
        if (g != 1 && (ri + mi - x % mi) % g != 0) throw std::invalid_argument("crt: inconsistent");
        // Moduli are pairwise coprime in all internal uses, so invert directly.
        u64 minv = powmod(m % mi, euler_phi(mi) - 1, mi);
        u64 t = mulmod((ri + mi - x % mi) % mi, minv, mi);
        x += m * t;
        m *= mi;
    }
    return x % m;
}

}  // namespace psap
