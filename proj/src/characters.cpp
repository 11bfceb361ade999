#include "psap/characters.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace psap {

namespace {

u64 lcm_u64(u64 a, u64 b) { return a / gcd_u64(a, b) * b; }

unsigned valuation(u64 n, u64 p) {
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

}  // namespace

CharacterGroup::CharacterGroup(u64 q) : q_(q) {
    factorization_ = factorize(q);
    phi_ = euler_phi(q);

    for (const auto& pp : factorization_) {
        if (pp.p == 2) {
            if (pp.e == 1) continue;  // (Z/2)* trivial
            u64 m = pp.value;
            if (pp.e == 2) {
                components_.push_back({2, pp.e, m, m - 1, 2});
                std::vector<u32> table(m, 0);
                table[1] = 0;
                table[m - 1] = 1;
                dlog_.push_back(std::move(table));
            } else {
                // <-1> x <5>
                components_.push_back({2, pp.e, m, m - 1, 2});
                components_.push_back({2, pp.e, m, 5, m / 4});
                std::vector<u32> sign_table(m, 0), five_table(m, 0);
                u64 pow5 = 1;
                for (u64 t = 0; t < m / 4; ++t) {
                    sign_table[pow5] = 0;
                    five_table[pow5] = static_cast<u32>(t);
                    u64 neg = m - pow5;
                    sign_table[neg] = 1;
                    five_table[neg] = static_cast<u32>(t);
                    pow5 = (pow5 * 5) % m;
                }
                dlog_.push_back(std::move(sign_table));
                dlog_.push_back(std::move(five_table));
            }
        } else {
            u64 m = pp.value;
            u64 g = primitive_root(pp.p, pp.e);
            u64 order = (m / pp.p) * (pp.p - 1);
            components_.push_back({pp.p, pp.e, m, g, order});
            std::vector<u32> table(m, 0);
            u64 pw = 1;
            for (u64 t = 0; t < order; ++t) {
                table[pw] = static_cast<u32>(t);
                pw = (pw * g) % m;
            }
            dlog_.push_back(std::move(table));
        }
    }

    exponent_ = 1;
    u64 order_product = 1;
    for (const auto& c : components_) {
        exponent_ = lcm_u64(exponent_, c.order);
        order_product *= c.order;
    }
    if (order_product != phi_) throw std::logic_error("component orders do not multiply to phi(q)");
}

std::vector<u32> CharacterGroup::exponents_of(u64 n) const {
    if (!is_coprime(n)) throw std::invalid_argument("exponents_of: residue not coprime to modulus");
    std::vector<u32> out(components_.size());
    for (std::size_t j = 0; j < components_.size(); ++j)
        out[j] = dlog_[j][n % components_[j].modulus];
    return out;
}

GroupPtr build_group(u64 q, u64 cap) {
    if (q == 0) throw std::invalid_argument("build_group: modulus must be positive");
    if (q > cap) throw std::invalid_argument("build_group: modulus exceeds table cap");
    return GroupPtr(new CharacterGroup(q));
}

DirichletCharacter::DirichletCharacter(GroupPtr group, std::vector<u32> exponents)
    : group_(std::move(group)), exps_(std::move(exponents)) {
    const auto& comps = group_->components();
    if (exps_.size() != comps.size())
        throw std::invalid_argument("DirichletCharacter: exponent vector size mismatch");
    for (std::size_t j = 0; j < exps_.size(); ++j) exps_[j] %= static_cast<u32>(comps[j].order);

    order_ = 1;
    for (std::size_t j = 0; j < exps_.size(); ++j) {
        u64 d = comps[j].order;
        order_ = lcm_u64(order_, d / gcd_u64(d, exps_[j]));
    }

    // Conductor, one prime at a time. For odd p^e with component exponent c,
    // the character factors through p^f exactly when p^(e-f) divides c.
    conductor_ = 1;
    for (std::size_t j = 0; j < comps.size(); ++j) {
        const auto& c = comps[j];
        u64 cj = exps_[j];
        if (c.prime != 2) {
            if (cj != 0) {
                unsigned f = c.prime_exp - std::min<unsigned>(valuation(cj, c.prime), c.prime_exp - 1);
                u64 pf = 1;
                for (unsigned i = 0; i < f; ++i) pf *= c.prime;
                conductor_ *= pf;
            }
        }
    }
    {
        u64 two_part = 1;
        u64 c_sign = 0, c_five = 0;
        bool has_five = false;
        unsigned e2 = 0;
        for (std::size_t j = 0; j < comps.size(); ++j) {
            if (comps[j].prime != 2) continue;
            e2 = comps[j].prime_exp;
            if (comps[j].generator == 5)
                c_five = exps_[j], has_five = true;
            else
                c_sign = exps_[j];
        }
        if (has_five && c_five != 0) {
            unsigned f = e2 - valuation(c_five, 2);
            two_part = 1ull << f;
        } else if (c_sign != 0) {
            two_part = 4;
        }
        conductor_ *= two_part;
    }

    // Value table: exact root-of-unity numerators, then complex once.
    u64 q = group_->modulus();
    u64 den = group_->exponent();
    nums_.assign(std::max<u64>(q, 1), -1);
    if (q == 1) {
        nums_[0] = 0;
    } else {
        const auto& dlogs = *group_;
        for (u64 n = 0; n < q; ++n) {
            if (gcd_u64(n, q) != 1) continue;
            u64 acc = 0;
            auto ev = dlogs.exponents_of(n);
            for (std::size_t j = 0; j < comps.size(); ++j) {
                u64 step = den / comps[j].order;
                acc = (acc + static_cast<u64>(exps_[j]) * ev[j] % den * step) % den;
            }
            nums_[n] = static_cast<long long>(acc);
        }
    }
    table_.resize(nums_.size());
    for (std::size_t n = 0; n < nums_.size(); ++n)
        table_[n] = nums_[n] < 0 ? complex(0.0, 0.0)
                                 : unit_exp(static_cast<double>(nums_[n]) / static_cast<double>(den));

    // chi(-1): numerator is 0 (even) or den/2 (odd).
    if (q <= 2) {
        parity_ = 0;
    } else {
        long long m = nums_[q - 1];
        parity_ = (m == 0) ? 0 : 1;
    }
}

complex DirichletCharacter::eval_int(long long n) const {
    u64 q = std::max<u64>(modulus(), 1);
    long long r = n % static_cast<long long>(q);
    if (r < 0) r += static_cast<long long>(q);
    return table_[static_cast<u64>(r)];
}

DirichletCharacter DirichletCharacter::conjugate() const {
    const auto& comps = group_->components();
    std::vector<u32> ex(exps_.size());
    for (std::size_t j = 0; j < exps_.size(); ++j)
        ex[j] = exps_[j] == 0 ? 0 : static_cast<u32>(comps[j].order - exps_[j]);
    return DirichletCharacter(group_, std::move(ex));
}

std::vector<DirichletCharacter> characters(const GroupPtr& group) {
    u64 phi = group->phi();
    if (phi * group->modulus() > (1ull << 27))
        throw std::invalid_argument("characters: full table set exceeds memory budget");
    std::vector<DirichletCharacter> out;
    out.reserve(phi);
    const auto& comps = group->components();
    std::vector<u32> ex(comps.size(), 0);
    while (true) {
        out.emplace_back(group, ex);
        std::size_t j = 0;
        for (; j < comps.size(); ++j) {
            if (++ex[j] < comps[j].order) break;
            ex[j] = 0;
        }
        if (j == comps.size()) break;
    }
    if (out.size() != phi) throw std::logic_error("characters: enumeration mismatch");
    return out;
}

DirichletCharacter principal_character(const GroupPtr& group) {
    return DirichletCharacter(group, std::vector<u32>(group->components().size(), 0));
}

complex gauss_sum(const DirichletCharacter& chi) {
    u64 q = chi.modulus();
    KahanSumC acc;
    for (u64 b = 0; b < std::max<u64>(q, 1); ++b) {
        complex v = chi(b);
        if (v == complex(0.0, 0.0)) continue;
        acc.add(v * unit_exp(static_cast<double>(b) / static_cast<double>(q)));
    }
    return acc.value();
}

u64 conrey_label(const DirichletCharacter& chi) {
    const auto& group = *chi.group();
    u64 q = group.modulus();
    if (q <= 2) return 1;
    const auto& comps = group.components();
    const auto& ex = chi.exponents();
    // Residues per distinct prime-power modulus.
    std::vector<u64> residues, moduli;
    for (std::size_t j = 0; j < comps.size(); ++j) {
        u64 m = comps[j].modulus;
        u64 r = powmod(comps[j].generator, ex[j], m);
        // The two components of the 2^k (k>=3) part share a modulus; merge.
        if (!moduli.empty() && moduli.back() == m) {
            residues.back() = mulmod(residues.back(), r, m);
        } else {
            moduli.push_back(m);
            residues.push_back(r);
        }
    }
    // (Z/2)* contributes no component; its modulus must still enter the CRT.
    for (const auto& pp : group.factorization()) {
        if (pp.p == 2 && pp.e == 1) {
            moduli.push_back(2);
            residues.push_back(1);
        }
    }
    if (moduli.empty()) return 1;
    u64 n = crt(residues, moduli);
    return n == 0 ? 1 : n;
}

DirichletCharacter character_from_label(const GroupPtr& group, u64 label) {
    u64 q = group->modulus();
    if (q <= 1) {
        if (label != 1) throw std::invalid_argument("character_from_label: label must be 1 for q=1");
        return principal_character(group);
    }
    u64 n = label % q;
    if (n == 0 || gcd_u64(n, q) != 1)
        throw std::invalid_argument("character_from_label: label not coprime to modulus");
    return DirichletCharacter(group, group->exponents_of(n));
}

}  // namespace psap
