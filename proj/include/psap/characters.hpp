#pragma once

#include <memory>
#include <vector>

#include "psap/arith.hpp"
#include "psap/common.hpp"

namespace psap {

// One cyclic factor of (Z/qZ)*. The 2^k part (k >= 3) contributes two
// components sharing the modulus 2^k: <-1> of order 2 and <5> of order 2^(k-2).
struct GroupComponent {
    u64 prime;
    unsigned prime_exp;
    u64 modulus;    // prime^prime_exp
    u64 generator;  // residue mod `modulus`
    u64 order;
};

class CharacterGroup;
using GroupPtr = std::shared_ptr<const CharacterGroup>;

// Multiplicative structure of (Z/qZ)*: CRT components with generators and
// discrete-log tables. Immutable after construction.
class CharacterGroup : public std::enable_shared_from_this<CharacterGroup> {
public:
    static constexpr u64 default_modulus_cap = 1'000'000;

    u64 modulus() const { return q_; }
    u64 phi() const { return phi_; }
    // lcm of component orders; common denominator of all character exponents
    u64 exponent() const { return exponent_; }
    const std::vector<PrimePower>& factorization() const { return factorization_; }
    const std::vector<GroupComponent>& components() const { return components_; }

    bool is_coprime(u64 n) const { return gcd_u64(n % std::max<u64>(q_, 1), q_) == 1 || q_ == 1; }

    // Exponent vector of n on the component generators; requires gcd(n,q)=1.
    std::vector<u32> exponents_of(u64 n) const;

    friend GroupPtr build_group(u64 q, u64 cap);

private:
    explicit CharacterGroup(u64 q);

    u64 q_ = 1;
    u64 phi_ = 1;
    u64 exponent_ = 1;
    std::vector<PrimePower> factorization_;
    std::vector<GroupComponent> components_;
    // Per component: dlog table indexed by residue mod component modulus.
    std::vector<std::vector<u32>> dlog_;
};

GroupPtr build_group(u64 q, u64 cap = CharacterGroup::default_modulus_cap);

// A Dirichlet character mod q, identified by its exponent vector on the group
// generators. Values are exact roots of unity e(num/den) with den the group
// exponent; the complex table is rendered once at construction.
class DirichletCharacter {
public:
    DirichletCharacter(GroupPtr group, std::vector<u32> exponents);

    u64 modulus() const { return group_->modulus(); }
    const GroupPtr& group() const { return group_; }
    const std::vector<u32>& exponents() const { return exps_; }

    u64 order() const { return order_; }
    int parity() const { return parity_; }  // 0: even, 1: odd (chi(-1) = (-1)^parity)
    bool is_principal() const { return order_ == 1; }
    bool is_real() const { return order_ <= 2; }
    u64 conductor() const { return conductor_; }
    bool is_primitive() const { return conductor_ == group_->modulus(); }

    complex operator()(u64 n) const { return table_[n % std::max<u64>(modulus(), 1)]; }
    complex eval_int(long long n) const;

    // Root-of-unity exponent of chi(n): numerator over `denominator()` of the
    // full turn, or -1 when gcd(n,q) > 1.
    long long unit_numerator(u64 n) const { return nums_[n % std::max<u64>(modulus(), 1)]; }
    u64 denominator() const { return group_->exponent(); }

    const std::vector<complex>& table() const { return table_; }

    DirichletCharacter conjugate() const;
    bool operator==(const DirichletCharacter& other) const {
        return group_->modulus() == other.group_->modulus() && exps_ == other.exps_;
    }

private:
    GroupPtr group_;
    std::vector<u32> exps_;
    u64 order_ = 1;
    int parity_ = 0;
    u64 conductor_ = 1;
    std::vector<long long> nums_;
    std::vector<complex> table_;
};

// All phi(q) characters of the group, in lexicographic exponent order.
std::vector<DirichletCharacter> characters(const GroupPtr& group);

DirichletCharacter principal_character(const GroupPtr& group);

// tau(chi) = sum over b mod q of chi(b) e(b/q), by direct summation.
complex gauss_sum(const DirichletCharacter& chi);

// Conrey-style labels: the residue n coprime to q whose exponent vector on the
// dual generator structure equals the character's. Principal <-> 1.
u64 conrey_label(const DirichletCharacter& chi);
DirichletCharacter character_from_label(const GroupPtr& group, u64 label);

}  // namespace psap
