#pragma once

#include "psap/sieve.hpp"

namespace psap {

// Twisted Chebyshev error term: the weighted prime(-power) sum over (x, x+y]
// minus the kernel's main term. The arithmetic-progression variant is real;
// character and additive variants are complex.
struct DeltaResult {
    double x = 0;
    double y = 0;
    TwistKernel kernel;
    Weight weight = Weight::theta;
    complex value;
    double main_term = 0;     // coefficient * y actually subtracted
    double main_coef = 0;     // delta_chi, mu(q)/phi(q) or 1/phi(q)
    bool real_variant = false;

    double real_value() const { return value.real(); }
};

// Main-term coefficient of a kernel: delta_chi for characters, mu(q)/phi(q)
// for additive twists, 1/phi(q) for residue classes.
double main_coefficient(const TwistKernel& kernel);

DeltaResult chebyshev_error(double x, double y, const TwistKernel& kernel, Weight w,
                            u64 cap = default_sieve_cap);

// |Delta_psi - Delta_theta| for the same character; the prime-power tail.
double psi_theta_gap(double x, double y, const TwistKernel& kernel, u64 cap = default_sieve_cap);

struct ApDecomposition {
    DeltaResult direct;       // residue-class sweep
    complex reconstructed;    // (1/phi) sum over chi of conj(chi(a)) Delta(chi)
};

// Character decomposition of the progression error term; exact identity.
ApDecomposition decompose_ap(double x, double y, u64 q, u64 a, Weight w,
                             u64 cap = default_sieve_cap);

struct AdditiveDecomposition {
    DeltaResult direct;     // additive-twist sweep
    complex reconstructed;  // (1/phi) sum over chi of chi(a) tau(conj chi) Delta(chi)
    double residual;        // |direct - reconstructed|; prime powers dividing q
};

AdditiveDecomposition decompose_additive(double x, double y, u64 q, u64 a, Weight w,
                                         u64 cap = default_sieve_cap);

enum class SquareVariant { arithmetic_progression, additive };

struct AveragedSquare {
    double lhs;  // sum over coprime residues a of |Delta(x,y,q,a)|^2
    double rhs;  // (1/phi) sum over chi of [|tau(chi)|^2] |Delta(x,y,chi)|^2
};

// Both sides of the averaged-square identity through independent code paths.
AveragedSquare averaged_square(double x, double y, u64 q, SquareVariant variant, Weight w,
                               u64 cap = default_sieve_cap);

}  // namespace psap
