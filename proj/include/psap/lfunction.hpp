#pragma once

#include "psap/characters.hpp"
#include "psap/common.hpp"

namespace psap {

// Principal-branch log Gamma for Re z > 0 (Lanczos, with upward recurrence
// for small real part).
complex log_gamma(complex z);

struct HurwitzResult {
    complex value;
    double error;  // truncation bound plus rounding estimate
};

// Hurwitz zeta zeta(s, a) for s != 1, 0 < a <= 1, by Euler-Maclaurin with the
// truncation chosen so the remainder bound is below ~1e-12.
HurwitzResult hurwitz_zeta(complex s, double a);

// L(s, chi) = q^(-s) sum_r chi(r) zeta(s, r/q).
HurwitzResult dirichlet_l(complex s, const DirichletCharacter& chi);

// Rotated completed L-function on the critical line. For primitive chi,
//   Z(t) = Re[ eps^(-1/2) e^(i phase(t)) L(1/2 + it, chi) ]
// is real up to evaluation error and changes sign exactly at the zeros.
class CriticalLineFunction {
public:
    explicit CriticalLineFunction(DirichletCharacter chi);

    // Returns Z(t); optionally reports |imaginary residual| and the
    // L-evaluation error bound.
    double operator()(double t, double* imag_residual = nullptr, double* eval_error = nullptr) const;

    const DirichletCharacter& character() const { return chi_; }
    complex root_number() const { return eps_; }

private:
    DirichletCharacter chi_;
    complex eps_;       // tau(chi) / (i^a sqrt(q))
    complex rotation_;  // eps^(-1/2)
    double log_q_over_pi_;
    double re_gamma_arg_;  // (1/2 + parity) / 2
};

// Z values on a uniform t-grid; sign changes bracket zeros.
struct LValueGrid {
    std::vector<double> t;
    std::vector<double> z;
    double eval_error = 0;      // max evaluation error bound over the grid
    double imag_residual = 0;   // max |Im| of the rotated value (realness check)
};

LValueGrid evaluate_grid(const CriticalLineFunction& zf, double t_lo, double t_hi, double step,
                         unsigned threads = 1);

}  // namespace psap
