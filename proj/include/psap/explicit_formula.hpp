#pragma once

#include "psap/chebyshev.hpp"
#include "psap/zeros.hpp"

namespace psap {

// Truncated explicit-formula zero sum:
//   -sum over zeros with |gamma| <= T of ((x+y)^rho - x^rho)/rho,
// accumulated from small |gamma| upward with compensated summation.
complex zero_sum(double x, double y, const ZeroSet& zeros, double T);

struct FormulaEvaluation {
    double x = 0;
    double y = 0;
    double T = 0;
    complex zero_sum_value;
    complex truth;     // sieved Delta_psi(x, y, chi)
    complex residual;  // truth - zero_sum_value
    double envelope;   // (x/T) log^2(qx), constant normalized to 1
};

// Residuals of the truncated formula against the sieved truth for each T.
std::vector<FormulaEvaluation> residual_scan(double x, double y, const DirichletCharacter& chi,
                                             const ZeroSet& zeros,
                                             const std::vector<double>& t_list,
                                             u64 cap = default_sieve_cap);

// (|y|/x) sum_{|gamma|<=T} x^beta + (x/T) log^2(qx)
double lemma_allints_bound(double x, double y, const ZeroSet& zeros, double T);

// sum_{|gamma|<=T} X^(1+2beta) min(theta^2, gamma^-2) log(q(|gamma|+2))
//   + (X^3/T^2) log^4(qX)
double lemma_l2_bound(double X, double theta, const ZeroSet& zeros, double T);

// Window mode for the squared-error integrals: fixed-length windows
// (u, u+h] or proportional windows (u, u(1+theta)].
struct FixedLength {
    double h;
};
struct Proportional {
    double theta;
};
using WindowMode = std::variant<FixedLength, Proportional>;

// Exact integral of |Delta(u, window, kernel)|^2 du over [lo, hi] by event
// sweep. In h-mode the integrand is piecewise constant in u; in theta-mode it
// is piecewise quadratic. Each piece is integrated in closed form.
double l2_integral_range(double lo, double hi, const WindowMode& mode, const TwistKernel& kernel,
                         Weight w, u64 cap = default_sieve_cap);

// The standard range [X, 2X].
double l2_integral_exact(double X, const WindowMode& mode, const TwistKernel& kernel, Weight w,
                         u64 cap = default_sieve_cap);

}  // namespace psap
