#include "psap/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

namespace psap {

double main_coefficient(const TwistKernel& kernel) {
    if (const auto* chi = std::get_if<DirichletCharacter>(&kernel))
        return chi->is_principal() ? 1.0 : 0.0;
    if (const auto* add = std::get_if<AdditiveTwist>(&kernel))
        return static_cast<double>(mobius(add->q)) / static_cast<double>(euler_phi(add->q));
    const auto& rc = std::get<ResidueClass>(kernel);
    return 1.0 / static_cast<double>(euler_phi(rc.q));
}

DeltaResult chebyshev_error(double x, double y, const TwistKernel& kernel, Weight w, u64 cap) {
    validate_kernel(kernel);
    PrimeSegment seg = w == Weight::psi ? lambda_points(x, y, cap) : primes_in(x, y, cap);
    DeltaResult res;
    res.x = x;
    res.y = y;
    res.kernel = kernel;
    res.weight = w;
    res.main_coef = main_coefficient(kernel);
    res.main_term = res.main_coef * y;
    res.value = twisted_sum(seg, kernel, w) - res.main_term;
    res.real_variant = std::holds_alternative<ResidueClass>(kernel);
    return res;
}

double psi_theta_gap(double x, double y, const TwistKernel& kernel, u64 cap) {
    if (std::abs(y) < 1.0 || std::abs(y) > x)
        throw std::invalid_argument("psi_theta_gap: requires 1 <= |y| <= x");
    DeltaResult psi = chebyshev_error(x, y, kernel, Weight::psi, cap);
    DeltaResult theta = chebyshev_error(x, y, kernel, Weight::theta, cap);
    return std::abs(psi.value - theta.value);
}

ApDecomposition decompose_ap(double x, double y, u64 q, u64 a, Weight w, u64 cap) {
    ApDecomposition out{chebyshev_error(x, y, ResidueClass{a, q}, w, cap), {}};
    auto group = build_group(q);
    PrimeSegment seg = w == Weight::psi ? lambda_points(x, y, cap) : primes_in(x, y, cap);
    KahanSumC acc;
    for (const auto& chi : characters(group)) {
        complex d = twisted_sum(seg, chi, w) - main_coefficient(chi) * y;
        acc.add(std::conj(chi(a)) * d);
    }
    out.reconstructed = acc.value() / static_cast<double>(group->phi());
    return out;
}

AdditiveDecomposition decompose_additive(double x, double y, u64 q, u64 a, Weight w, u64 cap) {
    AdditiveDecomposition out{chebyshev_error(x, y, AdditiveTwist{a, q}, w, cap), {}, 0.0};
    auto group = build_group(q);
    PrimeSegment seg = w == Weight::psi ? lambda_points(x, y, cap) : primes_in(x, y, cap);
    KahanSumC acc;
    for (const auto& chi : characters(group)) {
        complex d = twisted_sum(seg, chi, w) - main_coefficient(chi) * y;
        acc.add(chi(a) * gauss_sum(chi.conjugate()) * d);
    }
    out.reconstructed = acc.value() / static_cast<double>(group->phi());
    out.residual = std::abs(out.direct.value - out.reconstructed);
    return out;
}

AveragedSquare averaged_square(double x, double y, u64 q, SquareVariant variant, Weight w, u64 cap) {
    if (q == 0) throw std::invalid_argument("averaged_square: modulus must be positive");
    PrimeSegment seg = w == Weight::psi ? lambda_points(x, y, cap) : primes_in(x, y, cap);
    KahanSum lhs;
    for (u64 a = 1; a <= q; ++a) {
        if (q != 1 && gcd_u64(a % q, q) != 1) continue;
        u64 aa = q == 1 ? 1 : a % q;
        TwistKernel k = variant == SquareVariant::arithmetic_progression
                            ? TwistKernel(ResidueClass{aa, q})
                            : TwistKernel(AdditiveTwist{aa, q});
        complex d = twisted_sum(seg, k, w) - main_coefficient(k) * y;
        lhs.add(std::norm(d));
    }
    auto group = build_group(q);
    KahanSum rhs;
    for (const auto& chi : characters(group)) {
        complex d = twisted_sum(seg, chi, w) - main_coefficient(chi) * y;
        double term = std::norm(d);
        if (variant == SquareVariant::additive) term *= std::norm(gauss_sum(chi));
        rhs.add(term);
    }
    return {lhs.value(), rhs.value() / static_cast<double>(group->phi())};
}

}  // namespace psap
