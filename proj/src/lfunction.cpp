#include "psap/lfunction.hpp"

#include <cmath>
#include <stdexcept>

namespace psap {

namespace {

// Lanczos g=7, n=9 (Godfrey coefficients).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

// B_{2j} for j = 1..25.
constexpr double kBernoulli2j[25] = {
    1.0 / 6,
    -1.0 / 30,
    1.0 / 42,
    -1.0 / 30,
    5.0 / 66,
    -691.0 / 2730,
    7.0 / 6,
    -3617.0 / 510,
    43867.0 / 798,
    -174611.0 / 330,
    854513.0 / 138,
    -236364091.0 / 2730,
    8553103.0 / 6,
    -23749461029.0 / 870,
    8615841276005.0 / 14322,
    -7709321041217.0 / 510,
    2577687858367.0 / 6,
    -26315271553053477373.0 / 1919190,
    2929993913841559.0 / 6,
    -261082718496449122051.0 / 13530,
    1520097643918070802691.0 / 1806,
    -27833269579301024235023.0 / 690,
    596451111593912163277961.0 / 282,
    -5609403368997817686249127547.0 / 46410,
    495057205241079648212477525.0 / 66,
};

}  // namespace

complex log_gamma(complex z) {
    if (z.real() <= 0 && z.imag() == 0 && z.real() == std::floor(z.real()))
        throw std::invalid_argument("log_gamma: pole");
    complex shift = 0;
    while (z.real() < 0.5) {
        shift -= std::log(z);
        z += 1.0;
    }
    complex t = z + (kLanczosG - 0.5);
    complex a = kLanczos[0];
    for (int k = 1; k < 9; ++k) a += kLanczos[k] / (z + static_cast<double>(k - 1));
    return 0.91893853320467274178 /* log sqrt(2 pi) */ + (z - 0.5) * std::log(t) - t + std::log(a) +
           shift;
}

HurwitzResult hurwitz_zeta(complex s, double a) {
    if (a <= 0 || a > 1) throw std::invalid_argument("hurwitz_zeta: need 0 < a <= 1");
    if (s == complex(1.0, 0.0)) throw std::invalid_argument("hurwitz_zeta: pole at s = 1");
    const double target = 1e-13;
    u64 n_terms = std::max<u64>(32, static_cast<u64>(std::ceil(std::abs(s.imag()) / 2)));

    for (int attempt = 0; attempt < 4; ++attempt) {
        KahanSumC direct;
        double abs_mass = 0;
        for (u64 k = 0; k < n_terms; ++k) {
            complex term = std::exp(-s * std::log(static_cast<double>(k) + a));
            direct.add(term);
            abs_mass += std::abs(term);
        }
        double base = static_cast<double>(n_terms) + a;
        complex log_base = std::log(complex(base, 0.0));
        complex tail = std::exp((1.0 - s) * log_base) / (s - 1.0) + 0.5 * std::exp(-s * log_base);

        // Euler-Maclaurin correction: B_{2j}/(2j)! * (s)_{2j-1} * base^(-s-2j+1)
        complex poch = s;
        double fact = 2.0;  // (2j)!
        complex npow = std::exp((-s - 1.0) * log_base);
        double inv_b2 = 1.0 / (base * base);
        complex em = 0;
        double rem = HUGE_VAL;
        double prev = HUGE_VAL;
        bool converged = false;
        for (int j = 1; j <= 25; ++j) {
            complex term = (kBernoulli2j[j - 1] / fact) * poch * npow;
            double mag = std::abs(term);
            if (mag > prev) break;  // series started diverging; raise N instead
            em += term;
            // Remainder is bounded by the next-term magnitude scaled by
            // |s + 2j + 1| / (sigma + 2j + 1).
            rem = mag * std::abs(s + static_cast<double>(2 * j + 1)) /
                  std::abs(s.real() + static_cast<double>(2 * j + 1));
            prev = mag;
            if (rem < target) {
                converged = true;
                break;
            }
            poch *= (s + static_cast<double>(2 * j - 1)) * (s + static_cast<double>(2 * j));
            fact *= static_cast<double>(2 * j + 1) * static_cast<double>(2 * j + 2);
            npow *= inv_b2;
        }
        if (converged || attempt == 3) {
            HurwitzResult res;
            res.value = direct.value() + tail + em;
            res.error = rem + 1e-16 * (abs_mass + std::abs(tail));
            return res;
        }
        n_terms *= 2;
    }
    throw std::logic_error("hurwitz_zeta: unreachable");
}

HurwitzResult dirichlet_l(complex s, const DirichletCharacter& chi) {
    u64 q = chi.modulus();
    if (q == 1) return hurwitz_zeta(s, 1.0);
    KahanSumC acc;
    double err = 0;
    for (u64 r = 1; r <= q; ++r) {
        complex c = chi(r % q);
        if (c == complex(0.0, 0.0)) continue;
        HurwitzResult h = hurwitz_zeta(s, static_cast<double>(r) / static_cast<double>(q));
        acc.add(c * h.value);
        err += h.error;
    }
    double scale = std::pow(static_cast<double>(q), -s.real());
    HurwitzResult res;
    res.value = std::exp(-s * std::log(static_cast<double>(q))) * acc.value();
    res.error = err * scale;
    return res;
}

CriticalLineFunction::CriticalLineFunction(DirichletCharacter chi) : chi_(std::move(chi)) {
    if (!chi_.is_primitive())
        throw std::invalid_argument(
            "CriticalLineFunction: character must be primitive (use the inducing character)");
    u64 q = chi_.modulus();
    int a = chi_.parity();
    complex i_pow_a = a == 0 ? complex(1.0, 0.0) : complex(0.0, 1.0);
    eps_ = gauss_sum(chi_) / (i_pow_a * std::sqrt(static_cast<double>(q)));
    if (std::abs(std::abs(eps_) - 1.0) > 1e-8)
        throw std::runtime_error("CriticalLineFunction: root number not unimodular");
    eps_ /= std::abs(eps_);
    complex w = std::sqrt(eps_);
    rotation_ = std::conj(w);  // |eps| = 1, so conj(sqrt) = inverse sqrt
    log_q_over_pi_ = std::log(static_cast<double>(q) / 3.14159265358979323846);
    re_gamma_arg_ = (0.5 + static_cast<double>(a)) / 2.0;
}

double CriticalLineFunction::operator()(double t, double* imag_residual, double* eval_error) const {
    complex s(0.5, t);
    HurwitzResult l = dirichlet_l(s, chi_);
    double phase = 0.5 * t * log_q_over_pi_ + log_gamma(complex(re_gamma_arg_, 0.5 * t)).imag();
    complex val = rotation_ * complex(std::cos(phase), std::sin(phase)) * l.value;
    if (imag_residual) *imag_residual = std::abs(val.imag());
    if (eval_error) *eval_error = l.error;
    return val.real();
}

LValueGrid evaluate_grid(const CriticalLineFunction& zf, double t_lo, double t_hi, double step,
                         unsigned threads) {
    if (step <= 0 || t_hi < t_lo) throw std::invalid_argument("evaluate_grid: bad range");
    std::size_t n = static_cast<std::size_t>(std::floor((t_hi - t_lo) / step)) + 1;
    LValueGrid grid;
    grid.t.resize(n);
    grid.z.resize(n);
    std::vector<double> imag(n), errs(n);
    parallel_for(
        n,
        [&](std::size_t i) {
            double t = t_lo + static_cast<double>(i) * step;
            grid.t[i] = t;
            grid.z[i] = zf(t, &imag[i], &errs[i]);
        },
        threads);
    for (std::size_t i = 0; i < n; ++i) {
        grid.eval_error = std::max(grid.eval_error, errs[i]);
        grid.imag_residual = std::max(grid.imag_residual, imag[i]);
    }
    return grid;
}

}  // namespace psap
