#pragma once

#include <optional>
#include <span>
#include <string>

#include "psap/lfunction.hpp"

namespace psap {

struct Zero {
    double beta;
    double gamma;
};

// Nontrivial zeros of L(s, chi) with |gamma| <= t_max, all claimed present.
struct ZeroSet {
    u64 q = 1;
    u64 label = 1;
    double t_max = 0;
    std::vector<Zero> zeros;  // gamma strictly increasing
    enum class Source { file, computed } source = Source::computed;
    bool critical_line = true;
    bool count_warning = false;  // vertical-count cross-check deviated

    ZeroSet reflected() const;  // gamma -> -gamma
};

// Structural invariants: monotone gamma, beta in (0,1); cross-checks the
// |gamma| <= t_max count against the vertical prediction when t_max >= 4
// (sets count_warning on deviation > 5 log(q t_max)). Throws on hard errors.
void validate_zero_set(ZeroSet& zs);

// Main term of N(0, T, chi): (T/pi) log(qT/2pi) - T/pi. Requires T >= 4.
double vertical_prediction(u64 q, double T);

// #{rho : beta > sigma, |gamma| <= T}. Requires T <= t_max.
std::size_t count_zeros(const ZeroSet& zs, double sigma, double T);

// Line-oriented text format:
//   # q=<int> label=<int> tmax=<float> columns=gamma[,beta]
// one zero per line, gamma ascending, '#' lines ignored. When the file stores
// only gamma > 0 the conjugate reflection is applied on load.
ZeroSet load_zeros(const std::string& path, std::optional<u64> expect_q = {},
                   std::optional<u64> expect_label = {});
void save_zeros(const std::string& path, const ZeroSet& zs);

struct FindZeroOptions {
    double coarse_step = 1e-2;  // used for |t| <= 50
    double fine_step = 1e-3;    // used above
    double bisect_width = 1e-9;
    unsigned threads = 1;
    int max_refines = 2;
    u64 max_q = 20;
    double max_t_small_q = 1050;  // q = 1
    double max_t = 150;           // q in (1, 20]
};

// Critical-line sign-change search for a primitive character, complete for
// |gamma| <= T (cross-checked against the vertical count).
ZeroSet find_zeros(const DirichletCharacter& chi, double T, const FindZeroOptions& opts = {});

// Sum over the provided per-character zero sets of N(sigma, T, .). All phi(q)
// characters mod q must be represented and complete to T.
std::size_t density_sum(std::span<const ZeroSet> sets, u64 q, double sigma, double T);

// Ratio of a zero count to the density-estimate right-hand side
// (qT)^(A(1-sigma)) * g.
double condition2_ratio(std::size_t count, u64 q, double T, double sigma, double A, double g_value);

}  // namespace psap
