#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "psap/sieve.hpp"

using namespace psap;

namespace {

// Trial-division oracle for Lambda-weighted points in (lo, hi].
std::vector<WeightedPoint> trial_points(u64 lo, u64 hi, bool powers) {
    std::vector<WeightedPoint> out;
    for (u64 n = lo + 1; n <= hi; ++n) {
        u64 m = n, p = 0;
        for (u64 d = 2; d * d <= m; ++d) {
            if (m % d == 0) {
                p = d;
                break;
            }
        }
        if (p == 0) {
            out.push_back({n, std::log(static_cast<double>(n))});
            continue;
        }
        if (!powers) continue;
        while (m % p == 0) m /= p;
        if (m == 1) out.push_back({n, std::log(static_cast<double>(p))});
    }
    return out;
}

}  // namespace

TEST_CASE("primes_in basic examples") {
    auto seg = primes_in(10, 10);
    CHECK(seg.primes == std::vector<u64>{11, 13, 17, 19});

    CHECK(primes_in(10, 0).primes.empty());

    auto neg = primes_in(10, -10);
    CHECK(neg.primes == std::vector<u64>{2, 3, 5, 7});
    CHECK(neg.orientation == -1);
}

TEST_CASE("lambda_points examples") {
    auto seg = lambda_points(10, 10);
    CHECK(seg.primes == std::vector<u64>{11, 13, 17, 19});
    REQUIRE(seg.powers.size() == 1);
    CHECK(seg.powers[0].n == 16);
    CHECK(seg.powers[0].log_p == doctest::Approx(std::log(2.0)));

    auto seg2 = lambda_points(8, 1);
    CHECK(seg2.primes.empty());
    REQUIRE(seg2.powers.size() == 1);
    CHECK(seg2.powers[0].n == 9);
    CHECK(seg2.powers[0].log_p == doctest::Approx(std::log(3.0)));

    auto seg3 = lambda_points(2, 2);
    CHECK(seg3.primes == std::vector<u64>{3});
    REQUIRE(seg3.powers.size() == 1);
    CHECK(seg3.powers[0].n == 4);
}

TEST_CASE("segment matches trial division on random windows") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<u64> dist(0, 10'000'000 - 1100);
    for (int it = 0; it < 100; ++it) {
        u64 lo = dist(rng);
        u64 hi = lo + 1000;
        auto seg = sieve_range(lo, hi, true);
        auto oracle = trial_points(lo, hi, true);
        auto pts = seg.all_points();
        REQUIRE(pts.size() == oracle.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(pts[i].n == oracle[i].n);
            CHECK(pts[i].log_p == doctest::Approx(oracle[i].log_p));
        }
    }
}

TEST_CASE("every listed prime passes a deterministic primality check") {
    auto seg = sieve_range(999'000, 1'001'000, true);
    for (u64 p : seg.primes) CHECK(is_prime_u64(p));
    for (const auto& w : seg.powers) CHECK_FALSE(is_prime_u64(w.n));
    CHECK(std::is_sorted(seg.primes.begin(), seg.primes.end()));
    // No prime power appears among the primes.
    for (const auto& w : seg.powers)
        CHECK_FALSE(std::binary_search(seg.primes.begin(), seg.primes.end(), w.n));
}

TEST_CASE("telescoping and psi-theta gap at 1e6") {
    auto seg = lambda_points(0, 1'000'000);
    complex psi = twisted_sum(seg, TwistKernel(ResidueClass{1, 1}), Weight::psi);
    complex theta = twisted_sum(seg, TwistKernel(ResidueClass{1, 1}), Weight::theta);
    double n = 1e6;
    CHECK(psi.imag() == 0.0);
    CHECK(psi.real() - theta.real() <= 3 * std::sqrt(n) * std::log(n));
    CHECK(psi.real() - theta.real() > 0);
    // psi(1e6) is within the classical error window of 1e6.
    CHECK(std::abs(psi.real() - n) < 1e3);
}

TEST_CASE("concatenation") {
    auto whole = lambda_points(1000, 2000);
    auto first = lambda_points(1000, 800);
    auto second = lambda_points(1800, 1200);
    CHECK(first.primes.size() + second.primes.size() == whole.primes.size());
    CHECK(first.powers.size() + second.powers.size() == whole.powers.size());
    TwistKernel k(ResidueClass{1, 3});
    complex total = twisted_sum(whole, k, Weight::psi);
    complex parts = twisted_sum(first, k, Weight::psi) + twisted_sum(second, k, Weight::psi);
    CHECK(std::abs(total - parts) < 1e-12 * (1 + std::abs(total)));
}

TEST_CASE("twisted sums") {
    auto seg = primes_in(10, 10);
    auto segp = lambda_points(10, 10);

    complex t3 = twisted_sum(seg, TwistKernel(ResidueClass{1, 3}), Weight::theta);
    CHECK(t3.real() == doctest::Approx(std::log(13.0) + std::log(19.0)));

    complex p3 = twisted_sum(segp, TwistKernel(ResidueClass{1, 3}), Weight::psi);
    CHECK(p3.real() == doctest::Approx(std::log(13.0) + std::log(19.0) + std::log(2.0)));

    auto g1 = build_group(1);
    complex untwisted = twisted_sum(segp, TwistKernel(principal_character(g1)), Weight::psi);
    complex ap = twisted_sum(segp, TwistKernel(ResidueClass{1, 1}), Weight::psi);
    CHECK(std::abs(untwisted - ap) < 1e-12);

    CHECK_THROWS(twisted_sum(seg, TwistKernel(ResidueClass{3, 6}), Weight::theta));
    CHECK_THROWS(twisted_sum(seg, TwistKernel(AdditiveTwist{2, 4}), Weight::theta));
}

TEST_CASE("range cap") {
    CHECK_THROWS(primes_in(2e9, 10));
    CHECK_THROWS(primes_in(10, -20));  // below zero
}
