#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "psap/zeros.hpp"

// The bundled zero files are produced by the zero finder and revalidated here
// on every run: header metadata, completeness against the vertical count, and
// the conjugate-pair reflection for the complex characters mod 5.

using namespace psap;

namespace {
std::string data_path(const std::string& name) { return std::string(PSAP_DATA_DIR) + "/" + name; }
}  // namespace

TEST_CASE("bundled zeta zeros to T=1000") {
    auto zs = load_zeros(data_path("zeros_q1_chi1.txt"), 1, 1);
    CHECK(zs.t_max == 1000);
    CHECK(zs.critical_line);
    CHECK_FALSE(zs.count_warning);
    CHECK(zs.zeros.size() == 1298);  // both signs of the 649 known zeros
    // Smallest positive ordinate.
    double first = 1e9;
    for (const auto& z : zs.zeros)
        if (z.gamma > 0) first = std::min(first, z.gamma);
    CHECK(first == doctest::Approx(14.134725).epsilon(1e-6));
    // Counts used by the all-intervals lemma examples.
    CHECK(count_zeros(zs, 0.0, 500) == 538);
    CHECK(count_zeros(zs, 0.0, 100) == 58);
}

TEST_CASE("bundled character zeros to T=100") {
    struct Entry {
        u64 q, label;
    };
    for (auto [q, label] : {Entry{3, 2}, Entry{4, 3}, Entry{5, 2}, Entry{5, 3}, Entry{5, 4}}) {
        auto zs = load_zeros(data_path("zeros_q" + std::to_string(q) + "_chi" +
                                       std::to_string(label) + ".txt"),
                             q, label);
        CHECK(zs.t_max == 100);
        CHECK(zs.critical_line);
        CHECK_FALSE(zs.count_warning);
        double pred = vertical_prediction(q, 100);
        CHECK(std::abs(static_cast<double>(zs.zeros.size()) - pred) <=
              5 * std::log(static_cast<double>(q) * 100));
    }
}

TEST_CASE("bundled conjugate pair mod 5 reflects") {
    auto a = load_zeros(data_path("zeros_q5_chi2.txt"), 5, 2);
    auto b = load_zeros(data_path("zeros_q5_chi3.txt"), 5, 3);
    auto reflected = a.reflected();
    REQUIRE(b.zeros.size() == reflected.zeros.size());
    for (std::size_t i = 0; i < b.zeros.size(); ++i)
        CHECK(std::abs(b.zeros[i].gamma - reflected.zeros[i].gamma) < 1e-6);
}
