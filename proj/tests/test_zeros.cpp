#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "psap/zeros.hpp"

using namespace psap;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("vertical prediction") {
    CHECK(vertical_prediction(1, 100) == doctest::Approx(56.2546).epsilon(1e-4));
    double expect_q3 = 50 / 3.14159265358979323846 * (std::log(150 / (2 * 3.14159265358979323846)) - 1);
    CHECK(vertical_prediction(3, 50) == doctest::Approx(expect_q3));
    CHECK_THROWS(vertical_prediction(1, 3.9));
    // Positive once qT clears 2 pi e.
    for (double T : {9.0, 18.0, 400.0}) CHECK(vertical_prediction(2, T) > 0);
}

TEST_CASE("find zeros of zeta to T=30") {
    auto g1 = build_group(1);
    auto zs = find_zeros(principal_character(g1), 30);
    REQUIRE(zs.zeros.size() == 6);  // three conjugate pairs
    CHECK(zs.critical_line);
    CHECK(zs.zeros[3].gamma == doctest::Approx(14.134725).epsilon(1e-6));
    CHECK(zs.zeros[4].gamma == doctest::Approx(21.022040).epsilon(1e-6));
    CHECK(zs.zeros[5].gamma == doctest::Approx(25.010858).epsilon(1e-6));
    CHECK(zs.zeros[0].gamma == doctest::Approx(-25.010858).epsilon(1e-6));

    CHECK(count_zeros(zs, 0.0, 30) == 6);
    CHECK(count_zeros(zs, 0.6, 30) == 0);
    CHECK(count_zeros(zs, 0.0, 20) == 2);
    CHECK_THROWS(count_zeros(zs, 0.0, 31));
}

TEST_CASE("find zeros edge cases") {
    auto g1 = build_group(1);
    CHECK(find_zeros(principal_character(g1), 10).zeros.empty());

    auto g3 = build_group(3);
    CHECK(find_zeros(character_from_label(g3, 2), 0).zeros.empty());
    CHECK_THROWS(find_zeros(principal_character(g3), 10));  // imprimitive

    auto g23 = build_group(23);
    CHECK_THROWS(find_zeros(character_from_label(g23, 5), 10));  // q cap

    CHECK_THROWS(find_zeros(principal_character(g1), 2000));  // height cap
}

TEST_CASE("zero locations are stable under a finer scan") {
    auto g1 = build_group(1);
    auto coarse = find_zeros(principal_character(g1), 30);
    FindZeroOptions fine;
    fine.coarse_step = 5e-3;
    fine.fine_step = 5e-4;
    auto refined = find_zeros(principal_character(g1), 30, fine);
    REQUIRE(coarse.zeros.size() == refined.zeros.size());
    for (std::size_t i = 0; i < coarse.zeros.size(); ++i)
        CHECK(std::abs(coarse.zeros[i].gamma - refined.zeros[i].gamma) < 1e-6);
}

TEST_CASE("find zeros is thread-count independent") {
    auto g4 = build_group(4);
    auto chi = character_from_label(g4, 3);
    FindZeroOptions one, four;
    one.threads = 1;
    four.threads = 4;
    auto a = find_zeros(chi, 25, one);
    auto b = find_zeros(chi, 25, four);
    REQUIRE(a.zeros.size() == b.zeros.size());
    for (std::size_t i = 0; i < a.zeros.size(); ++i) CHECK(a.zeros[i].gamma == b.zeros[i].gamma);
}

TEST_CASE("conjugate characters have reflected zero sets") {
    auto g5 = build_group(5);
    auto chi = character_from_label(g5, 2);
    auto bar = chi.conjugate();
    auto zs = find_zeros(chi, 25);
    auto zs_bar = find_zeros(bar, 25);
    auto reflected = zs.reflected();
    REQUIRE(zs_bar.zeros.size() == reflected.zeros.size());
    for (std::size_t i = 0; i < reflected.zeros.size(); ++i)
        CHECK(std::abs(zs_bar.zeros[i].gamma - reflected.zeros[i].gamma) < 1e-6);
}

TEST_CASE("count matches brute filtering") {
    auto g1 = build_group(1);
    auto zs = find_zeros(principal_character(g1), 40);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> sig(0.0, 0.99), tt(0.0, 40.0);
    for (int it = 0; it < 100; ++it) {
        double s = sig(rng), T = tt(rng);
        std::size_t brute = 0;
        for (const auto& z : zs.zeros)
            if (z.beta > s && std::abs(z.gamma) <= T) ++brute;
        CHECK(count_zeros(zs, s, T) == brute);
    }
}

TEST_CASE("zero file round trip") {
    auto g1 = build_group(1);
    auto zs = find_zeros(principal_character(g1), 30);
    std::string path = temp_path("psap_test_zeros_q1.txt");
    save_zeros(path, zs);
    auto loaded = load_zeros(path, 1, 1);
    REQUIRE(loaded.zeros.size() == zs.zeros.size());
    for (std::size_t i = 0; i < zs.zeros.size(); ++i) {
        CHECK(std::abs(loaded.zeros[i].gamma - zs.zeros[i].gamma) < 1e-6);
        CHECK(loaded.zeros[i].beta == 0.5);
    }
    CHECK(loaded.source == ZeroSet::Source::file);
    CHECK(loaded.critical_line);
    std::filesystem::remove(path);
}

TEST_CASE("zero file format") {
    std::string path = temp_path("psap_test_format.txt");
    {
        std::ofstream out(path);
        out << "# q=1 label=1 tmax=0 columns=gamma\n";
    }
    auto empty = load_zeros(path);
    CHECK(empty.zeros.empty());
    CHECK(empty.t_max == 0);

    {
        std::ofstream out(path);
        out << "# q=3 label=2 tmax=30 columns=gamma\n";
        out << "# comment line\n";
        out << "8.039737\n";
        out << "11.249209\n";
    }
    auto zs = load_zeros(path, 3, 2);
    REQUIRE(zs.zeros.size() == 4);  // reflection closure applied
    CHECK(zs.zeros[0].gamma == doctest::Approx(-11.249209));
    CHECK(zs.zeros[3].gamma == doctest::Approx(11.249209));
    CHECK(zs.critical_line);

    {
        std::ofstream out(path);
        out << "# q=3 label=2 tmax=30 columns=gamma,beta\n";
        out << "-8.039737 0.5\n";
        out << "8.039737 0.6\n";
    }
    auto zb = load_zeros(path);
    CHECK_FALSE(zb.critical_line);
    CHECK(zb.zeros[1].beta == 0.6);

    {
        std::ofstream out(path);
        out << "# q=3 label=2 tmax=30 columns=gamma\n";
        out << "8.0 oops\n";
    }
    CHECK_THROWS_WITH_AS(static_cast<void>(load_zeros(path)),
                         doctest::Contains(":2"), std::runtime_error);

    {
        std::ofstream out(path);
        out << "# q=3 label=2 tmax=30 columns=gamma\n";
        out << "8.0\n";
        out << "7.0\n";
    }
    CHECK_THROWS(static_cast<void>(load_zeros(path)));

    {
        std::ofstream out(path);
        out << "# q=3 label=2 tmax=30 columns=gamma,beta\n";
        out << "8.0 1.5\n";
    }
    CHECK_THROWS(static_cast<void>(load_zeros(path)));

    {
        std::ofstream out(path);
        out << "# q=3 label=2 tmax=30 columns=gamma\n";
        out << "8.0\n";
    }
    CHECK_THROWS(static_cast<void>(load_zeros(path, 5, 2)));  // modulus mismatch
    std::filesystem::remove(path);
}

TEST_CASE("injected exceptional zero is representable") {
    ZeroSet zs;
    zs.q = 5;
    zs.label = 4;
    zs.t_max = 1;  // below the vertical-count regime
    zs.zeros = {{0.9, 0.0}};
    validate_zero_set(zs);
    CHECK_FALSE(zs.critical_line);
    CHECK(count_zeros(zs, 0.85, 1) == 1);
    CHECK(count_zeros(zs, 0.95, 1) == 0);
}

TEST_CASE("density sum") {
    auto g1 = build_group(1);
    auto zs = find_zeros(principal_character(g1), 40);
    std::vector<ZeroSet> sets{zs};
    CHECK(density_sum(sets, 1, 0.0, 40) == zs.zeros.size());
    CHECK(density_sum(sets, 1, 0.75, 40) == 0);
    CHECK_THROWS(static_cast<void>(density_sum(sets, 5, 0.0, 40)));  // needs phi(5) sets

    // q=1, sigma=0, T in data, A=2, g=log(qT): ratio = count / (T^2 log T).
    double ratio = condition2_ratio(count_zeros(zs, 0.0, 40), 1, 40, 0.0, 2.0, std::log(40.0));
    CHECK(ratio == doctest::Approx(static_cast<double>(count_zeros(zs, 0.0, 40)) /
                                   (1600.0 * std::log(40.0))));
}
