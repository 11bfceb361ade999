#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "psap/experiments.hpp"

using namespace psap;

namespace {

std::string temp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

bool is_prime_small(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("all-intervals experiment") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::all_intervals;
    cfg.weight = Weight::theta;
    cfg.q_values = {1, 3};
    cfg.x_values = {1e5, 1e6};
    cfg.y_power = 0.9;
    cfg.tolerance = 1e9;
    auto report = run_all_intervals(cfg);
    CHECK(report.rows.size() == 4);
    CHECK(report.columns.front() == "q");
    CHECK(report.pass);
    CHECK(report.c_fit > 0);
    std::size_t trend_notes = 0;
    for (const auto& n : report.notes)
        if (n.find("pnt_ratio decreasing") != std::string::npos) ++trend_notes;
    CHECK(trend_notes == 2);  // one per modulus

    // Empty residue grid means a = 1 for q = 1: empirical must match a direct
    // computation.
    double h = std::pow(1e5, 0.9);
    auto d = chebyshev_error(1e5, h, TwistKernel(ResidueClass{1, 1}), Weight::theta);
    CHECK(std::stod(report.rows[0][4]) == doctest::Approx(std::abs(d.real_value())));
}

TEST_CASE("almost-all experiment routes agree") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::almost_all;
    cfg.weight = Weight::theta;
    cfg.q_values = {3, 8};
    cfg.x_values = {1e4};
    cfg.y_values = {100.0};
    cfg.tolerance = 1e9;
    auto report = run_almost_all(cfg);
    REQUIRE(report.rows.size() == 2);
    for (const auto& row : report.rows) {
        double rel = std::stod(row[8]);
        CHECK(rel < 1e-10);
        double exc_half = std::stod(row[9]), exc_tenth = std::stod(row[10]);
        CHECK(exc_half >= 0);
        CHECK(exc_half <= 1);
        CHECK(exc_tenth >= exc_half);  // looser threshold, more exceptions
    }
}

TEST_CASE("exception density against a hand enumeration") {
    // q = 1, X = 10, h = 2, theta weight: windows (n, n+2] for n in [10, 20).
    double expect = 0;
    for (u64 n = 10; n < 20; ++n) {
        double sum = 0;
        for (u64 m = n + 1; m <= n + 2; ++m)
            if (is_prime_small(m)) sum += std::log(static_cast<double>(m));
        if (std::abs(sum - 2.0) > 0.5 * 2.0) expect += 1;
    }
    expect /= 10.0;
    CHECK(exception_density(10, 2, 1, Weight::theta, 0.5) == doctest::Approx(expect));
}

TEST_CASE("saffari-vaughan check") {
    auto g1 = build_group(1);
    auto chi = principal_character(g1);
    auto res = saffari_vaughan_check(2000, 100, chi, Weight::psi, 1e-4);
    CHECK(res.lhs > 0);
    CHECK(res.rhs > 0);
    CHECK(res.ratio < 100);

    // h = X/6 boundary computes without special-casing.
    auto edge = saffari_vaughan_check(1200, 200, chi, Weight::psi, 1e-3);
    CHECK(std::isfinite(edge.ratio));

    // Identically-zero integrand: all points in range divide the modulus.
    auto g6 = build_group(6);
    auto chi6 = character_from_label(g6, 5);
    auto zero = saffari_vaughan_check(1.0, 0.3, chi6, Weight::theta, 1e-3);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.lhs <= zero.rhs);
}

TEST_CASE("explicit scan experiment") {
    auto g1 = build_group(1);
    auto zs = find_zeros(principal_character(g1), 30);
    std::string zpath = temp_file("psap_exp_zeros.txt");
    save_zeros(zpath, zs);

    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::explicit_formula_scan;
    cfg.q_values = {1};
    cfg.label = 1;
    cfg.x_values = {1e4, 2e4};
    cfg.y_values = {1e3};
    cfg.t_values = {10.0, 30.0};
    cfg.zero_files[{1, 1}] = zpath;
    cfg.tolerance = 10.0;
    auto report = run_explicit_scan(cfg);
    CHECK(report.rows.size() == 4);
    CHECK(report.notes.size() == 2);  // one median line per T
    CHECK(report.digests.size() == 1);
    CHECK(report.c_fit < 10.0);
    std::filesystem::remove(zpath);
}

TEST_CASE("density fit experiment") {
    auto g1 = build_group(1);
    auto zs1 = find_zeros(principal_character(g1), 30);
    std::string z1 = temp_file("psap_fit_q1.txt");
    save_zeros(z1, zs1);
    auto g3 = build_group(3);
    auto zs3 = find_zeros(character_from_label(g3, 2), 30);
    std::string z3 = temp_file("psap_fit_q3.txt");
    save_zeros(z3, zs3);

    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::density_fit;
    cfg.q_values = {3};
    cfg.sigma_values = {0.0, 0.75};
    cfg.t_values = {25.0};
    cfg.zero_files[{1, 1}] = z1;  // principal character falls back to zeta data
    cfg.zero_files[{3, 2}] = z3;
    cfg.density.A = 2.0;
    cfg.profile = EtaProfile::constant(0.4);
    auto report = run_density_fit(cfg);
    REQUIRE(report.rows.size() == 2);
    // Critical-line data: counts above sigma = 0.75 are zero.
    CHECK(std::stod(report.rows[1][3]) == 0.0);
    CHECK(std::stod(report.rows[0][3]) ==
          doctest::Approx(static_cast<double>(count_zeros(zs1, 0, 25) + count_zeros(zs3, 0, 25))));
    bool holds = false;
    for (const auto& n : report.notes)
        if (n.find("zero_free_region=holds") != std::string::npos) holds = true;
    CHECK(holds);

    // An injected real zero at beta = 0.9 pierces the region and is flagged,
    // but a single real zero is still the allowed exceptional configuration.
    ZeroSet bad = zs3;
    bad.zeros.push_back({0.9, 0.0});
    std::sort(bad.zeros.begin(), bad.zeros.end(),
              [](const Zero& a, const Zero& b) { return a.gamma < b.gamma; });
    std::string zbad = temp_file("psap_fit_bad.txt");
    save_zeros(zbad, bad);
    cfg.zero_files[{3, 2}] = zbad;
    auto flagged = run_density_fit(cfg);
    bool exceptional = false, beta_note = false;
    for (const auto& n : flagged.notes) {
        if (n.find("zero_free_region=exceptional_zero") != std::string::npos) exceptional = true;
        if (n.find("beta_max=0.9") != std::string::npos) beta_note = true;
    }
    CHECK(exceptional);
    CHECK(beta_note);

    // A complex off-line zero is a hard violation.
    ZeroSet worse = zs3;
    worse.zeros.push_back({0.9, 0.05});
    std::sort(worse.zeros.begin(), worse.zeros.end(),
              [](const Zero& a, const Zero& b) { return a.gamma < b.gamma; });
    std::string zworse = temp_file("psap_fit_worse.txt");
    save_zeros(zworse, worse);
    cfg.zero_files[{3, 2}] = zworse;
    auto hard = run_density_fit(cfg);
    bool violated = false;
    for (const auto& n : hard.notes)
        if (n.find("zero_free_region=violated") != std::string::npos) violated = true;
    CHECK(violated);

    std::filesystem::remove(z1);
    std::filesystem::remove(z3);
    std::filesystem::remove(zbad);
    std::filesystem::remove(zworse);
}

TEST_CASE("report text forms") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::all_intervals;
    cfg.q_values = {1};
    cfg.x_values = {1e4};
    cfg.y_values = {1e3};
    cfg.tolerance = 1e9;
    std::string csv_path = temp_file("psap_report.csv");
    std::string sum_path = temp_file("psap_report.txt");
    cfg.output_csv = csv_path;
    cfg.output_summary = sum_path;
    auto report = run_experiment(cfg);
    CHECK(report.runtime_seconds >= 0);
    CHECK(std::filesystem::exists(csv_path));
    CHECK(std::filesystem::exists(sum_path));
    std::string csv = report.csv();
    CHECK(csv.find("q,x,y,weight,empirical,envelope,ratio,pnt_ratio") == 0);
    std::string summary = report.summary();
    CHECK(summary.find("result: PASS") != std::string::npos);
    std::filesystem::remove(csv_path);
    std::filesystem::remove(sum_path);
}
