#include "psap/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace psap {

namespace {

std::string cell(double v) { return format_number(v, 17); }
std::string cell(u64 v) { return std::to_string(v); }

std::string weight_name(Weight w) { return w == Weight::theta ? "theta" : "psi"; }

std::vector<u64> coprime_residues(u64 q, const std::vector<u64>& requested) {
    std::vector<u64> out;
    if (!requested.empty()) {
        for (u64 a : requested) {
            if (q != 1 && gcd_u64(a % q, q) != 1)
                throw std::invalid_argument("residue " + std::to_string(a) +
                                            " is not coprime to q=" + std::to_string(q));
            out.push_back(q == 1 ? 1 : a % q);
        }
        return out;
    }
    if (q == 1) return {1};
    for (u64 a = 1; a < q; ++a)
        if (gcd_u64(a, q) == 1) out.push_back(a);
    return out;
}

double resolve_window(const ExperimentConfig& c, double x, std::size_t y_index) {
    if (c.y_power > 0) return std::pow(x, c.y_power);
    if (c.y_fraction > 0) return c.y_fraction * x;
    if (c.y_values.empty()) throw std::invalid_argument("experiment: no window lengths configured");
    return c.y_values[y_index];
}

std::size_t window_count(const ExperimentConfig& c) {
    return (c.y_power > 0 || c.y_fraction > 0) ? 1 : c.y_values.size();
}

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double m, double b,
                            double fa, double fm, double fb, double whole, double eps, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, m, fa, flm, fm);
    double right = simpson(m, b, fm, frm, fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, lm, m, fa, flm, fm, left, eps / 2, depth - 1) +
           adaptive_simpson_rec(f, m, rm, b, fm, frm, fb, right, eps / 2, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = simpson(a, b, fa, fm, fb);
    double eps = rel_tol * std::max(std::abs(whole), 1e-300);
    return adaptive_simpson_rec(f, a, m, b, fa, fm, fb, whole, eps, 18);
}

void load_digests(ExperimentReport& report, const ExperimentConfig& config,
                  const std::vector<std::string>& extra_files) {
    std::vector<std::string> files = config.digest_inputs;
    files.insert(files.end(), extra_files.begin(), extra_files.end());
    std::sort(files.begin(), files.end());
    files.erase(std::unique(files.begin(), files.end()), files.end());
    for (const auto& f : files) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(fnv1a_file(f)));
        report.digests.emplace_back(f, buf);
    }
}

}  // namespace

std::string kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::all_intervals: return "all-intervals";
        case ExperimentKind::almost_all: return "almost-all";
        case ExperimentKind::saffari_vaughan: return "saffari-vaughan";
        case ExperimentKind::explicit_formula_scan: return "explicit-formula-scan";
        case ExperimentKind::density_fit: return "density-fit";
    }
    return "unknown";
}

ExperimentKind kind_from_name(const std::string& s) {
    if (s == "all-intervals") return ExperimentKind::all_intervals;
    if (s == "almost-all") return ExperimentKind::almost_all;
    if (s == "saffari-vaughan") return ExperimentKind::saffari_vaughan;
    if (s == "explicit-formula-scan") return ExperimentKind::explicit_formula_scan;
    if (s == "density-fit") return ExperimentKind::density_fit;
    throw std::invalid_argument("unknown experiment kind: " + s);
}

std::string ExperimentReport::csv() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
    return out.str();
}

std::string ExperimentReport::summary() const {
    std::ostringstream out;
    out << "experiment: " << kind_name(kind) << "\n";
    out << "grid points: " << rows.size() << "\n";
    out << "fitted constant C_fit (max empirical/envelope): " << format_number(c_fit, 17) << "\n";
    out << "tolerance: " << format_number(tolerance, 9) << "\n";
    out << "result: " << (pass ? "PASS" : "FAIL") << "\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", runtime_seconds);
    out << "runtime_seconds: " << buf << "\n";
    for (const auto& [path, digest] : digests) out << "input " << path << " fnv64=" << digest << "\n";
    for (const auto& n : notes) out << n << "\n";
    return out.str();
}

ExperimentReport run_all_intervals(const ExperimentConfig& config) {
    ExperimentReport report;
    report.kind = ExperimentKind::all_intervals;
    report.tolerance = config.tolerance;
    report.columns = {"q", "x", "y", "weight", "empirical", "envelope", "ratio", "pnt_ratio"};

    struct Point {
        u64 q;
        double x, y;
    };
    std::vector<Point> grid;
    for (u64 q : config.q_values)
        for (double x : config.x_values)
            for (std::size_t yi = 0; yi < window_count(config); ++yi)
                grid.push_back({q, x, resolve_window(config, x, yi)});

    std::vector<std::vector<std::string>> rows(grid.size());
    std::vector<double> ratios(grid.size()), pnt_ratios(grid.size());
    std::vector<char> inadmissible(grid.size(), 0);
    parallel_for(
        grid.size(),
        [&](std::size_t i) {
            const auto& pt = grid[i];
            inadmissible[i] = !y_admissible(config.mode, config.profile, config.density, pt.q,
                                            pt.x, pt.y, config.eps);
            PrimeSegment seg = config.weight == Weight::psi
                                   ? lambda_points(pt.x, pt.y, config.sieve_cap)
                                   : primes_in(pt.x, pt.y, config.sieve_cap);
            auto residues = coprime_residues(pt.q, config.residues);
            double phi = static_cast<double>(euler_phi(pt.q));
            double worst = 0;
            for (u64 a : residues) {
                complex d = twisted_sum(seg, TwistKernel(ResidueClass{a, pt.q}), config.weight) -
                            pt.y / phi;
                worst = std::max(worst, std::abs(d));
            }
            double env = envelope_all(config.mode, config.profile, config.density, pt.q, pt.x,
                                      pt.y, config.exceptional);
            ratios[i] = worst / env;
            pnt_ratios[i] = worst * phi / std::abs(pt.y);
            rows[i] = {cell(pt.q),  cell(pt.x),     cell(pt.y),   weight_name(config.weight),
                       cell(worst), cell(env),      cell(ratios[i]), cell(pnt_ratios[i])};
        },
        config.threads);
    report.rows = std::move(rows);
    for (double r : ratios) report.c_fit = std::max(report.c_fit, r);
    report.pass = report.c_fit <= config.tolerance;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (inadmissible[i])
            report.notes.push_back("warning: q=" + std::to_string(grid[i].q) + " x=" +
                                   format_number(grid[i].x, 9) + " y=" +
                                   format_number(grid[i].y, 9) +
                                   " outside the admissible window (computed anyway)");

    // PNT trend per modulus: is |Delta| phi / y decreasing along the x grid?
    std::size_t per_q = config.x_values.size() * window_count(config);
    for (std::size_t qi = 0; qi < config.q_values.size(); ++qi) {
        bool decreasing = true;
        for (std::size_t j = 1; j < config.x_values.size(); ++j)
            for (std::size_t yi = 0; yi < window_count(config); ++yi) {
                std::size_t cur = qi * per_q + j * window_count(config) + yi;
                std::size_t prev = cur - window_count(config);
                if (pnt_ratios[cur] >= pnt_ratios[prev]) decreasing = false;
            }
        report.notes.push_back("q=" + std::to_string(config.q_values[qi]) +
                               " pnt_ratio decreasing along x grid: " +
                               (decreasing ? "yes" : "no"));
    }
    load_digests(report, config, {});
    return report;
}

double exception_density(double X, double h, u64 q, Weight w, double delta, u64 cap) {
    // Points cover (X, 2X + h]; windows are (n, n+h] for integer n in [X, 2X).
    PrimeSegment full =
        w == Weight::psi ? lambda_points(X, X + h + X, cap) : primes_in(X, X + h + X, cap);
    auto points = full.all_points();
    if (w == Weight::theta) {
        points.clear();
        for (std::size_t i = 0; i < full.primes.size(); ++i)
            points.push_back({full.primes[i], full.prime_logs[i]});
    }
    double phi = static_cast<double>(euler_phi(q));
    double threshold = delta * h / phi;
    u64 n_lo = static_cast<u64>(X), n_hi = static_cast<u64>(2 * X);
    double worst = 0;
    for (u64 a : coprime_residues(q, {})) {
        std::vector<double> pos;
        std::vector<double> pref;
        pos.reserve(points.size());
        pref.reserve(points.size() + 1);
        pref.push_back(0.0);
        KahanSum run;
        for (const auto& pt : points) {
            if (q != 1 && pt.n % q != a % q) continue;
            pos.push_back(static_cast<double>(pt.n));
            run.add(pt.log_p);
            pref.push_back(run.value());
        }
        std::size_t i = 0, j = 0;
        u64 exceptions = 0;
        for (u64 n = n_lo; n < n_hi; ++n) {
            double u = static_cast<double>(n);
            while (i < pos.size() && pos[i] <= u) ++i;
            while (j < pos.size() && pos[j] <= u + h) ++j;
            double window = pref[j] - pref[i];
            if (std::abs(window - h / phi) > threshold) ++exceptions;
        }
        worst = std::max(worst, static_cast<double>(exceptions) / X);
    }
    return worst;
}

ExperimentReport run_almost_all(const ExperimentConfig& config) {
    ExperimentReport report;
    report.kind = ExperimentKind::almost_all;
    report.tolerance = config.tolerance;
    report.columns = {"q",        "X",     "h",          "weight",
                      "empirical", "envelope", "ratio",  "parseval",
                      "route_rel_diff", "exceptions_delta_0.5", "exceptions_delta_0.1"};

    struct Point {
        u64 q;
        double X, h;
    };
    std::vector<Point> grid;
    for (u64 q : config.q_values)
        for (double X : config.x_values)
            for (std::size_t yi = 0; yi < window_count(config); ++yi)
                grid.push_back({q, X, resolve_window(config, X, yi)});

    std::vector<std::vector<std::string>> rows(grid.size());
    std::vector<double> ratios(grid.size());
    parallel_for(
        grid.size(),
        [&](std::size_t i) {
            const auto& pt = grid[i];
            WindowMode mode{FixedLength{pt.h}};
            // Route 1: direct sum over residue classes.
            KahanSum direct;
            for (u64 a : coprime_residues(pt.q, {}))
                direct.add(l2_integral_exact(pt.X, mode, TwistKernel(ResidueClass{a, pt.q}),
                                             config.weight, config.sieve_cap));
            // Route 2: averaged character route.
            auto group = build_group(pt.q);
            KahanSum parseval;
            for (const auto& chi : characters(group))
                parseval.add(l2_integral_exact(pt.X, mode, TwistKernel(chi), config.weight,
                                               config.sieve_cap));
            double lhs = direct.value();
            double rhs = parseval.value() / static_cast<double>(group->phi());
            double rel = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
            double env = envelope_almost_all(config.mode, config.profile, config.density, pt.q,
                                             pt.X, pt.h, config.exceptional);
            double exc_half = exception_density(pt.X, pt.h, pt.q, config.weight, 0.5,
                                                config.sieve_cap);
            double exc_tenth = exception_density(pt.X, pt.h, pt.q, config.weight, 0.1,
                                                 config.sieve_cap);
            ratios[i] = lhs / env;
            rows[i] = {cell(pt.q),  cell(pt.X), cell(pt.h),      weight_name(config.weight),
                       cell(lhs),   cell(env),  cell(ratios[i]), cell(rhs),
                       cell(rel),   cell(exc_half), cell(exc_tenth)};
        },
        config.threads);
    report.rows = std::move(rows);
    for (double r : ratios) report.c_fit = std::max(report.c_fit, r);
    report.pass = report.c_fit <= config.tolerance;
    load_digests(report, config, {});
    return report;
}

SaffariVaughanResult saffari_vaughan_check(double X, double h, const DirichletCharacter& chi,
                                           Weight w, double rel_tol, u64 cap) {
    if (h <= 0 || h > X) throw std::invalid_argument("saffari_vaughan_check: need 0 < h <= X");
    TwistKernel kernel(chi);
    double lhs = l2_integral_range(X, 2 * X, WindowMode{FixedLength{h}}, kernel, w, cap);
    auto inner = [&](double theta) {
        return l2_integral_range(X, 3 * X, WindowMode{Proportional{theta}}, kernel, w, cap);
    };
    double theta_lo = h / (3 * X), theta_hi = 3 * h / X;
    double outer = adaptive_simpson(inner, theta_lo, theta_hi, rel_tol);
    double rhs = X / h * outer;
    return {lhs, rhs, rhs == 0 ? (lhs == 0 ? 0.0 : HUGE_VAL) : lhs / rhs};
}

ExperimentReport run_saffari_vaughan(const ExperimentConfig& config) {
    ExperimentReport report;
    report.kind = ExperimentKind::saffari_vaughan;
    report.tolerance = config.tolerance;
    report.columns = {"q", "label", "X", "h", "weight", "empirical", "envelope", "ratio"};

    struct Point {
        u64 q;
        double X, h;
    };
    std::vector<Point> grid;
    for (u64 q : config.q_values)
        for (double X : config.x_values)
            for (std::size_t yi = 0; yi < window_count(config); ++yi)
                grid.push_back({q, X, resolve_window(config, X, yi)});

    std::vector<std::vector<std::string>> rows(grid.size());
    std::vector<double> ratios(grid.size());
    parallel_for(
        grid.size(),
        [&](std::size_t i) {
            const auto& pt = grid[i];
            auto group = build_group(pt.q);
            auto chi = character_from_label(group, config.label);
            auto res = saffari_vaughan_check(pt.X, pt.h, chi, config.weight, 1e-4,
                                             config.sieve_cap);
            ratios[i] = res.ratio;
            rows[i] = {cell(pt.q), cell(config.label), cell(pt.X),      cell(pt.h),
                       weight_name(config.weight),     cell(res.lhs),   cell(res.rhs),
                       cell(res.ratio)};
        },
        config.threads);
    report.rows = std::move(rows);
    for (double r : ratios) report.c_fit = std::max(report.c_fit, r);
    report.pass = report.c_fit <= config.tolerance;
    load_digests(report, config, {});
    return report;
}

ExperimentReport run_explicit_scan(const ExperimentConfig& config) {
    ExperimentReport report;
    report.kind = ExperimentKind::explicit_formula_scan;
    report.tolerance = config.tolerance;
    report.columns = {"q",          "label",   "x", "y", "T", "truth_re", "truth_im",
                      "zero_sum_re", "zero_sum_im", "empirical", "envelope", "ratio"};
    if (config.q_values.size() != 1)
        throw std::invalid_argument("explicit scan: exactly one modulus expected");
    u64 q = config.q_values[0];
    auto it = config.zero_files.find({q, config.label});
    if (it == config.zero_files.end())
        throw std::invalid_argument("explicit scan: no zero file configured for the character");
    ZeroSet zeros = load_zeros(it->second, q, config.label);
    auto group = build_group(q);
    auto chi = character_from_label(group, config.label);

    std::vector<std::vector<FormulaEvaluation>> evals(config.x_values.size());
    parallel_for(
        config.x_values.size(),
        [&](std::size_t i) {
            double x = config.x_values[i];
            double y = resolve_window(config, x, 0);
            evals[i] = residual_scan(x, y, chi, zeros, config.t_values, config.sieve_cap);
        },
        config.threads);

    for (const auto& list : evals)
        for (const auto& fe : list) {
            double r = std::abs(fe.residual);
            report.rows.push_back({cell(q), cell(config.label), cell(fe.x), cell(fe.y), cell(fe.T),
                                   cell(fe.truth.real()), cell(fe.truth.imag()),
                                   cell(fe.zero_sum_value.real()), cell(fe.zero_sum_value.imag()),
                                   cell(r), cell(fe.envelope), cell(r / fe.envelope)});
            report.c_fit = std::max(report.c_fit, r / fe.envelope);
        }
    report.pass = report.c_fit <= config.tolerance;

    // Median |residual| per truncation height across the x grid.
    for (std::size_t ti = 0; ti < config.t_values.size(); ++ti) {
        std::vector<double> res;
        for (const auto& list : evals) res.push_back(std::abs(list[ti].residual));
        std::sort(res.begin(), res.end());
        double median = res.empty() ? 0 : res[res.size() / 2];
        report.notes.push_back("T=" + format_number(config.t_values[ti], 9) +
                               " median_residual=" + format_number(median, 9));
    }
    load_digests(report, config, {it->second});
    return report;
}

ExperimentReport run_density_fit(const ExperimentConfig& config) {
    ExperimentReport report;
    report.kind = ExperimentKind::density_fit;
    report.tolerance = config.tolerance;
    report.columns = {"q", "sigma", "T", "empirical", "envelope", "ratio"};
    std::vector<std::string> used_files;
    for (u64 q : config.q_values) {
        // Assemble one zero set per character; the principal character may
        // fall back to the q=1 data (same nontrivial zeros).
        std::vector<ZeroSet> sets;
        auto group = build_group(q);
        for (const auto& chi : characters(group)) {
            u64 label = conrey_label(chi);
            auto it = config.zero_files.find({q, label});
            if (it == config.zero_files.end() && label == 1)
                it = config.zero_files.find({1, 1});
            if (it == config.zero_files.end())
                throw std::invalid_argument("density fit: missing zero data for q=" +
                                            std::to_string(q) + " label=" + std::to_string(label));
            sets.push_back(load_zeros(it->second));
            used_files.push_back(it->second);
        }
        double beta_max = 0;
        for (const auto& zs : sets)
            for (const auto& z : zs.zeros) beta_max = std::max(beta_max, z.beta);
        report.notes.push_back("q=" + std::to_string(q) +
                               " beta_max=" + format_number(beta_max, 9));
        for (double sigma : config.sigma_values)
            for (double T : config.t_values) {
                std::size_t count = density_sum(sets, q, sigma, T);
                double bound = std::pow(static_cast<double>(q) * T,
                                        config.density.A * (1.0 - sigma)) *
                               config.density.g(q, T);
                double ratio = static_cast<double>(count) / bound;
                report.rows.push_back({cell(q), cell(sigma), cell(T),
                                       cell(static_cast<double>(count)), cell(bound),
                                       cell(ratio)});
                report.c_fit = std::max(report.c_fit, ratio);
            }
        // Zero-free-region check at the grid heights: zeros with
        // beta > 1 - eta(T) violate the region unless they are the single
        // allowed real exceptional zero.
        for (double T : config.t_values) {
            if (T < config.profile.t0()) continue;
            double sigma_free = 1.0 - config.profile.eta(T);
            std::size_t offenders = 0, real_offenders = 0;
            for (const auto& zs : sets)
                for (const auto& z : zs.zeros)
                    if (std::abs(z.gamma) <= T && z.beta > sigma_free) {
                        ++offenders;
                        if (z.gamma == 0) ++real_offenders;
                    }
            const char* status = offenders == 0 ? "holds"
                                 : (offenders == 1 && real_offenders == 1)
                                     ? "exceptional_zero"
                                     : "violated";
            report.notes.push_back("q=" + std::to_string(q) + " T=" + format_number(T, 9) +
                                   " zeros_above_1-eta=" + std::to_string(offenders) +
                                   " zero_free_region=" + status);
        }
    }
    report.pass = report.c_fit <= config.tolerance;
    load_digests(report, config, used_files);
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    switch (config.kind) {
        case ExperimentKind::all_intervals: report = run_all_intervals(config); break;
        case ExperimentKind::almost_all: report = run_almost_all(config); break;
        case ExperimentKind::saffari_vaughan: report = run_saffari_vaughan(config); break;
        case ExperimentKind::explicit_formula_scan: report = run_explicit_scan(config); break;
        case ExperimentKind::density_fit: report = run_density_fit(config); break;
    }
    report.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!config.output_csv.empty()) {
        std::ofstream out(config.output_csv);
        if (!out) throw std::runtime_error("cannot write report CSV: " + config.output_csv);
        out << report.csv();
    }
    if (!config.output_summary.empty()) {
        std::ofstream out(config.output_summary);
        if (!out) throw std::runtime_error("cannot write report summary: " + config.output_summary);
        out << report.summary();
    }
    return report;
}

}  // namespace psap
