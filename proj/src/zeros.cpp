#include "psap/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace psap {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_symmetric(const std::vector<Zero>& zs) {
    std::size_t n = zs.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Zero& a = zs[i];
        const Zero& b = zs[n - 1 - i];
        if (std::abs(a.gamma + b.gamma) > 1e-9 || std::abs(a.beta - b.beta) > 1e-9) return false;
    }
    return true;
}

}  // namespace

ZeroSet ZeroSet::reflected() const {
    ZeroSet out = *this;
    for (auto& z : out.zeros) z.gamma = -z.gamma;
    std::reverse(out.zeros.begin(), out.zeros.end());
    return out;
}

double vertical_prediction(u64 q, double T) {
    if (T < 4) throw std::invalid_argument("vertical_prediction: requires T >= 4");
    if (q == 0) throw std::invalid_argument("vertical_prediction: modulus must be positive");
    double qT = static_cast<double>(q) * T;
    return T / kPi * (std::log(qT / (2 * kPi)) - 1.0);
}

void validate_zero_set(ZeroSet& zs) {
    for (std::size_t i = 0; i < zs.zeros.size(); ++i) {
        const Zero& z = zs.zeros[i];
        if (!(z.beta > 0 && z.beta < 1))
            throw std::runtime_error("zero set: beta outside (0,1) at index " + std::to_string(i));
        if (i > 0 && !(zs.zeros[i - 1].gamma < z.gamma))
            throw std::runtime_error("zero set: gamma not strictly increasing at index " +
                                     std::to_string(i));
        if (std::abs(z.gamma) > zs.t_max + 1e-9)
            throw std::runtime_error("zero set: gamma exceeds declared tmax at index " +
                                     std::to_string(i));
    }
    zs.critical_line = std::all_of(zs.zeros.begin(), zs.zeros.end(),
                                   [](const Zero& z) { return z.beta == 0.5; });
    zs.count_warning = false;
    if (zs.t_max >= 4) {
        double pred = vertical_prediction(zs.q, zs.t_max);
        double dev = std::abs(static_cast<double>(zs.zeros.size()) - pred);
        if (dev > 5 * std::log(static_cast<double>(zs.q) * zs.t_max)) {
            zs.count_warning = true;
            std::cerr << "warning: zero set q=" << zs.q << " label=" << zs.label << " has "
                      << zs.zeros.size() << " zeros to tmax=" << zs.t_max
                      << " but the vertical prediction is " << pred << "\n";
        }
    }
}

std::size_t count_zeros(const ZeroSet& zs, double sigma, double T) {
    if (sigma < 0 || sigma >= 1) throw std::invalid_argument("count_zeros: sigma must be in [0,1)");
    if (T > zs.t_max + 1e-9)
        throw std::invalid_argument("count_zeros: T exceeds t_max (completeness unknown)");
    std::size_t n = 0;
    for (const Zero& z : zs.zeros)
        if (z.beta > sigma && std::abs(z.gamma) <= T) ++n;
    return n;
}

ZeroSet load_zeros(const std::string& path, std::optional<u64> expect_q,
                   std::optional<u64> expect_label) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open zero file: " + path);
    ZeroSet zs;
    zs.source = ZeroSet::Source::file;
    bool have_header = false;
    bool beta_column = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            if (have_header) continue;
            std::istringstream hs(line.substr(first + 1));
            std::string tok;
            while (hs >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                try {
                    if (key == "q")
                        zs.q = std::stoull(val);
                    else if (key == "label")
                        zs.label = std::stoull(val);
                    else if (key == "tmax")
                        zs.t_max = std::stod(val);
                    else if (key == "columns")
                        beta_column = val == "gamma,beta";
                } catch (const std::exception&) {
                    throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                             ": malformed header value '" + tok + "'");
                }
            }
            have_header = true;
            continue;
        }
        if (!have_header)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": data before header line");
        std::istringstream ls(line);
        Zero z{0.5, 0.0};
        if (!(ls >> z.gamma))
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed line");
        if (beta_column) {
            double b;
            if (!(ls >> b))
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": missing beta column");
            z.beta = b;
        }
        std::string extra;
        if (ls >> extra)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": trailing token '" +
                                     extra + "'");
        if (!zs.zeros.empty() && !(zs.zeros.back().gamma < z.gamma))
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": gamma not strictly increasing");
        zs.zeros.push_back(z);
    }
    if (!have_header) throw std::runtime_error(path + ": missing header line");
    if (expect_q && zs.q != *expect_q)
        throw std::runtime_error(path + ": header modulus " + std::to_string(zs.q) +
                                 " does not match expected " + std::to_string(*expect_q));
    if (expect_label && zs.label != *expect_label)
        throw std::runtime_error(path + ": header label " + std::to_string(zs.label) +
                                 " does not match expected " + std::to_string(*expect_label));

    bool all_positive = !zs.zeros.empty() &&
                        std::all_of(zs.zeros.begin(), zs.zeros.end(),
                                    [](const Zero& z) { return z.gamma > 0; });
    if (all_positive) {
        std::vector<Zero> full;
        full.reserve(zs.zeros.size() * 2);
        for (auto it = zs.zeros.rbegin(); it != zs.zeros.rend(); ++it)
            full.push_back({it->beta, -it->gamma});
        full.insert(full.end(), zs.zeros.begin(), zs.zeros.end());
        zs.zeros = std::move(full);
    }
    validate_zero_set(zs);
    return zs;
}

void save_zeros(const std::string& path, const ZeroSet& zs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write zero file: " + path);
    // A zero at gamma = 0 cannot be recovered by the loader's reflection
    // closure, so such sets are stored with both signs explicitly.
    bool positive_only = is_symmetric(zs.zeros) &&
                         std::none_of(zs.zeros.begin(), zs.zeros.end(),
                                      [](const Zero& z) { return z.gamma == 0; });
    bool beta_column = std::any_of(zs.zeros.begin(), zs.zeros.end(),
                                   [](const Zero& z) { return z.beta != 0.5; });
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", zs.t_max);
    out << "# q=" << zs.q << " label=" << zs.label << " tmax=" << buf
        << " columns=" << (beta_column ? "gamma,beta" : "gamma") << "\n";
    for (const Zero& z : zs.zeros) {
        if (positive_only && z.gamma <= 0) continue;
        std::snprintf(buf, sizeof buf, "%.7f", z.gamma);
        out << buf;
        if (beta_column) {
            std::snprintf(buf, sizeof buf, " %.9g", z.beta);
            out << buf;
        }
        out << "\n";
    }
}

namespace {

// One full scan pass: evaluate Z on the piecewise grid, bisect each bracket.
std::vector<double> scan_for_zeros(const CriticalLineFunction& zf, double t_lo, double t_hi,
                                   double coarse, double fine, double bisect_width,
                                   unsigned threads) {
    // Piecewise grid: coarse step while |t| <= 50, fine above.
    std::vector<double> ts;
    double t = t_lo;
    ts.push_back(t);
    while (t < t_hi) {
        double step = std::abs(t) < 50.0 ? coarse : fine;
        t = std::min(t_hi, t + step);
        ts.push_back(t);
    }
    std::vector<double> vals(ts.size());
    parallel_for(
        ts.size(), [&](std::size_t i) { vals[i] = zf(ts[i]); }, threads);

    std::vector<double> found;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        double za = vals[i], zb = vals[i + 1];
        if (za == 0.0) {
            if (found.empty() || std::abs(found.back() - ts[i]) > bisect_width)
                found.push_back(ts[i]);
            continue;
        }
        if (za * zb >= 0) continue;
        double a = ts[i], b = ts[i + 1];
        while (b - a > bisect_width) {
            double mid = 0.5 * (a + b);
            double zm = zf(mid);
            if (zm == 0.0) {
                a = b = mid;
                break;
            }
            if ((za < 0) == (zm < 0))
                a = mid, za = zm;
            else
                b = mid;
        }
        found.push_back(0.5 * (a + b));
    }
    return found;
}

}  // namespace

ZeroSet find_zeros(const DirichletCharacter& chi, double T, const FindZeroOptions& opts) {
    if (!chi.is_primitive())
        throw std::invalid_argument("find_zeros: character must be primitive");
    u64 q = chi.modulus();
    if (q > opts.max_q) throw std::invalid_argument("find_zeros: modulus above desk-scale cap");
    double cap = q == 1 ? opts.max_t_small_q : opts.max_t;
    if (T > cap) throw std::invalid_argument("find_zeros: height above desk-scale cap");

    ZeroSet zs;
    zs.q = q;
    zs.label = conrey_label(chi);
    zs.t_max = std::max(T, 0.0);
    zs.source = ZeroSet::Source::computed;
    if (T <= 0) return zs;

    CriticalLineFunction zf(chi);
    bool symmetric = chi.is_real();

    double coarse = opts.coarse_step, fine = opts.fine_step;
    for (int attempt = 0;; ++attempt) {
        std::vector<double> gammas;
        if (symmetric) {
            auto pos = scan_for_zeros(zf, 0.0, T, coarse, fine, opts.bisect_width, opts.threads);
            gammas.reserve(pos.size() * 2);
            for (auto it = pos.rbegin(); it != pos.rend(); ++it) gammas.push_back(-*it);
            gammas.insert(gammas.end(), pos.begin(), pos.end());
        } else {
            gammas = scan_for_zeros(zf, -T, T, coarse, fine, opts.bisect_width, opts.threads);
        }
        zs.zeros.clear();
        for (double g : gammas) zs.zeros.push_back({0.5, g});

        if (T < 4) break;  // too low for the vertical count to mean anything
        double pred = vertical_prediction(q, T);
        double dev = std::abs(static_cast<double>(zs.zeros.size()) - pred);
        if (dev <= 5 * std::log(static_cast<double>(q) * T)) break;
        if (attempt >= opts.max_refines)
            throw std::runtime_error("find_zeros: located " + std::to_string(zs.zeros.size()) +
                                     " zeros but the vertical count predicts about " +
                                     std::to_string(pred));
        coarse /= 2;
        fine /= 2;
    }
    validate_zero_set(zs);
    return zs;
}

std::size_t density_sum(std::span<const ZeroSet> sets, u64 q, double sigma, double T) {
    if (sets.size() != euler_phi(q))
        throw std::invalid_argument("density_sum: need one zero set per character mod q");
    std::size_t total = 0;
    for (const ZeroSet& zs : sets) total += count_zeros(zs, sigma, T);
    return total;
}

double condition2_ratio(std::size_t count, u64 q, double T, double sigma, double A,
                        double g_value) {
    double rhs = std::pow(static_cast<double>(q) * T, A * (1.0 - sigma)) * g_value;
    return static_cast<double>(count) / rhs;
}

}  // namespace psap
