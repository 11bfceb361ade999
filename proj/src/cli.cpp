#include "psap/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "psap/experiments.hpp"

namespace psap::cli {

namespace {

constexpr const char* kDataDirVar = "PSAP_DATA_DIR";

struct OutputOptions {
    std::string format = "text";
    bool full = false;
    bool csv() const { return format == "csv"; }
    int digits() const { return (csv() || full) ? 17 : 9; }
};

std::string fmt(double v, const OutputOptions& o) { return format_number(v, o.digits()); }

Weight parse_weight(const std::string& s) {
    if (s == "theta") return Weight::theta;
    if (s == "psi") return Weight::psi;
    throw CLI::ValidationError("--weight", "must be 'theta' or 'psi'");
}

struct ProfileSpec {
    std::string family = "grh";
    double eta0 = 0.5;
    double c = 0.05;
    double t0 = 0;  // 0: family default
};

EtaProfile make_profile(const ProfileSpec& s) {
    double t0 = s.t0;
    if (s.family == "grh") return EtaProfile::grh(t0 > 0 ? t0 : 4);
    if (s.family == "constant") return EtaProfile::constant(s.eta0, t0 > 0 ? t0 : 4);
    if (s.family == "vinogradov-korobov" || s.family == "vk")
        return EtaProfile::vinogradov_korobov(s.c, t0 > 0 ? t0 : 100);
    if (s.family == "classical") return EtaProfile::classical(s.c, t0 > 0 ? t0 : 4);
    throw std::invalid_argument("unknown eta profile family: " + s.family);
}

struct DensitySpec {
    double A = 2.0;
    std::string g = "constant";
    double g0 = 1.0;
    double B = 0.0;
};

DensityEstimate make_density(const DensitySpec& s) {
    DensityEstimate d;
    d.A = s.A;
    d.g0 = s.g0;
    d.B = s.B;
    if (s.g == "constant")
        d.family = DensityEstimate::GFamily::constant;
    else if (s.g == "log-power")
        d.family = DensityEstimate::GFamily::log_power;
    else if (s.g == "subexp")
        d.family = DensityEstimate::GFamily::subexp;
    else
        throw std::invalid_argument("unknown density g family: " + s.g);
    d.validate();
    return d;
}

void add_profile_flags(CLI::App* cmd, ProfileSpec& p, DensitySpec& d) {
    cmd->add_option("--profile", p.family,
                    "zero-free-region family: grh, constant, vinogradov-korobov, classical")
        ->capture_default_str();
    cmd->add_option("--eta0", p.eta0, "constant-family eta value")->capture_default_str();
    cmd->add_option("--c", p.c, "scale constant for classical / vinogradov-korobov");
    cmd->add_option("--T0", p.t0, "profile domain lower bound (0: family default)");
    cmd->add_option("--A", d.A, "zero-density exponent (A >= 2)")->capture_default_str();
    cmd->add_option("--g", d.g, "density g family: constant, log-power, subexp")
        ->capture_default_str();
    cmd->add_option("--g0", d.g0, "constant g value");
    cmd->add_option("--B", d.B, "log-power exponent for g");
}

TwistKernel make_kernel(const std::string& variant, u64 q, u64 a, u64 label) {
    if (variant == "ap") return TwistKernel(ResidueClass{a, q});
    if (variant == "additive") return TwistKernel(AdditiveTwist{a, q});
    if (variant == "character")
        return TwistKernel(character_from_label(build_group(q), label));
    throw std::invalid_argument("unknown kernel variant: " + variant);
}

// Line-oriented `key = value` config with [section] headers.
struct ConfigEntry {
    std::string section, key, value;
    std::size_t line;
};

std::vector<ConfigEntry> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::vector<ConfigEntry> out;
    std::string line, section;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        std::size_t b = s.find_first_not_of(" \t\r");
        std::size_t e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": malformed section header");
            section = t.substr(1, t.size() - 2);
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected 'key = value'");
        out.push_back({section, trim(t.substr(0, eq)), trim(t.substr(eq + 1)), line_no});
    }
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::istringstream in(s);
    std::vector<double> out;
    double v;
    while (in >> v) out.push_back(v);
    return out;
}

std::vector<u64> parse_u64s(const std::string& s) {
    std::istringstream in(s);
    std::vector<u64> out;
    u64 v;
    while (in >> v) out.push_back(v);
    return out;
}

void apply_window_spec(ExperimentConfig& cfg, const std::string& value) {
    if (value.rfind("pow:", 0) == 0) {
        cfg.y_power = std::stod(value.substr(4));
        return;
    }
    if (value.rfind("frac:", 0) == 0) {
        cfg.y_fraction = std::stod(value.substr(5));
        return;
    }
    cfg.y_values = parse_doubles(value);
}

ExperimentConfig config_from_file(const std::string& path) {
    ExperimentConfig cfg;
    ProfileSpec prof;
    DensitySpec dens;
    std::optional<u64> ez_q;
    std::optional<double> ez_beta;
    for (const auto& e : parse_config_file(path)) {
        auto where = [&] { return path + ":" + std::to_string(e.line); };
        if (e.section == "experiment") {
            if (e.key == "kind")
                cfg.kind = kind_from_name(e.value);
            else if (e.key == "weight")
                cfg.weight = parse_weight(e.value);
            else if (e.key == "x" || e.key == "X")
                cfg.x_values = parse_doubles(e.value);
            else if (e.key == "y" || e.key == "h")
                apply_window_spec(cfg, e.value);
            else if (e.key == "q")
                cfg.q_values = parse_u64s(e.value);
            else if (e.key == "residues")
                cfg.residues = e.value == "all" ? std::vector<u64>{} : parse_u64s(e.value);
            else if (e.key == "label")
                cfg.label = std::stoull(e.value);
            else if (e.key == "tolerance")
                cfg.tolerance = std::stod(e.value);
            else if (e.key == "threads")
                cfg.threads = static_cast<unsigned>(std::stoul(e.value));
            else if (e.key == "output")
                cfg.output_csv = e.value;
            else if (e.key == "summary")
                cfg.output_summary = e.value;
            else if (e.key == "eps")
                cfg.eps = std::stod(e.value);
            else if (e.key == "mode")
                cfg.mode = e.value == "density" ? EnvelopeMode::density : EnvelopeMode::ingham;
            else if (e.key == "sigma")
                cfg.sigma_values = parse_doubles(e.value);
            else if (e.key == "T")
                cfg.t_values = parse_doubles(e.value);
            else if (e.key == "cap")
                cfg.sieve_cap = static_cast<u64>(std::stod(e.value));
            else
                throw std::runtime_error(where() + ": unknown experiment key '" + e.key + "'");
        } else if (e.section == "profile") {
            if (e.key == "family")
                prof.family = e.value;
            else if (e.key == "eta0")
                prof.eta0 = std::stod(e.value);
            else if (e.key == "c")
                prof.c = std::stod(e.value);
            else if (e.key == "t0")
                prof.t0 = std::stod(e.value);
            else
                throw std::runtime_error(where() + ": unknown profile key '" + e.key + "'");
        } else if (e.section == "density") {
            if (e.key == "A")
                dens.A = std::stod(e.value);
            else if (e.key == "g")
                dens.g = e.value;
            else if (e.key == "g0")
                dens.g0 = std::stod(e.value);
            else if (e.key == "B")
                dens.B = std::stod(e.value);
            else
                throw std::runtime_error(where() + ": unknown density key '" + e.key + "'");
        } else if (e.section == "exceptional") {
            if (e.key == "q")
                ez_q = std::stoull(e.value);
            else if (e.key == "beta0")
                ez_beta = std::stod(e.value);
            else
                throw std::runtime_error(where() + ": unknown exceptional key '" + e.key + "'");
        } else if (e.section == "zeros") {
            if (e.key != "file")
                throw std::runtime_error(where() + ": unknown zeros key '" + e.key + "'");
            auto c1 = e.value.find(',');
            auto c2 = e.value.find(',', c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos)
                throw std::runtime_error(where() + ": zeros file entries are 'q,label,path'");
            u64 q = std::stoull(e.value.substr(0, c1));
            u64 label = std::stoull(e.value.substr(c1 + 1, c2 - c1 - 1));
            cfg.zero_files[{q, label}] = resolve_data_path(e.value.substr(c2 + 1));
        } else {
            throw std::runtime_error(where() + ": unknown section '" + e.section + "'");
        }
    }
    cfg.profile = make_profile(prof);
    cfg.density = make_density(dens);
    if (ez_q || ez_beta) {
        if (!ez_q || !ez_beta)
            throw std::runtime_error(path + ": exceptional section needs both q and beta0");
        cfg.exceptional = ExceptionalZero{*ez_q, *ez_beta};
    }
    cfg.digest_inputs.push_back(path);
    return cfg;
}

void print_points(const PrimeSegment& seg, bool with_powers, const OutputOptions& o,
                  std::ostream& out) {
    if (o.csv()) out << "n,weight,kind\n";
    auto emit = [&](u64 n, double w, const char* kind) {
        if (o.csv())
            out << n << "," << format_number(w, 17) << "," << kind << "\n";
        else
            out << n << " " << fmt(w, o) << " " << kind << "\n";
    };
    if (with_powers) {
        for (const auto& pt : seg.all_points())
            emit(pt.n, pt.log_p,
                 std::binary_search(seg.primes.begin(), seg.primes.end(), pt.n) ? "prime"
                                                                                : "prime-power");
    } else {
        for (std::size_t i = 0; i < seg.primes.size(); ++i)
            emit(seg.primes[i], seg.prime_logs[i], "prime");
    }
}

}  // namespace

std::string resolve_data_path(const std::string& path) {
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    if (const char* dir = std::getenv(kDataDirVar)) {
        fs::path candidate = fs::path(dir) / path;
        if (fs::exists(candidate)) return candidate.string();
    }
    return path;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.push_back("psap");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{
        "psap: error terms of prime counting in short arithmetic progressions.\n"
        "Zero-data files referenced by relative path are also looked up under\n"
        "the directory named by the PSAP_DATA_DIR environment variable."};
    app.require_subcommand(1);

    OutputOptions opt;
    unsigned threads = 1;
    app.add_option("--format", opt.format, "output format: text or csv")
        ->check(CLI::IsMember({"text", "csv"}))
        ->capture_default_str();
    app.add_flag("--full", opt.full, "print maximum precision");
    auto* threads_opt =
        app.add_option("--threads", threads, "worker thread cap")->capture_default_str();

    int rc = 0;
    auto guard = [&](auto&& fn) {
        return [&, fn]() {
            try {
                fn();
            } catch (const std::exception& e) {
                err << "error: " << e.what() << "\n";
                rc = 1;
            }
        };
    };

    // ---- sieve ----
    auto* sieve_cmd = app.add_subcommand("sieve", "primes and prime powers in (x, x+y]");
    double sx = 0, sy = 0;
    std::string sweight = "theta";
    sieve_cmd->add_option("--x", sx, "interval start (exclusive)")->required();
    sieve_cmd->add_option("--y", sy, "signed interval length")->required();
    sieve_cmd->add_option("--weight", sweight, "theta: primes only; psi: include prime powers")
        ->capture_default_str();
    sieve_cmd->callback(guard([&] {
        bool powers = parse_weight(sweight) == Weight::psi;
        PrimeSegment seg = powers ? lambda_points(sx, sy) : primes_in(sx, sy);
        print_points(seg, powers, opt, out);
    }));

    // ---- delta ----
    auto* delta_cmd = app.add_subcommand("delta", "twisted Chebyshev error term");
    double dx = 0, dy = 0;
    u64 dq = 1, da = 1, dlabel = 1;
    std::string dweight = "theta", dvariant = "ap";
    delta_cmd->add_option("--x", dx)->required();
    delta_cmd->add_option("--y", dy)->required();
    delta_cmd->add_option("--q", dq, "modulus")->capture_default_str();
    delta_cmd->add_option("--a", da, "residue (ap / additive variants)")->capture_default_str();
    delta_cmd->add_option("--label", dlabel, "character label (character variant)")
        ->capture_default_str();
    delta_cmd->add_option("--weight", dweight, "theta or psi")->capture_default_str();
    delta_cmd->add_option("--variant", dvariant, "ap, character or additive")
        ->check(CLI::IsMember({"ap", "character", "additive"}))
        ->capture_default_str();
    delta_cmd->callback(guard([&] {
        auto res = chebyshev_error(dx, dy, make_kernel(dvariant, dq, da, dlabel),
                                   parse_weight(dweight));
        if (opt.csv()) {
            out << "x,y,q,variant,weight,value_re,value_im\n";
            out << format_number(dx, 17) << "," << format_number(dy, 17) << "," << dq << ","
                << dvariant << "," << dweight << "," << format_number(res.value.real(), 17) << ","
                << format_number(res.value.imag(), 17) << "\n";
        } else if (res.real_variant) {
            out << fmt(res.real_value(), opt) << "\n";
        } else {
            out << format_complex(res.value, opt.digits()) << "\n";
        }
    }));

    // ---- identities ----
    auto* id_cmd = app.add_subcommand(
        "identities", "character decomposition and averaged-square identities");
    double ix = 0, iy = 0;
    u64 iq = 1, ia = 1;
    std::string iweight = "theta";
    id_cmd->add_option("--x", ix)->required();
    id_cmd->add_option("--y", iy)->required();
    id_cmd->add_option("--q", iq)->required();
    id_cmd->add_option("--a", ia)->capture_default_str();
    id_cmd->add_option("--weight", iweight)->capture_default_str();
    id_cmd->callback(guard([&] {
        Weight w = parse_weight(iweight);
        auto dec = decompose_ap(ix, iy, iq, ia, w);
        auto add = decompose_additive(ix, iy, iq, ia, w);
        auto par = averaged_square(ix, iy, iq, SquareVariant::arithmetic_progression, w);
        auto pad = averaged_square(ix, iy, iq, SquareVariant::additive, w);
        out << "decomposition_direct = " << format_complex(dec.direct.value, opt.digits()) << "\n";
        out << "decomposition_reconstructed = " << format_complex(dec.reconstructed, opt.digits())
            << "\n";
        out << "decomposition_error = "
            << fmt(std::abs(dec.direct.value - dec.reconstructed), opt) << "\n";
        out << "additive_direct = " << format_complex(add.direct.value, opt.digits()) << "\n";
        out << "additive_reconstructed = " << format_complex(add.reconstructed, opt.digits())
            << "\n";
        out << "additive_residual = " << fmt(add.residual, opt) << "\n";
        out << "parseval_lhs = " << fmt(par.lhs, opt) << "\n";
        out << "parseval_rhs = " << fmt(par.rhs, opt) << "\n";
        out << "parseval_error = " << fmt(std::abs(par.lhs - par.rhs), opt) << "\n";
        out << "parseval_additive_lhs = " << fmt(pad.lhs, opt) << "\n";
        out << "parseval_additive_rhs = " << fmt(pad.rhs, opt) << "\n";
    }));

    // ---- gauss ----
    auto* gauss_cmd = app.add_subcommand("gauss", "Gauss sums of the characters mod q");
    u64 gq = 1;
    u64 glabel = 1;
    gauss_cmd->add_option("--q", gq)->required();
    auto* glab_opt = gauss_cmd->add_option("--label", glabel, "single character label");
    gauss_cmd->callback(guard([&] {
        auto group = build_group(gq);
        std::vector<DirichletCharacter> chars;
        if (glab_opt->count())
            chars.push_back(character_from_label(group, glabel));
        else
            chars = characters(group);
        if (opt.csv()) out << "q,label,order,parity,conductor,primitive,tau_re,tau_im\n";
        for (const auto& chi : chars) {
            complex tau = gauss_sum(chi);
            if (opt.csv())
                out << gq << "," << conrey_label(chi) << "," << chi.order() << "," << chi.parity()
                    << "," << chi.conductor() << "," << (chi.is_primitive() ? 1 : 0) << ","
                    << format_number(tau.real(), 17) << "," << format_number(tau.imag(), 17)
                    << "\n";
            else
                out << "chi(" << gq << "," << conrey_label(chi) << ") order=" << chi.order()
                    << " conductor=" << chi.conductor()
                    << (chi.is_primitive() ? " primitive" : "") << " tau = "
                    << format_complex(tau, opt.digits()) << "\n";
        }
    }));

    // ---- zeros ----
    auto* zeros_cmd = app.add_subcommand("zeros", "L-function zero acquisition and counting");
    zeros_cmd->require_subcommand(1);

    auto* zfind = zeros_cmd->add_subcommand("find", "critical-line sign-change search");
    u64 zq = 1, zlabel = 1;
    double zT = 0;
    std::string zout;
    double zcoarse = 1e-2, zfine = 1e-3;
    zfind->add_option("--q", zq)->required();
    zfind->add_option("--label", zlabel)->capture_default_str();
    zfind->add_option("--T", zT)->required();
    zfind->add_option("--out", zout, "write the zero file here");
    zfind->add_option("--coarse-step", zcoarse)->capture_default_str();
    zfind->add_option("--fine-step", zfine)->capture_default_str();
    zfind->callback(guard([&] {
        auto chi = character_from_label(build_group(zq), zlabel);
        FindZeroOptions fo;
        fo.coarse_step = zcoarse;
        fo.fine_step = zfine;
        fo.threads = threads;
        auto zs = find_zeros(chi, zT, fo);
        if (!zout.empty()) save_zeros(zout, zs);
        out << "q = " << zq << "\n";
        out << "label = " << zlabel << "\n";
        out << "tmax = " << fmt(zs.t_max, opt) << "\n";
        out << "count = " << zs.zeros.size() << "\n";
        if (zout.empty())
            for (const auto& z : zs.zeros) out << fmt(z.gamma, opt) << "\n";
        else
            out << "written = " << zout << "\n";
    }));

    auto* zload = zeros_cmd->add_subcommand("load", "validate a zero file");
    std::string zfile;
    u64 zexp_q = 0, zexp_label = 0;
    zload->add_option("--file", zfile)->required();
    auto* zq_opt = zload->add_option("--q", zexp_q, "expected modulus");
    auto* zl_opt = zload->add_option("--label", zexp_label, "expected label");
    zload->callback(guard([&] {
        auto zs = load_zeros(resolve_data_path(zfile),
                             zq_opt->count() ? std::optional<u64>(zexp_q) : std::nullopt,
                             zl_opt->count() ? std::optional<u64>(zexp_label) : std::nullopt);
        out << "q = " << zs.q << "\n";
        out << "label = " << zs.label << "\n";
        out << "tmax = " << fmt(zs.t_max, opt) << "\n";
        out << "count = " << zs.zeros.size() << "\n";
        out << "critical_line = " << (zs.critical_line ? "true" : "false") << "\n";
        out << "count_warning = " << (zs.count_warning ? "true" : "false") << "\n";
    }));

    auto* zcount = zeros_cmd->add_subcommand("count", "N(sigma, T) from a zero file");
    std::string zcfile;
    double zsigma = 0, zcT = 0;
    zcount->add_option("--file", zcfile)->required();
    zcount->add_option("--sigma", zsigma)->capture_default_str();
    zcount->add_option("--T", zcT)->required();
    zcount->callback(guard([&] {
        auto zs = load_zeros(resolve_data_path(zcfile));
        out << count_zeros(zs, zsigma, zcT) << "\n";
    }));

    auto* zpred = zeros_cmd->add_subcommand("predict", "vertical-distribution main term");
    u64 pq = 1;
    double pT = 0;
    zpred->add_option("--q", pq)->required();
    zpred->add_option("--T", pT)->required();
    zpred->callback(guard([&] { out << fmt(vertical_prediction(pq, pT), opt) << "\n"; }));

    // ---- explicit ----
    auto* explicit_cmd = app.add_subcommand("explicit", "truncated explicit formula");
    explicit_cmd->require_subcommand(1);
    auto* escan = explicit_cmd->add_subcommand("scan", "residuals against the sieved truth");
    u64 eq = 1, elabel = 1;
    std::string ezeros;
    std::vector<double> ex_list, eT_list;
    double ey = 0;
    escan->add_option("--q", eq)->capture_default_str();
    escan->add_option("--label", elabel)->capture_default_str();
    escan->add_option("--zeros", ezeros, "zero file for the character")->required();
    escan->add_option("--x", ex_list, "x grid")->required();
    escan->add_option("--y", ey)->required();
    escan->add_option("--T", eT_list, "truncation heights")->required();
    escan->callback(guard([&] {
        ExperimentConfig cfg;
        cfg.kind = ExperimentKind::explicit_formula_scan;
        cfg.q_values = {eq};
        cfg.label = elabel;
        cfg.x_values = ex_list;
        cfg.y_values = {ey};
        cfg.t_values = eT_list;
        cfg.threads = threads;
        cfg.zero_files[{eq, elabel}] = resolve_data_path(ezeros);
        auto report = run_explicit_scan(cfg);
        if (opt.csv()) {
            out << report.csv();
        } else {
            for (const auto& row : report.rows)
                out << "x=" << format_number(std::stod(row[2]), opt.digits())
                    << " T=" << format_number(std::stod(row[4]), opt.digits())
                    << " residual=" << format_number(std::stod(row[9]), opt.digits())
                    << " envelope=" << format_number(std::stod(row[10]), opt.digits()) << "\n";
            for (const auto& n : report.notes) out << n << "\n";
        }
    }));

    // ---- envelope ----
    auto* env_cmd = app.add_subcommand("envelope", "theoretical bound envelopes");
    env_cmd->require_subcommand(1);

    auto* eall = env_cmd->add_subcommand("all", "all-intervals envelope");
    ProfileSpec eprof;
    DensitySpec edens;
    u64 envq = 1;
    double envx = 0, envy = 0, enveps = 0.1, envbeta0 = 0;
    std::string envmode = "ingham";
    add_profile_flags(eall, eprof, edens);
    eall->add_option("--q", envq)->capture_default_str();
    eall->add_option("--x", envx)->required();
    auto* y_opt = eall->add_option("--y", envy, "window length (density mode)");
    eall->add_option("--eps", enveps)->capture_default_str();
    eall->add_option("--mode", envmode)->check(CLI::IsMember({"ingham", "density"}));
    auto* b0_opt = eall->add_option("--beta0", envbeta0, "inject an exceptional zero");
    eall->callback(guard([&] {
        auto profile = make_profile(eprof);
        auto density = make_density(edens);
        EnvelopeMode mode = envmode == "density" ? EnvelopeMode::density : EnvelopeMode::ingham;
        std::optional<ExceptionalZero> ez;
        if (b0_opt->count()) ez = ExceptionalZero{envq, envbeta0};
        double y = y_opt->count() ? envy : envx;
        double thr = y_threshold(mode, profile, density, envq, envx, enveps);
        double env = envelope_all(mode, profile, density, envq, envx, y, ez);
        out << fmt(env, opt) << "\n";
        out << "threshold = " << fmt(thr, opt) << "\n";
        if (std::abs(y) < thr || std::abs(y) > envx)
            err << "warning: y outside the admissible window [" << fmt(thr, opt) << ", "
                << fmt(envx, opt) << "]\n";
    }));

    auto* ealmost = env_cmd->add_subcommand("almost-all", "averaged-square envelope");
    ealmost->set_help_flag("--help", "print help");  // frees -h for the window flag
    ProfileSpec aprof;
    DensitySpec adens;
    u64 aq = 1;
    double aX = 0, ah = 0, aeps = 0.1, abeta0 = 0;
    std::string amode = "ingham";
    add_profile_flags(ealmost, aprof, adens);
    ealmost->add_option("--q", aq)->capture_default_str();
    ealmost->add_option("--X", aX)->required();
    auto* h_opt = ealmost->add_option("--h", ah, "window length");
    ealmost->add_option("--eps", aeps)->capture_default_str();
    ealmost->add_option("--mode", amode)->check(CLI::IsMember({"ingham", "density"}));
    auto* ab0_opt = ealmost->add_option("--beta0", abeta0, "inject an exceptional zero");
    ealmost->callback(guard([&] {
        auto profile = make_profile(aprof);
        auto density = make_density(adens);
        EnvelopeMode mode = amode == "density" ? EnvelopeMode::density : EnvelopeMode::ingham;
        std::optional<ExceptionalZero> ez;
        if (ab0_opt->count()) ez = ExceptionalZero{aq, abeta0};
        double thr = h_threshold(mode, profile, density, aq, aX, aeps);
        out << "threshold = " << fmt(thr, opt) << "\n";
        if (h_opt->count()) {
            double env = envelope_almost_all(mode, profile, density, aq, aX, ah, ez);
            out << "envelope = " << fmt(env, opt) << "\n";
            if (std::abs(ah) < thr || std::abs(ah) > aX)
                err << "warning: h outside the admissible window\n";
        }
    }));

    auto* ewin = env_cmd->add_subcommand("window", "corollary admissibility windows");
    ewin->set_help_flag("--help", "print help");
    std::string wkind;
    CorollaryParams wp;
    double wh = 0;
    ewin->add_option("--kind", wkind,
                     "korobov-all, log-power-all, korobov-almost-all, log-power-almost-all")
        ->required();
    ewin->add_option("--A", wp.A)->capture_default_str();
    ewin->add_option("--alpha", wp.alpha)->capture_default_str();
    ewin->add_option("--B", wp.B)->capture_default_str();
    ewin->add_option("--C", wp.C)->capture_default_str();
    ewin->add_option("--eta0", wp.eta0)->capture_default_str();
    ewin->add_option("--q", wp.q)->capture_default_str();
    ewin->add_option("--x", wp.x)->required();
    auto* wh_opt = ewin->add_option("--h", wh, "evaluate the exception count at this h");
    ewin->callback(guard([&] {
        WindowKind kind;
        if (wkind == "korobov-all")
            kind = WindowKind::korobov_all;
        else if (wkind == "log-power-all")
            kind = WindowKind::log_power_all;
        else if (wkind == "korobov-almost-all")
            kind = WindowKind::korobov_almost_all;
        else if (wkind == "log-power-almost-all")
            kind = WindowKind::log_power_almost_all;
        else
            throw std::invalid_argument("unknown window kind: " + wkind);
        if (wh_opt->count()) wp.h = wh;
        auto w = corollary_window(kind, wp);
        out << "lo = " << fmt(w.lo, opt) << "\n";
        out << "hi = " << fmt(w.hi, opt) << "\n";
        if (w.exceptions) out << "exceptions = " << fmt(*w.exceptions, opt) << "\n";
    }));

    // ---- experiment ----
    auto* exp_cmd = app.add_subcommand("experiment", "experiment harness");
    exp_cmd->require_subcommand(1);
    auto* erun = exp_cmd->add_subcommand("run", "run an experiment from a config file");
    std::string econfig, eout, esummary;
    double etol = -1;
    erun->add_option("--config", econfig)->required();
    erun->add_option("--out", eout, "override the CSV output path");
    erun->add_option("--summary", esummary, "override the summary output path");
    erun->add_option("--tolerance", etol, "override the ratio tolerance");
    erun->callback(guard([&] {
        ExperimentConfig cfg = config_from_file(econfig);
        if (!eout.empty()) cfg.output_csv = eout;
        if (!esummary.empty()) cfg.output_summary = esummary;
        if (etol >= 0) cfg.tolerance = etol;
        if (threads_opt->count() || cfg.threads == 0) cfg.threads = threads;
        auto report = run_experiment(cfg);
        out << report.summary();
        if (!report.pass) rc = 1;
    }));

    // ---- report ----
    auto* rep_cmd = app.add_subcommand("report", "summarize an experiment CSV");
    std::string rcsv;
    rep_cmd->add_option("--csv", rcsv)->required();
    rep_cmd->callback(guard([&] {
        std::ifstream in(resolve_data_path(rcsv));
        if (!in) throw std::runtime_error("cannot open CSV: " + rcsv);
        std::string header;
        if (!std::getline(in, header)) throw std::runtime_error("empty CSV: " + rcsv);
        std::vector<std::string> cols;
        std::istringstream hs(header);
        std::string tok;
        while (std::getline(hs, tok, ',')) cols.push_back(tok);
        auto ratio_it = std::find(cols.begin(), cols.end(), "ratio");
        std::size_t ratio_idx = static_cast<std::size_t>(ratio_it - cols.begin());
        std::size_t rows = 0;
        double max_ratio = 0;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            ++rows;
            if (ratio_it == cols.end()) continue;
            std::istringstream ls(line);
            std::string cell;
            for (std::size_t i = 0; std::getline(ls, cell, ','); ++i)
                if (i == ratio_idx) max_ratio = std::max(max_ratio, std::stod(cell));
        }
        out << "columns = " << header << "\n";
        out << "rows = " << rows << "\n";
        if (ratio_it != cols.end()) out << "max_ratio = " << fmt(max_ratio, opt) << "\n";
    }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }
    return rc;
}

}  // namespace psap::cli
