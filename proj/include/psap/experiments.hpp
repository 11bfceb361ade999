#pragma once

#include <map>
#include <string>

#include "psap/envelopes.hpp"
#include "psap/explicit_formula.hpp"

namespace psap {

enum class ExperimentKind {
    all_intervals,
    almost_all,
    saffari_vaughan,
    explicit_formula_scan,
    density_fit,
};

std::string kind_name(ExperimentKind k);
ExperimentKind kind_from_name(const std::string& s);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::all_intervals;
    Weight weight = Weight::theta;

    std::vector<double> x_values;  // x (all-intervals, explicit scan) or X grid
    std::vector<double> y_values;  // explicit y or h values (cross product with x)
    double y_power = 0;            // if > 0, y = x^power per grid point
    double y_fraction = 0;         // if > 0, y = fraction * x per grid point
    std::vector<u64> q_values;
    std::vector<u64> residues;  // empty: all residues coprime to q

    EtaProfile profile = EtaProfile::grh();
    DensityEstimate density;
    EnvelopeMode mode = EnvelopeMode::ingham;
    std::optional<ExceptionalZero> exceptional;
    double eps = 0.1;

    std::vector<double> t_values;      // explicit-formula truncation heights
    std::vector<double> sigma_values;  // density fit
    u64 label = 1;                     // character label for single-character kinds
    std::map<std::pair<u64, u64>, std::string> zero_files;  // (q, label) -> path

    std::string output_csv;
    std::string output_summary;
    double tolerance = 100.0;  // pass iff every ratio is at most this
    unsigned threads = 1;
    u64 sieve_cap = default_sieve_cap;
    std::vector<std::string> digest_inputs;  // files hashed into the report
};

struct ExperimentReport {
    ExperimentKind kind = ExperimentKind::all_intervals;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;  // full-precision cells
    double c_fit = 0;  // max empirical/envelope ratio over the grid
    bool pass = true;
    double tolerance = 100.0;
    std::vector<std::pair<std::string, std::string>> digests;  // path, fnv64 hex
    double runtime_seconds = 0;  // summary only; never in the CSV
    std::vector<std::string> notes;

    std::string csv() const;
    std::string summary() const;
};

ExperimentReport run_all_intervals(const ExperimentConfig& config);
ExperimentReport run_almost_all(const ExperimentConfig& config);
ExperimentReport run_saffari_vaughan(const ExperimentConfig& config);
ExperimentReport run_explicit_scan(const ExperimentConfig& config);
ExperimentReport run_density_fit(const ExperimentConfig& config);

// Dispatches on config.kind and writes the CSV / summary files when paths are
// set.
ExperimentReport run_experiment(const ExperimentConfig& config);

struct SaffariVaughanResult {
    double lhs;    // integral of |Delta_psi(u, h, chi)|^2 over [X, 2X]
    double rhs;    // (X/|h|) * double integral over proportional windows
    double ratio;  // lhs / rhs
};

// Both sides of the substitution bound; the outer theta-integral uses
// adaptive Simpson over exact inner integrals.
SaffariVaughanResult saffari_vaughan_check(double X, double h, const DirichletCharacter& chi,
                                           Weight w, double rel_tol = 1e-4,
                                           u64 cap = default_sieve_cap);

// Fraction of integer starting points n in [X, 2X) whose window error exceeds
// delta * h / phi(q), maximized over the residue classes.
double exception_density(double X, double h, u64 q, Weight w, double delta,
                         u64 cap = default_sieve_cap);

}  // namespace psap
