#pragma once

#include <map>
#include <string>
#include <vector>

#include "dg_solver.hpp"

namespace wadg {

/// Flat key=value experiment configuration (config file merged with CLI
/// overrides). Unset keys fall back to per-experiment defaults.
struct ExperimentConfig {
    std::string experiment;
    std::map<std::string, std::string> kv;

    bool has(const std::string& key) const { return kv.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_real(const std::string& key, double fallback) const;
    std::vector<int> get_int_list(const std::string& key,
                                  const std::vector<int>& fallback) const;
    /// "N" or "N1..N2" inclusive.
    std::vector<int> get_int_range(const std::string& key,
                                   const std::vector<int>& fallback) const;
};

ExperimentConfig parse_config_file(const std::string& path);

/// Tabulated experiment output: named columns, numeric rows (NaN renders as
/// "na"), rate summary rows, and config metadata echoed as '#' comments.
struct RateTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    struct RateRow {
        std::string label;                // "rate-lsq" / "rate-last"
        std::vector<double> values;       // aligned with header, NaN = blank
    };
    std::vector<RateRow> rate_rows;
    std::vector<std::string> metadata;    // config echo, no '#' prefix
};

/// Least-squares slope of log(err) vs log(h) over all points and the
/// last-interval rate. Zero or negative errors make a rate undefined (NaN).
struct RateEstimate {
    double lsq = 0.0;
    double last_interval = 0.0;
};
RateEstimate estimate_rate(const std::vector<double>& h, const std::vector<double>& err);

void write_csv(const RateTable& table, const std::string& path);
std::string format_sig6(double v);

/// Experiments: projection/conservation studies, convergence studies,
/// the reduced-quadrature sweep, and the snapshot run.
RateTable run_projection_study(const ExperimentConfig& cfg);
RateTable run_projection_cone_study(const ExperimentConfig& cfg);
RateTable run_conservation_study(const ExperimentConfig& cfg);
RateTable run_conservation_regularity_study(const ExperimentConfig& cfg);
RateTable run_convergence_manufactured(const ExperimentConfig& cfg);
RateTable run_convergence_reference(const ExperimentConfig& cfg);
RateTable run_quadrature_sweep(const ExperimentConfig& cfg);
RateTable run_solve(const ExperimentConfig& cfg);

/// Dispatch by cfg.experiment; writes CSV to the `out` key if set.
RateTable run_experiment(const ExperimentConfig& cfg);

/// Apply the WADG_THREADS cap (or explicit count) to linear-algebra threading.
void configure_threads(int count = 0);

namespace detail {
/// L2 projection coefficients (nodal) of f over every element at the given
/// quadrature degree.
Matrix project_nodal(const ReferenceElement& ref, const Mesh2D& mesh, int degree,
                     const SpaceFn& f);
/// Moment vector b_i = int f phi_i per element, at the given degree.
Matrix moment_rhs(const ReferenceElement& ref, const Mesh2D& mesh, int degree,
                  const SpaceFn& f);
/// Global L2 norm of (sum_j coeffs_j phi_j - f) at the given degree.
double l2_error_vs(const ReferenceElement& ref, const Mesh2D& mesh, int degree,
                   const Matrix& coeffs, const SpaceFn& f);
}  // namespace detail

}  // namespace wadg
