#ifndef WCBSE_RUNNER_HPP
#define WCBSE_RUNNER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wcbse/verify.hpp"

namespace wcbse {

/// Exit codes of the front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 2,
    exit_numerical_failure = 3,
    exit_table_mismatch = 4,
};

/// Flat configuration for one run. Parsed from a key = value file and/or
/// command-line overrides; unknown keys are rejected.
struct RunConfig {
    std::string mode; ///< solve, table1, table2, converge, verify

    std::optional<double> delta;
    std::optional<double> epsilon2;
    std::optional<double> xi; ///< defaults to (1 + delta)/2 when unset
    std::optional<int> ell;
    std::optional<int> n_p;
    std::optional<int> n_theta;

    double c_prime = 1.0;
    double c_dprime = 0.01;
    double a = 1.0;
    int script_n = 1;
    int n_gl = 12;
    int n_gc = 0; ///< 0 = auto
    double tol_real = 1e-6;
    int n_eigen = 6;
    int n_threads = 0; ///< 0 = hardware concurrency
    std::string out_dir;
    std::vector<int> ladder = {5, 10, 20}; ///< n_p rungs for converge mode

    /// Parse a key = value file; '#' starts a comment. Throws
    /// std::runtime_error naming the offending line or key.
    static RunConfig from_file(const std::string& path);

    /// Apply key = value overrides on top of the current state.
    void apply(const std::map<std::string, std::string>& overrides);

    /// Full validation; throws std::runtime_error naming the field.
    void validate() const;

    ModelParams to_params() const;
    BasisSpec to_spec() const;
    std::map<std::string, std::string> echo() const;
    int worker_count() const;
};

struct EigenResultRow {
    int index = 0;
    double lambda_re = 0.0;
    double lambda_im = 0.0;
    double r = 0.0;
    double max_resid = 0.0;
};

/// One solved-and-verified case, ready for serialization.
struct ResultRecord {
    std::string label;
    std::map<std::string, std::string> config_echo;
    int n_basis = 0;
    int k_max = 0;
    std::vector<EigenResultRow> rows;
    double t_assemble_ms = 0.0;
    double t_solve_ms = 0.0;
    double t_verify_ms = 0.0;

    nlohmann::json to_json() const;
    static ResultRecord from_json(const nlohmann::json& j);
    bool operator==(const ResultRecord& other) const;
};

struct CaseResult {
    ResultRecord record;
    std::vector<RealEigenpair> pairs;
    ModelParams params;
    BasisSpec spec;
    KnotVector knots;
    QuadratureRule quad;
};

/// Assemble, solve, filter and verify a single configuration. Every reported
/// eigenvalue carries its verification block.
CaseResult run_case(const ModelParams& params, const BasisSpec& spec, int n_gl, int n_gc,
                    double tol_real, int n_eigen, int n_threads, const std::string& label);

struct RunOutcome {
    int exit_code = exit_ok;
    std::vector<ResultRecord> records;
    std::string message;
};

/// Execute the configured mode; writes results.csv / results.json (and
/// grid.tsv in verify mode) into out_dir when it is set.
RunOutcome run(const RunConfig& config);

/// Independent runs along one parameter axis on a bounded worker pool.
RunOutcome sweep(const RunConfig& config, const std::string& axis,
                 const std::vector<double>& values);

/// Reference eigenvalues used by the table modes.
struct TableFixture {
    std::string name;
    double epsilon2 = 0.0;
    int ell = 0;
    int n_p = 0;
    int n_theta = 0;
    std::vector<double> eigenvalues;
    double rel_tol = 0.0;       ///< tolerance for every listed eigenvalue
    double rel_tol_first = 0.0; ///< tighter tolerance for the lowest one
    double c_prime = 1.0;       ///< knot scale; smaller near zero binding
};

std::vector<TableFixture> table1_fixtures(int n_p = 20);
std::vector<TableFixture> table2_fixtures();

void write_results_csv(std::ostream& os, const std::vector<ResultRecord>& records);
void write_grid_tsv(std::ostream& os, const SolutionField& field, const QuadratureRule& quad);

} // namespace wcbse

#endif
