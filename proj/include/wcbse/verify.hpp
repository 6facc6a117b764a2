#ifndef WCBSE_VERIFY_HPP
#define WCBSE_VERIFY_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "wcbse/assembly.hpp"
#include "wcbse/spectrum.hpp"

namespace wcbse {

/// A candidate solution: expansion coefficients g_{n,k} (flattened by the
/// matrix index map) together with everything needed to evaluate it.
struct SolutionField {
    Eigen::VectorXd coeffs;
    ModelParams params;
    BasisSpec spec;
    KnotVector knots;
    double lambda = 0.0; ///< coupling eigenvalue lambda/m^2

    void validate() const;
};

/// Even/odd-in-z views of psi.
struct ParityDecomposition {
    const SolutionField* field;
    double chi_r(double p, double z) const;
    double chi_i(double p, double z) const;
};

/// lhs/rhs comparison of the partially separated equation on the
/// knot-rectangle centers.
struct VerificationReport {
    std::vector<double> p, z;    ///< grid points, flattened row-major (p outer)
    std::vector<double> lhs, rhs;
    double r_lhs_rhs = 0.0;
    double max_rel_resid = 0.0;
};

/// psi(p, z) = sum g_{n,k} G_n(p) P^(2)_{k,ell}(z).
double evaluate_psi(const SolutionField& field, double p, double z);

ParityDecomposition decompose_parity(const SolutionField& field);

/// Concordance-style reliability: 2 cov(L,R) / (var L + var R + (mean
/// difference)^2). Equals 1 iff the samples agree pointwise.
double reliability_coefficient(const std::vector<double>& lhs, const std::vector<double>& rhs);

/// Plain Pearson correlation, available for sensitivity comparisons.
double pearson_coefficient(const std::vector<double>& lhs, const std::vector<double>& rhs);

/// Evaluate both sides of the equation at the center of each knot rectangle
/// and summarize the agreement.
VerificationReport residual_grid(const SolutionField& field, const QuadratureRule& quad);

/// One rung of a convergence ladder.
struct ConvergenceRow {
    int n_p = 0;
    int n_theta = 0;
    std::vector<double> eigenvalues; ///< lowest real eigenvalues, ascending
    double r_lowest = 0.0;           ///< reliability of the lowest eigenstate
    bool ok = false;
    std::string error;
};

/// Solve and verify at each (n_p, n_theta) of the ladder; failures are
/// recorded per rung and the ladder continues.
std::vector<ConvergenceRow> convergence_study(const ModelParams& params,
                                              const BasisSpec& base,
                                              const std::vector<std::pair<int, int>>& ladder,
                                              int n_eigen, int n_gl, int n_gc,
                                              double tol_real, int n_threads = 1);

/// One record per grid point: p z lhs rhs.
void write_report(std::ostream& os, const VerificationReport& report);

} // namespace wcbse

#endif
