#ifndef WCBSE_SPECTRUM_HPP
#define WCBSE_SPECTRUM_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "wcbse/assembly.hpp"

namespace wcbse {

struct SolveOptions {
    double tol_resid = 1e-8;     ///< relative residual bound each pair must meet
    double pivot_rel = 1e-13;    ///< singular-B threshold relative to max |B|
};

/// One real eigenvalue retained by the reality filter, with its coefficient
/// vector normalized so the largest-magnitude component is +1.
struct RealEigenpair {
    double lambda = 0.0;
    double imag_part = 0.0;      ///< |Im| of the unfiltered eigenvalue
    Eigen::VectorXd vec;
};

/// Full spectrum of the pencil (A, B).
struct Spectrum {
    std::vector<std::complex<double>> eigenvalues;
    Eigen::MatrixXcd eigenvectors;          ///< column j pairs with eigenvalues[j]
    std::vector<int> real_subset;           ///< indices passing the reality filter
    double max_rel_residual = 0.0;
};

/// Solve A g = lambda B g by factoring B and running a dense nonsymmetric
/// eigensolve on B^-1 A. Throws on a singular B or eigensolver failure; every
/// returned pair satisfies the residual bound in opts.
Spectrum solve_generalized(const MatrixPair& pair, const SolveOptions& opts = {});

/// Keep eigenvalues with |Im| <= tol_real max(1, |Re|) and Re > 0, ascending
/// by real part. Vectors are re-normalized to largest component +1.
std::vector<RealEigenpair> filter_real(Spectrum& spectrum, double tol_real = 1e-6);

} // namespace wcbse

#endif
