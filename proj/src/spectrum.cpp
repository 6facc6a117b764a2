#include "wcbse/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wcbse {

Spectrum solve_generalized(const MatrixPair& pair, const SolveOptions& opts)
{
    const Eigen::MatrixXd& a = pair.a_mat;
    const Eigen::MatrixXd& b = pair.b_mat;
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("solve_generalized: matrix dimensions disagree");

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    double bmax = b.cwiseAbs().maxCoeff();
    double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (min_pivot < opts.pivot_rel * bmax)
        throw std::runtime_error("solve_generalized: B is numerically singular");

    Eigen::MatrixXd c = lu.solve(a);
    Eigen::EigenSolver<Eigen::MatrixXd> es(c, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("solve_generalized: dense eigensolver did not converge");

    Spectrum out;
    out.eigenvectors = es.eigenvectors();
    int n = static_cast<int>(a.rows());
    out.eigenvalues.resize(n);
    for (int j = 0; j < n; ++j)
        out.eigenvalues[j] = es.eigenvalues()[j];

    // residual check A v = lambda B v for every pair
    double na = a.norm();
    double nb = b.norm();
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXcd v = out.eigenvectors.col(j);
        std::complex<double> lam = out.eigenvalues[j];
        double resid = (a * v - lam * (b * v)).norm();
        double scale = (na + std::abs(lam) * nb) * v.norm();
        worst = std::max(worst, resid / scale);
    }
    out.max_rel_residual = worst;
    if (worst > opts.tol_resid)
        throw std::runtime_error("solve_generalized: eigenpair residual above tolerance");
    return out;
}

std::vector<RealEigenpair> filter_real(Spectrum& spectrum, double tol_real)
{
    std::vector<int> keep;
    for (int j = 0; j < static_cast<int>(spectrum.eigenvalues.size()); ++j) {
        std::complex<double> lam = spectrum.eigenvalues[j];
        if (std::abs(lam.imag()) <= tol_real * std::max(1.0, std::abs(lam.real())) &&
            lam.real() > 0.0)
            keep.push_back(j);
    }
    std::sort(keep.begin(), keep.end(), [&](int i, int j) {
        return spectrum.eigenvalues[i].real() < spectrum.eigenvalues[j].real();
    });
    spectrum.real_subset = keep;

    std::vector<RealEigenpair> out;
    out.reserve(keep.size());
    for (int j : keep) {
        RealEigenpair pair;
        pair.lambda = spectrum.eigenvalues[j].real();
        pair.imag_part = std::abs(spectrum.eigenvalues[j].imag());
        Eigen::VectorXcd v = spectrum.eigenvectors.col(j);
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        v /= v[imax]; // largest component becomes +1, fixing sign and phase
        pair.vec = v.real();
        out.push_back(std::move(pair));
    }
    return out;
}

} // namespace wcbse
