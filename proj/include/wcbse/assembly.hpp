#ifndef WCBSE_ASSEMBLY_HPP
#define WCBSE_ASSEMBLY_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

#include "wcbse/basis.hpp"
#include "wcbse/model.hpp"
#include "wcbse/quadrature.hpp"

namespace wcbse {

/// Dense matrices of the generalized eigenproblem A g = (lambda/m^2) B g,
/// with the flattened index i = n_p (I_theta - 1) + I_p.
struct MatrixPair {
    Eigen::MatrixXd a_mat;
    Eigen::MatrixXd b_mat;
    BasisSpec spec;
    ModelParams params;

    /// 0-based row/column from 1-based (I_theta, I_p).
    static int index(const BasisSpec& spec, int i_theta, int i_p)
    {
        return spec.n_p * (i_theta - 1) + (i_p - 1);
    }
};

/// Kernel-side matrix A: double quadrature of the propagator weight against
/// the radial and angular basis products.
Eigen::MatrixXd assemble_a(const ModelParams& params, const BasisSpec& spec,
                           const KnotVector& knots, const QuadratureRule& quad,
                           int n_threads = 1);

/// Interaction-side matrix B, block diagonal in I_theta; the z-integration is
/// analytic, the (p, q) double integral is split at q = p.
Eigen::MatrixXd assemble_b(const ModelParams& params, const BasisSpec& spec,
                           const KnotVector& knots, const QuadratureRule& quad,
                           int n_threads = 1);

MatrixPair assemble(const ModelParams& params, const BasisSpec& spec,
                    const KnotVector& knots, const QuadratureRule& quad,
                    int n_threads = 1);

/// int_0^inf dq q^3 G_n(q) Lambda^(2)_k(p, q), split at q = p and truncated
/// at the last momentum knot. Requires p > 0.
double radial_inner_integral(int n, int k, double p, const BasisSpec& spec,
                             const KnotVector& knots, const QuadratureRule& quad);

/// Debug dump: header (n_p n_theta delta epsilon xi ell script_n) then both
/// matrices row-major, one row per line.
void write_matrix_pair(std::ostream& os, const MatrixPair& pair);

} // namespace wcbse

#endif
