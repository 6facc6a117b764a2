#ifndef WCBSE_QUADRATURE_HPP
#define WCBSE_QUADRATURE_HPP

#include <utility>
#include <vector>

#include "wcbse/basis.hpp"

namespace wcbse {

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

/// Gauss-Chebyshev (second kind) nodes and weights for the weight
/// sqrt(1-z^2) on [-1, 1]: z_j = cos(j pi/(n+1)), w_j = pi/(n+1) sin^2.
void gauss_chebyshev2(int n, std::vector<double>& z, std::vector<double>& w);

/// Quadrature for matrix assembly: composite Gauss-Legendre of order n_gl on
/// each momentum knot interval, Gauss-Chebyshev of order n_gc in z.
struct QuadratureRule {
    int n_gl = 12;
    int n_gc = 0;
    std::vector<double> gl_x, gl_w;  ///< reference rule on [-1, 1]
    std::vector<double> z_nodes, z_weights;

    /// n_gc = 0 selects 2 (K_max + 4), enough to integrate the z-dependence
    /// of the kernel matrix exactly.
    static QuadratureRule make(const BasisSpec& spec, int n_gl = 12, int n_gc = 0);
};

/// Composite radial nodes/weights over [t_p(4), t_p(n_p+4)], one panel per
/// knot interval; the panel containing split_at (if positive) is subdivided
/// there so integrands with a kink at q = split_at stay piecewise smooth.
void radial_nodes(const KnotVector& knots, const QuadratureRule& quad,
                  double split_at, std::vector<double>& q, std::vector<double>& w);

} // namespace wcbse

#endif
