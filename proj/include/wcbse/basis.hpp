#ifndef WCBSE_BASIS_HPP
#define WCBSE_BASIS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace wcbse {

/// Discretization definition: number of radial splines and angular functions,
/// knot-map constants, convergence-function constant and weighting exponent.
struct BasisSpec {
    int n_p = 20;          ///< number of radial cubic splines
    int n_theta = 1;       ///< number of spherical functions, K_max = ell + n_theta - 1
    double c_prime = 1.0;  ///< knot-map scale C'
    double c_dprime = 0.01;///< knot-map offset C''
    double a = 1.0;        ///< convergence-function constant
    int script_n = 1;      ///< weighting exponent, 1 or 3
    int ell = 0;           ///< orbital angular momentum, mirrored from ModelParams

    int k_max() const { return ell + n_theta - 1; }
    int size() const { return n_p * n_theta; }

    void validate() const;
};

/// Ordered momentum and angular knots. Stored 0-based: t_p[i-1] is the
/// 1-based knot T_p(i), i = 1..n_p+4; likewise t_z.
struct KnotVector {
    std::vector<double> t_p;
    std::vector<double> t_z;
};

/// Small- and large-momentum behavior of the kernel integral
/// I(p) = int dq q^n G(q) Lambda_k(p,q), with the branch that produced it.
struct BoundaryExponents {
    double g0 = 0.0;
    double g_inf = 0.0;
    double i0 = 0.0;
    double i_inf = 0.0;
    enum class SmallP { IA, IB } branch_small = SmallP::IA;
    enum class LargeP { IIA, IIB } branch_large = LargeP::IIA;
};

/// Chebyshev points x(i) = -cos((2i-1)pi/(2n)), i = 1..n.
std::vector<double> chebyshev_points(int n);

/// Momentum knots: T_p(i+4) = C' sqrt((1+x)/(1-x)) + C'' over the Chebyshev
/// points, T_p(4) = 0, and T_p(1..3) mirror T_p(7),T_p(6),T_p(5) about 0.
std::vector<double> momentum_knots(const BasisSpec& spec);

/// Angular knots: endpoints -1, +1 with N_theta+2 Chebyshev points between.
std::vector<double> angular_knots(const BasisSpec& spec);

/// Both knot families for a spec.
KnotVector make_knots(const BasisSpec& spec);

/// Normalized cubic B-spline B_n supported on [T_p(n), T_p(n+4)], n = 1..n_p.
double bspline(int n, double p, const KnotVector& knots);

/// Convergence function G_ell(p) = p^ell / (a + p^(2 ell + 5)).
double convergence_function(int ell, double a, double p);

/// Radial basis function G_n(p) = G_ell(p) B_n(p).
double radial_basis(int n, double p, const BasisSpec& spec, const KnotVector& knots);

/// Gegenbauer polynomial C^alpha_k(z) by the three-term recurrence.
double gegenbauer(int k, int alpha, double z);

/// Spherical function P^(2)_{k,ell}(z) = (1-z^2)^(ell/2) d^ell/dz^ell C^1_k(z),
/// with the derivative taken via C^(ell+1)_(k-ell). Requires k >= ell.
double spherical_fn(int k, int ell, double z);

/// Norm of P^(2)_{i,ell} under the weight sqrt(1-z^2):
/// pi (i+ell+1)! / ((2i+2) (i-ell)!).
double spherical_fn_norm(int i, int ell);

/// Classify the asymptotics of I(p) = int dq q^n G(q) Lambda_k(p,q) given the
/// boundary powers g0, g_inf of G. Throws std::domain_error outside the
/// validity region of every branch.
BoundaryExponents asymptotic_exponents(double n, double g0, double g_inf, int k);

} // namespace wcbse

#endif
