#ifndef WCBSE_MODEL_HPP
#define WCBSE_MODEL_HPP

#include <stdexcept>

namespace wcbse {

/// Physical configuration of the two-body problem. All momenta are in units
/// of the mass scale m; couplings are reported as lambda/m^2.
struct ModelParams {
    double delta = 0.0;   ///< mass asymmetry: m1 = m(1+delta), m2 = m(1-delta)
    double epsilon = 0.0; ///< normalized energy E/(m1+m2)
    double xi = 0.5;      ///< center-of-mass momentum partition, 0 < xi < 1
    int ell = 0;          ///< orbital angular momentum

    ModelParams() = default;
    ModelParams(double delta_, double epsilon_, double xi_, int ell_);

    /// Conventional center-of-mass weighting xi = m1/(m1+m2).
    static double default_xi(double delta) { return 0.5 * (1.0 + delta); }

    double m1() const { return 1.0 + delta; }
    double m2() const { return 1.0 - delta; }

    void validate() const;
};

/// Real part D_R of the Wick-rotated propagator product, as a function of the
/// Euclidean energy component p0 and the squared three-momentum ps2.
double d_real(double p0, double ps2, const ModelParams& params);

/// Imaginary part D_I; vanishes at epsilon = 0 and at (delta = 0, xi = 1/2).
double d_imag(double p0, double ps2, const ModelParams& params);

/// min(p,q)/max(p,q). Requires p, q > 0.
double ratio(double p, double q);

/// Hecke-reduced exchange kernel Lambda^(2)_k(p,q) =
/// 2 pi^2 / (p q (k+1)) * ratio(p,q)^(k+1). Symmetric in (p,q).
double lambda_kernel(int k, double p, double q);

} // namespace wcbse

#endif
