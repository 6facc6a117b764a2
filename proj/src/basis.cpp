#include "wcbse/basis.hpp"

#include <algorithm>
#include <cmath>

namespace wcbse {

void BasisSpec::validate() const
{
    if (n_p < 4)
        throw std::invalid_argument("BasisSpec: n_p must be >= 4");
    if (n_theta < 1)
        throw std::invalid_argument("BasisSpec: n_theta must be >= 1");
    if (!(c_prime > 0.0))
        throw std::invalid_argument("BasisSpec: c_prime must be positive");
    if (!(a > 0.0))
        throw std::invalid_argument("BasisSpec: a must be positive");
    if (script_n != 1 && script_n != 3)
        throw std::invalid_argument("BasisSpec: script_n must be 1 or 3");
    if (ell < 0)
        throw std::invalid_argument("BasisSpec: ell must be non-negative");
}

std::vector<double> chebyshev_points(int n)
{
    if (n < 1)
        throw std::domain_error("chebyshev_points: n must be >= 1");
    std::vector<double> x(n);
    for (int i = 1; i <= n; ++i)
        x[i - 1] = -std::cos((2.0 * i - 1.0) * M_PI / (2.0 * n));
    return x;
}

std::vector<double> momentum_knots(const BasisSpec& spec)
{
    spec.validate();
    int np = spec.n_p;
    std::vector<double> t(np + 4);
    auto x = chebyshev_points(np);
    for (int i = 1; i <= np; ++i) {
        double v = spec.c_prime * std::sqrt((1.0 + x[i - 1]) / (1.0 - x[i - 1])) + spec.c_dprime;
        if (!std::isfinite(v))
            throw std::runtime_error("momentum_knots: non-finite knot from Chebyshev map");
        t[i + 3] = v; // T_p(i+4)
    }
    t[3] = 0.0;
    // knots on the "negative" axis mirror the first three positive knots
    t[2] = -t[4];
    t[1] = -t[5];
    t[0] = -t[6];
    return t;
}

std::vector<double> angular_knots(const BasisSpec& spec)
{
    spec.validate();
    int nt = spec.n_theta;
    std::vector<double> t(nt + 4);
    t.front() = -1.0;
    t.back() = 1.0;
    for (int i = 1; i <= nt + 2; ++i)
        t[i] = -std::cos((2.0 * i - 1.0) * M_PI / (2.0 * (nt + 2)));
    return t;
}

KnotVector make_knots(const BasisSpec& spec)
{
    return KnotVector{momentum_knots(spec), angular_knots(spec)};
}

namespace {

// Cox-de Boor recursion for one normalized B-spline of order 4 over the
// five-knot window t[i..i+4] (0-based offsets into the full knot vector).
double bspline_window(const double* t, double x)
{
    if (x < t[0] || x >= t[4])
        return 0.0;
    double N[4];
    for (int j = 0; j < 4; ++j)
        N[j] = (x >= t[j] && x < t[j + 1]) ? 1.0 : 0.0;
    for (int m = 2; m <= 4; ++m) {
        for (int j = 0; j <= 4 - m; ++j) {
            double left = 0.0, right = 0.0;
            double dl = t[j + m - 1] - t[j];
            double dr = t[j + m] - t[j + 1];
            if (dl > 0.0)
                left = (x - t[j]) / dl * N[j];
            if (dr > 0.0)
                right = (t[j + m] - x) / dr * N[j + 1];
            N[j] = left + right;
        }
    }
    return N[0];
}

} // namespace

double bspline(int n, double p, const KnotVector& knots)
{
    int np = static_cast<int>(knots.t_p.size()) - 4;
    if (n < 1 || n > np)
        throw std::out_of_range("bspline: spline index out of range");
    return bspline_window(knots.t_p.data() + (n - 1), p);
}

double convergence_function(int ell, double a, double p)
{
    return std::pow(p, ell) / (a + std::pow(p, 2 * ell + 5));
}

double radial_basis(int n, double p, const BasisSpec& spec, const KnotVector& knots)
{
    double b = bspline(n, p, knots);
    if (b == 0.0)
        return 0.0;
    return convergence_function(spec.ell, spec.a, p) * b;
}

double gegenbauer(int k, int alpha, double z)
{
    if (k < 0)
        throw std::domain_error("gegenbauer: k must be >= 0");
    if (alpha < 1)
        throw std::domain_error("gegenbauer: alpha must be >= 1");
    double c0 = 1.0;
    if (k == 0)
        return c0;
    double c1 = 2.0 * alpha * z;
    for (int m = 2; m <= k; ++m) {
        double c2 = (2.0 * (m + alpha - 1) * z * c1 - (m + 2.0 * alpha - 2) * c0) / m;
        c0 = c1;
        c1 = c2;
    }
    return c1;
}

double spherical_fn(int k, int ell, double z)
{
    if (k < ell)
        throw std::domain_error("spherical_fn: requires k >= ell");
    // d^ell/dz^ell C^1_k = 2^ell ell! C^(ell+1)_(k-ell)
    double fac = 1.0;
    for (int j = 1; j <= ell; ++j)
        fac *= 2.0 * j;
    double pre = std::pow(1.0 - z * z, 0.5 * ell);
    return pre * fac * gegenbauer(k - ell, ell + 1, z);
}

double spherical_fn_norm(int i, int ell)
{
    // pi Gamma(i+ell+2) / ((2i+2) Gamma(i-ell+1))
    double prod = 1.0;
    for (int j = i - ell + 1; j <= i + ell + 1; ++j)
        prod *= j;
    return M_PI * prod / (2.0 * i + 2.0);
}

BoundaryExponents asymptotic_exponents(double n, double g0, double g_inf, int k)
{
    BoundaryExponents out;
    out.g0 = g0;
    out.g_inf = g_inf;

    bool lower_ok = g0 > -n - k - 1;
    bool upper_ok = g_inf > n - k - 1;

    if (-n + k + 1 <= g0 && upper_ok) {
        out.i0 = k;
        out.branch_small = BoundaryExponents::SmallP::IA;
    } else if (lower_ok && g0 < -n + k + 1 && upper_ok) {
        out.i0 = g0 + n - 1;
        out.branch_small = BoundaryExponents::SmallP::IB;
    } else {
        throw std::domain_error("asymptotic_exponents: (g0, g_inf) outside validity region at small p");
    }

    if (lower_ok && g_inf >= n + k + 1) {
        out.i_inf = k + 2;
        out.branch_large = BoundaryExponents::LargeP::IIA;
    } else if (lower_ok && upper_ok && g_inf <= n + k + 1) {
        out.i_inf = g_inf - n + 1;
        out.branch_large = BoundaryExponents::LargeP::IIB;
    } else {
        throw std::domain_error("asymptotic_exponents: (g0, g_inf) outside validity region at large p");
    }
    return out;
}

} // namespace wcbse
