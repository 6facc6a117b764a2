#include "wcbse/model.hpp"

#include <cmath>
#include <string>

namespace wcbse {

ModelParams::ModelParams(double delta_, double epsilon_, double xi_, int ell_)
    : delta(delta_), epsilon(epsilon_), xi(xi_), ell(ell_)
{
    validate();
}

void ModelParams::validate() const
{
    if (!(delta >= 0.0 && delta < 1.0))
        throw std::invalid_argument("ModelParams: delta must satisfy 0 <= delta < 1");
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::invalid_argument("ModelParams: epsilon must satisfy 0 <= epsilon < 1");
    if (!(xi > 0.0 && xi < 1.0))
        throw std::invalid_argument("ModelParams: xi must satisfy 0 < xi < 1");
    if (ell < 0)
        throw std::invalid_argument("ModelParams: ell must be a non-negative integer");
}

double d_real(double p0, double ps2, const ModelParams& params)
{
    double e2 = params.epsilon * params.epsilon;
    double xi = params.xi;
    double dp = 1.0 + params.delta;
    double dm = 1.0 - params.delta;
    double p2 = p0 * p0 + ps2;
    double f1 = p2 - 4.0 * xi * xi * e2 + dp * dp;
    double f2 = p2 - 4.0 * (1.0 - xi) * (1.0 - xi) * e2 + dm * dm;
    return f1 * f2 + 16.0 * xi * (1.0 - xi) * e2 * p0 * p0;
}

double d_imag(double p0, double ps2, const ModelParams& params)
{
    double e2 = params.epsilon * params.epsilon;
    double xi = params.xi;
    double dp = 1.0 + params.delta;
    double dm = 1.0 - params.delta;
    double p2 = p0 * p0 + ps2;
    double f1 = p2 - 4.0 * xi * xi * e2 + dp * dp;
    double f2 = p2 - 4.0 * (1.0 - xi) * (1.0 - xi) * e2 + dm * dm;
    return 4.0 * params.epsilon * p0 * (-xi * f2 + (1.0 - xi) * f1);
}

double ratio(double p, double q)
{
    if (!(p > 0.0) || !(q > 0.0))
        throw std::domain_error("ratio: arguments must be positive");
    return p < q ? p / q : q / p;
}

double lambda_kernel(int k, double p, double q)
{
    if (k < 0)
        throw std::domain_error("lambda_kernel: k must be >= 0");
    double r = ratio(p, q);
    constexpr double two_pi2 = 2.0 * M_PI * M_PI;
    return two_pi2 / (p * q * (k + 1)) * std::pow(r, k + 1);
}

} // namespace wcbse
