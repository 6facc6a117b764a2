#include "wcbse/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wcbse {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w)
{
    if (n < 1)
        throw std::domain_error("gauss_legendre: n must be >= 1");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15)
                break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

void gauss_chebyshev2(int n, std::vector<double>& z, std::vector<double>& w)
{
    if (n < 1)
        throw std::domain_error("gauss_chebyshev2: n must be >= 1");
    z.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int j = 1; j <= n; ++j) {
        double s = std::sin(j * M_PI / (n + 1.0));
        z[j - 1] = std::cos(j * M_PI / (n + 1.0));
        w[j - 1] = M_PI / (n + 1.0) * s * s;
    }
    // ascending in z
    std::reverse(z.begin(), z.end());
    std::reverse(w.begin(), w.end());
}

QuadratureRule QuadratureRule::make(const BasisSpec& spec, int n_gl, int n_gc)
{
    spec.validate();
    if (n_gl < 2)
        throw std::invalid_argument("QuadratureRule: n_gl must be >= 2");
    if (n_gc == 0)
        n_gc = 2 * (spec.k_max() + 4);
    if (n_gc < spec.k_max() + 3)
        throw std::invalid_argument("QuadratureRule: n_gc must be >= K_max + 3");
    QuadratureRule rule;
    rule.n_gl = n_gl;
    rule.n_gc = n_gc;
    gauss_legendre(n_gl, rule.gl_x, rule.gl_w);
    gauss_chebyshev2(n_gc, rule.z_nodes, rule.z_weights);
    return rule;
}

void radial_nodes(const KnotVector& knots, const QuadratureRule& quad,
                  double split_at, std::vector<double>& q, std::vector<double>& w)
{
    q.clear();
    w.clear();
    auto add_panel = [&](double lo, double hi) {
        if (!(hi > lo))
            return;
        double c = 0.5 * (lo + hi);
        double h = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < quad.gl_x.size(); ++i) {
            q.push_back(c + h * quad.gl_x[i]);
            w.push_back(h * quad.gl_w[i]);
        }
    };
    // physical momentum intervals start at T_p(4) = t_p[3]
    for (std::size_t j = 3; j + 1 < knots.t_p.size(); ++j) {
        double lo = knots.t_p[j];
        double hi = knots.t_p[j + 1];
        if (split_at > lo && split_at < hi) {
            add_panel(lo, split_at);
            add_panel(split_at, hi);
        } else {
            add_panel(lo, hi);
        }
    }
}

} // namespace wcbse
