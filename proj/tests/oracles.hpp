// Independent numerical oracles for the test suites: adaptive Simpson
// quadrature, kept deliberately separate from the library's Gauss rules.
#ifndef WCBSE_TESTS_ORACLES_HPP
#define WCBSE_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double fa, double fm, double fb)
{
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb, double whole, double tol,
                            int depth)
{
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = simpson(f, a, m, fa, flm, fm);
    double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int depth = 40)
{
    double fa = f(a);
    double fb = f(b);
    double fm = f(0.5 * (a + b));
    return adaptive_step(f, a, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb), tol, depth);
}

/// Adaptive Simpson with interior breakpoints (knots, kinks).
inline double integrate_piecewise(const std::function<double(double)>& f,
                                  const std::vector<double>& breaks, double tol = 1e-12)
{
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        if (breaks[i + 1] > breaks[i])
            total += integrate(f, breaks[i], breaks[i + 1], tol);
    return total;
}

} // namespace oracles

#endif
