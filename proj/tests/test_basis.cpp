#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wcbse/basis.hpp"

using namespace wcbse;

namespace {

BasisSpec spec_np(int n_p, int ell = 0, int n_theta = 1)
{
    BasisSpec spec;
    spec.n_p = n_p;
    spec.n_theta = n_theta;
    spec.ell = ell;
    return spec;
}

} // namespace

TEST_CASE("chebyshev points")
{
    CHECK_THROWS_AS(chebyshev_points(0), std::domain_error);

    auto x1 = chebyshev_points(1);
    REQUIRE(x1.size() == 1);
    CHECK(x1[0] == doctest::Approx(0.0));

    auto x2 = chebyshev_points(2);
    CHECK(x2[0] == doctest::Approx(-std::sqrt(2.0) / 2.0));
    CHECK(x2[1] == doctest::Approx(std::sqrt(2.0) / 2.0));

    auto x5 = chebyshev_points(5);
    CHECK(x5[0] == doctest::Approx(-0.9510565162951535).epsilon(1e-14));
    for (std::size_t i = 0; i + 1 < x5.size(); ++i) {
        CHECK(x5[i] < x5[i + 1]);
        CHECK(x5[i] == doctest::Approx(-x5[x5.size() - 1 - i]).epsilon(1e-14));
    }
}

TEST_CASE("momentum knots")
{
    auto t = momentum_knots(spec_np(5));
    REQUIRE(t.size() == 9);
    CHECK(t[3] == 0.0);
    // x = 0 is the middle Chebyshev point for odd n
    CHECK(t[6] == doctest::Approx(1.01));
    CHECK(t[8] == doctest::Approx(6.32375151467504).epsilon(1e-12));
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        CHECK(t[i] < t[i + 1]);
    // mirror symmetry T_p(4-j) = -T_p(4+j)
    for (int j = 1; j <= 3; ++j)
        CHECK(t[3 - j] == doctest::Approx(-t[3 + j]).epsilon(1e-14));
}

TEST_CASE("angular knots")
{
    auto t1 = angular_knots(spec_np(4, 0, 1));
    REQUIRE(t1.size() == 5);
    CHECK(t1[0] == -1.0);
    CHECK(t1[4] == 1.0);
    CHECK(t1[1] == doctest::Approx(-std::sqrt(3.0) / 2.0));
    CHECK(t1[2] == doctest::Approx(0.0));
    CHECK(t1[3] == doctest::Approx(std::sqrt(3.0) / 2.0));

    auto t2 = angular_knots(spec_np(4, 0, 2));
    REQUIRE(t2.size() == 6);
    for (int i = 1; i <= 4; ++i)
        CHECK(t2[i] == doctest::Approx(-std::cos((2.0 * i - 1.0) * M_PI / 8.0)));
}

TEST_CASE("cubic B-spline on uniform knots")
{
    KnotVector knots;
    knots.t_p = {0.0, 1.0, 2.0, 3.0, 4.0};
    CHECK(bspline(1, 2.0, knots) == doctest::Approx(2.0 / 3.0));
    CHECK(bspline(1, -0.5, knots) == 0.0);
    CHECK(bspline(1, 4.5, knots) == 0.0);
    CHECK_THROWS_AS(bspline(0, 1.0, knots), std::out_of_range);
    CHECK_THROWS_AS(bspline(2, 1.0, knots), std::out_of_range);
}

TEST_CASE("partition of unity on the physical interval")
{
    auto spec = spec_np(8);
    KnotVector knots = make_knots(spec);
    // interval T_p(4)..T_p(N_p+1), where all four covering splines exist
    double lo = knots.t_p[3];
    double hi = knots.t_p[spec.n_p];
    for (int i = 0; i <= 400; ++i) {
        double p = lo + (hi - lo) * i / 400.0 * 0.9999999;
        double sum = 0.0;
        for (int n = 1; n <= spec.n_p; ++n)
            sum += bspline(n, p, knots);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("spline is C2 at interior knots")
{
    // non-uniform O(1)-spaced knots keep the finite-difference error controlled
    KnotVector knots;
    knots.t_p = {0.0, 0.4, 1.0, 1.9, 3.1, 4.5, 6.0};
    double h = 1e-4;
    auto second = [&](int n, double x) {
        return (bspline(n, x + h, knots) - 2.0 * bspline(n, x, knots) +
                bspline(n, x - h, knots)) /
               (h * h);
    };
    for (int n = 1; n <= 3; ++n)
        for (std::size_t j = 1; j + 1 < knots.t_p.size(); ++j) {
            double t = knots.t_p[j];
            double left = second(n, t - 2 * h);
            double right = second(n, t + 2 * h);
            // second derivatives are O(1) here; the jump of a C1-only spline
            // would be O(1) as well, far above the O(h) slope term
            CHECK(left == doctest::Approx(right).epsilon(1e-2).scale(1.0));
        }
}

TEST_CASE("convergence function")
{
    CHECK(convergence_function(0, 1.0, 0.0) == doctest::Approx(1.0));
    CHECK(convergence_function(1, 3.7, 0.0) == 0.0);
    for (int ell = 0; ell <= 2; ++ell)
        for (double p : {1e3, 1e4}) {
            double val = convergence_function(ell, 1.0, p) * std::pow(p, ell + 5);
            CHECK(val == doctest::Approx(1.0).epsilon(1e-10));
        }
}

TEST_CASE("radial basis function")
{
    auto spec = spec_np(6);
    spec.a = 2.5;
    KnotVector knots = make_knots(spec);
    CHECK(radial_basis(1, knots.t_p.back() + 1.0, spec, knots) == 0.0);
    // ell = 0: G_n(0) = B_n(0)/a
    for (int n = 1; n <= 3; ++n)
        CHECK(radial_basis(n, 0.0, spec, knots) ==
              doctest::Approx(bspline(n, 0.0, knots) / spec.a));
    for (double p : {0.5, 1.0, 2.0})
        CHECK(radial_basis(2, p, spec, knots) ==
              doctest::Approx(convergence_function(0, spec.a, p) * bspline(2, p, knots)));
}

TEST_CASE("gegenbauer polynomials")
{
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uz(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        double z = uz(rng);
        CHECK(gegenbauer(0, 1, z) == 1.0);
        CHECK(gegenbauer(1, 1, z) == doctest::Approx(2.0 * z));
        CHECK(gegenbauer(2, 1, z) == doctest::Approx(4.0 * z * z - 1.0));
        for (int k = 0; k <= 6; ++k) {
            double parity = k % 2 == 0 ? 1.0 : -1.0;
            CHECK(gegenbauer(k, 1, -z) == doctest::Approx(parity * gegenbauer(k, 1, z)));
        }
    }
    CHECK(gegenbauer(3, 2, 0.5) == doctest::Approx(-2.0));
    CHECK_THROWS_AS(gegenbauer(-1, 1, 0.0), std::domain_error);
    CHECK_THROWS_AS(gegenbauer(0, 0, 0.0), std::domain_error);
}

TEST_CASE("spherical functions")
{
    CHECK(spherical_fn(0, 0, 0.3) == doctest::Approx(1.0));
    CHECK_THROWS_AS(spherical_fn(0, 1, 0.0), std::domain_error);

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> uz(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        double z = uz(rng);
        for (int ell = 0; ell <= 2; ++ell)
            for (int k = ell; k <= ell + 5; ++k) {
                double parity = (k - ell) % 2 == 0 ? 1.0 : -1.0;
                CHECK(spherical_fn(k, ell, -z) ==
                      doctest::Approx(parity * spherical_fn(k, ell, z)).epsilon(1e-12));
            }
    }
}

TEST_CASE("spherical function orthogonality")
{
    for (int ell = 0; ell <= 2; ++ell) {
        int n_theta = 6;
        int imax = ell + n_theta - 1;
        for (int i = ell; i <= imax; ++i)
            for (int ip = ell; ip <= imax; ++ip) {
                // substitute z = cos(t) so the weight becomes the smooth
                // sin^2(t); irregular breakpoints avoid sampling the
                // oscillatory integrand only at its zeros, and the tolerance
                // scales with the diagonal norm
                double integral = oracles::integrate_piecewise(
                    [&](double t) {
                        double z = std::cos(t);
                        double s = std::sin(t);
                        return s * s * spherical_fn(i, ell, z) * spherical_fn(ip, ell, z);
                    },
                    {0.0, 0.377, 1.222, 2.474, M_PI},
                    1e-10 * spherical_fn_norm(i, ell));
                if (i == ip)
                    CHECK(integral ==
                          doctest::Approx(spherical_fn_norm(i, ell)).epsilon(1e-8));
                else
                    CHECK(std::abs(integral) < 1e-8 * spherical_fn_norm(i, ell));
            }
    }
}

TEST_CASE("asymptotic exponent classification")
{
    // default basis: n = 3, g0 = ell, g_inf = ell + 6, k = ell
    for (int ell = 0; ell <= 2; ++ell) {
        auto be = asymptotic_exponents(3.0, ell, ell + 6.0, ell);
        CHECK(be.branch_small == BoundaryExponents::SmallP::IA);
        CHECK(be.i0 == doctest::Approx(static_cast<double>(ell)));
        CHECK(be.branch_large == BoundaryExponents::LargeP::IIA);
        CHECK(be.i_inf == doctest::Approx(ell + 2.0));
    }

    // IB: g0 strictly inside (-n-k-1, -n+k+1)
    auto ib = asymptotic_exponents(3.0, -5.5, 20.0, 2);
    CHECK(ib.branch_small == BoundaryExponents::SmallP::IB);
    CHECK(ib.i0 == doctest::Approx(-5.5 + 2.0));

    // IIB: n-k-1 < g_inf <= n+k+1
    auto iib = asymptotic_exponents(3.0, 1.0, 4.0, 1);
    CHECK(iib.branch_large == BoundaryExponents::LargeP::IIB);
    CHECK(iib.i_inf == doctest::Approx(4.0 - 3.0 + 1.0));

    CHECK_THROWS_AS(asymptotic_exponents(3.0, -10.0, 20.0, 2), std::domain_error);
    CHECK_THROWS_AS(asymptotic_exponents(3.0, 1.0, -5.0, 1), std::domain_error);
}
