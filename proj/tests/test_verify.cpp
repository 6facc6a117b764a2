#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wcbse/runner.hpp"
#include "wcbse/verify.hpp"

using namespace wcbse;

namespace {

SolutionField solved_field(double delta, double epsilon2, int ell, int n_p, int n_theta,
                           int eigen_index = 0, int script_n = 1)
{
    ModelParams params;
    params.delta = delta;
    params.epsilon = std::sqrt(epsilon2);
    params.xi = ModelParams::default_xi(delta);
    params.ell = ell;
    BasisSpec spec;
    spec.n_p = n_p;
    spec.n_theta = n_theta;
    spec.ell = ell;
    spec.script_n = script_n;
    KnotVector knots = make_knots(spec);
    auto quad = QuadratureRule::make(spec);
    auto pair = assemble(params, spec, knots, quad);
    Spectrum spectrum = solve_generalized(pair);
    auto pairs = filter_real(spectrum, 1e-6);
    REQUIRE(static_cast<int>(pairs.size()) > eigen_index);
    return SolutionField{pairs[eigen_index].vec, params, spec, knots,
                         pairs[eigen_index].lambda};
}

double loglog_slope(const SolutionField& field, double p_lo, double p_hi, double z)
{
    double f_lo = std::abs(evaluate_psi(field, p_lo, z));
    double f_hi = std::abs(evaluate_psi(field, p_hi, z));
    return (std::log(f_hi) - std::log(f_lo)) / (std::log(p_hi) - std::log(p_lo));
}

} // namespace

TEST_CASE("evaluate_psi basics")
{
    BasisSpec spec;
    spec.n_p = 5;
    spec.n_theta = 2;
    KnotVector knots = make_knots(spec);
    ModelParams params;

    SolutionField zero{Eigen::VectorXd::Zero(spec.size()), params, spec, knots, 1.0};
    for (double p : {0.1, 1.0, 3.0})
        for (double z : {-0.9, 0.0, 0.4})
            CHECK(evaluate_psi(zero, p, z) == 0.0);

    Eigen::VectorXd one = Eigen::VectorXd::Zero(spec.size());
    one[MatrixPair::index(spec, 1, 1)] = 1.0;
    SolutionField single{one, params, spec, knots, 1.0};
    for (double p : {0.05, 0.4, 1.5})
        for (double z : {-0.5, 0.2, 0.9})
            CHECK(evaluate_psi(single, p, z) ==
                  doctest::Approx(radial_basis(1, p, spec, knots) *
                                  spherical_fn(0, 0, z)));
}

TEST_CASE("parity decomposition")
{
    BasisSpec spec;
    spec.n_p = 5;
    spec.n_theta = 3;
    KnotVector knots = make_knots(spec);
    ModelParams params;

    std::mt19937 rng(3);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd coeffs(spec.size());
    for (int i = 0; i < coeffs.size(); ++i)
        coeffs[i] = gauss(rng);
    SolutionField field{coeffs, params, spec, knots, 1.0};
    auto parity = decompose_parity(field);

    std::uniform_real_distribution<double> uz(-1.0, 1.0);
    std::uniform_real_distribution<double> up(0.01, 4.0);
    for (int i = 0; i < 100; ++i) {
        double p = up(rng);
        double z = uz(rng);
        double psi = evaluate_psi(field, p, z);
        CHECK(parity.chi_r(p, z) + parity.chi_i(p, z) == doctest::Approx(psi).epsilon(1e-12));
        CHECK(parity.chi_r(p, -z) == doctest::Approx(parity.chi_r(p, z)).epsilon(1e-12));
        CHECK(parity.chi_i(p, -z) == doctest::Approx(-parity.chi_i(p, z)).epsilon(1e-12));
    }
}

TEST_CASE("reliability coefficient")
{
    std::vector<double> l = {1.0, 2.0, 5.0, -3.0};
    CHECK(reliability_coefficient(l, l) == doctest::Approx(1.0));

    std::vector<double> neg = {1.0, -2.0, 3.0, -2.0};
    std::vector<double> flipped;
    for (double v : neg)
        flipped.push_back(-v);
    CHECK(reliability_coefficient(neg, flipped) == doctest::Approx(-1.0));

    // constant offset: r = 2 var / (2 var + c^2)
    double c = 0.7;
    std::vector<double> shifted;
    for (double v : l)
        shifted.push_back(v + c);
    double mean = (1.0 + 2.0 + 5.0 - 3.0) / 4.0;
    double var = 0.0;
    for (double v : l)
        var += (v - mean) * (v - mean);
    var /= 4.0;
    CHECK(reliability_coefficient(l, shifted) ==
          doctest::Approx(2.0 * var / (2.0 * var + c * c)).epsilon(1e-12));

    std::vector<double> flat = {2.0, 2.0, 2.0};
    CHECK_THROWS_AS(reliability_coefficient(flat, flat), std::invalid_argument);
    CHECK_THROWS_AS(reliability_coefficient(l, flat), std::invalid_argument);
}

TEST_CASE("residual grid for an eigen-solution")
{
    SolutionField field = solved_field(0.6, 0.0, 0, 20, 1);
    auto quad = QuadratureRule::make(field.spec);
    auto report = residual_grid(field, quad);

    CHECK(report.p.size() == static_cast<std::size_t>(field.spec.n_p) *
                                 (field.spec.n_theta + 3));
    CHECK(report.r_lhs_rhs <= 1.0);
    CHECK(report.r_lhs_rhs >= 0.999999);

    // a random coefficient vector is markedly worse
    std::mt19937 rng(8);
    std::normal_distribution<double> gauss;
    SolutionField junk = field;
    for (int i = 0; i < junk.coeffs.size(); ++i)
        junk.coeffs[i] = gauss(rng);
    auto junk_report = residual_grid(junk, quad);
    CHECK(junk_report.r_lhs_rhs < report.r_lhs_rhs - 0.01);
}

TEST_CASE("zero-energy solutions live in a single angular block")
{
    SolutionField field = solved_field(0.6, 0.0, 0, 12, 2);
    const BasisSpec& spec = field.spec;
    double dominant = 0.0, other = 0.0;
    for (int it = 1; it <= spec.n_theta; ++it) {
        double block = 0.0;
        for (int n = 1; n <= spec.n_p; ++n)
            block = std::max(block, std::abs(field.coeffs[MatrixPair::index(spec, it, n)]));
        if (block > dominant) {
            other = dominant;
            dominant = block;
        } else {
            other = std::max(other, block);
        }
    }
    CHECK(other < 1e-6 * dominant);

    // the even-k ground state has no odd part
    auto parity = decompose_parity(field);
    for (double p : {0.2, 0.8, 2.0})
        for (double z : {-0.7, 0.1, 0.6})
            CHECK(std::abs(parity.chi_i(p, z)) < 1e-8 * std::abs(parity.chi_r(p, z)) + 1e-12);
}

TEST_CASE("boundary behavior of converged solutions")
{
    for (int ell : {0, 1}) {
        SolutionField field = solved_field(0.6, 0.0, ell, 20, 1);
        const auto& t = field.knots.t_p;
        double z = 0.37;

        // small p: psi ~ p^ell over the first two knot intervals
        double slope0 = loglog_slope(field, 0.25 * t[4], t[5], z);
        CHECK(slope0 > ell - 0.2);
        CHECK(slope0 < ell + 0.2);

        // large p: decay at least as fast as 1/p^(ell+5)
        std::size_t m = t.size();
        double slope_inf = loglog_slope(field, t[m - 3], 0.5 * (t[m - 2] + t[m - 1]), z);
        CHECK(slope_inf <= -(ell + 5.0) + 0.5);
    }
}

TEST_CASE("convergence study ladder")
{
    ModelParams params;
    params.delta = 0.6;
    params.epsilon = 0.0;
    params.xi = 0.8;
    BasisSpec base;
    base.ell = 0;
    auto rows = convergence_study(params, base, {{5, 1}, {10, 1}, {20, 1}}, 3, 12, 0, 1e-6);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        CHECK(row.ok);
        REQUIRE(!row.eigenvalues.empty());
    }
    // eigenvalue drift shrinks and r improves along the ladder
    CHECK(std::abs(rows[2].eigenvalues[0] - rows[1].eigenvalues[0]) /
              rows[2].eigenvalues[0] <
          0.002 + std::abs(rows[1].eigenvalues[0] - rows[0].eigenvalues[0]) /
                      rows[2].eigenvalues[0]);
    CHECK(rows[0].r_lowest < rows[1].r_lowest);
    CHECK(rows[1].r_lowest < rows[2].r_lowest);
    CHECK(std::abs(rows[2].eigenvalues[0] - rows[1].eigenvalues[0]) /
              rows[2].eigenvalues[0] <
          0.002);

    // a failing rung is recorded without stopping the ladder
    auto bad = convergence_study(params, base, {{2, 1}, {10, 1}}, 3, 12, 0, 1e-6);
    REQUIRE(bad.size() == 2);
    CHECK(!bad[0].ok);
    CHECK(!bad[0].error.empty());
    CHECK(bad[1].ok);
}
