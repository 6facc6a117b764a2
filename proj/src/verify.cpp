#include "wcbse/verify.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace wcbse {

void SolutionField::validate() const
{
    params.validate();
    spec.validate();
    if (coeffs.size() != spec.size())
        throw std::invalid_argument("SolutionField: coefficient vector length != n_p * n_theta");
    if (!coeffs.allFinite())
        throw std::invalid_argument("SolutionField: non-finite coefficients");
}

double evaluate_psi(const SolutionField& field, double p, double z)
{
    const BasisSpec& spec = field.spec;
    int ell = spec.ell;
    double acc = 0.0;
    for (int it = 1; it <= spec.n_theta; ++it) {
        int k = ell + it - 1;
        double pk = spherical_fn(k, ell, z);
        if (pk == 0.0)
            continue;
        double radial = 0.0;
        for (int n = 1; n <= spec.n_p; ++n) {
            double g = field.coeffs[MatrixPair::index(spec, it, n)];
            if (g != 0.0)
                radial += g * radial_basis(n, p, spec, field.knots);
        }
        acc += radial * pk;
    }
    return acc;
}

double ParityDecomposition::chi_r(double p, double z) const
{
    return 0.5 * (evaluate_psi(*field, p, z) + evaluate_psi(*field, p, -z));
}

double ParityDecomposition::chi_i(double p, double z) const
{
    return 0.5 * (evaluate_psi(*field, p, z) - evaluate_psi(*field, p, -z));
}

ParityDecomposition decompose_parity(const SolutionField& field)
{
    return ParityDecomposition{&field};
}

namespace {

void moments(const std::vector<double>& v, const std::vector<double>& w,
             double& mv, double& mw, double& var_v, double& var_w, double& cov)
{
    std::size_t n = v.size();
    mv = std::accumulate(v.begin(), v.end(), 0.0) / n;
    mw = std::accumulate(w.begin(), w.end(), 0.0) / n;
    var_v = var_w = cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        var_v += (v[i] - mv) * (v[i] - mv);
        var_w += (w[i] - mw) * (w[i] - mw);
        cov += (v[i] - mv) * (w[i] - mw);
    }
    var_v /= n;
    var_w /= n;
    cov /= n;
}

} // namespace

double reliability_coefficient(const std::vector<double>& lhs, const std::vector<double>& rhs)
{
    if (lhs.size() != rhs.size() || lhs.empty())
        throw std::invalid_argument("reliability_coefficient: mismatched or empty samples");
    double ml, mr, vl, vr, cov;
    moments(lhs, rhs, ml, mr, vl, vr, cov);
    double denom = vl + vr + (ml - mr) * (ml - mr);
    if (denom == 0.0) {
        if (vl == 0.0 && vr == 0.0)
            throw std::invalid_argument("reliability_coefficient: both samples constant");
        return 1.0;
    }
    return 2.0 * cov / denom;
}

double pearson_coefficient(const std::vector<double>& lhs, const std::vector<double>& rhs)
{
    if (lhs.size() != rhs.size() || lhs.empty())
        throw std::invalid_argument("pearson_coefficient: mismatched or empty samples");
    double ml, mr, vl, vr, cov;
    moments(lhs, rhs, ml, mr, vl, vr, cov);
    if (vl == 0.0 || vr == 0.0)
        throw std::invalid_argument("pearson_coefficient: constant sample");
    return cov / std::sqrt(vl * vr);
}

VerificationReport residual_grid(const SolutionField& field, const QuadratureRule& quad)
{
    field.validate();
    const BasisSpec& spec = field.spec;
    int np = spec.n_p;
    int nt = spec.n_theta;
    int ell = spec.ell;

    std::vector<double> pc(np), zc(nt + 3);
    for (int i = 0; i < np; ++i)
        pc[i] = 0.5 * (field.knots.t_p[i + 3] + field.knots.t_p[i + 4]);
    for (int j = 0; j < nt + 3; ++j)
        zc[j] = 0.5 * (field.knots.t_z[j] + field.knots.t_z[j + 1]);

    // inner kernel integrals per (grid momentum, spline, k)
    std::vector<double> inner(static_cast<std::size_t>(np) * np * nt);
    for (int i = 0; i < np; ++i)
        for (int n = 1; n <= np; ++n)
            for (int it = 1; it <= nt; ++it)
                inner[(static_cast<std::size_t>(i) * np + n - 1) * nt + it - 1] =
                    radial_inner_integral(n, ell + it - 1, pc[i], spec, field.knots, quad);

    VerificationReport report;
    std::size_t total = static_cast<std::size_t>(np) * (nt + 3);
    report.p.reserve(total);
    report.z.reserve(total);
    report.lhs.reserve(total);
    report.rhs.reserve(total);

    double rhs_scale = field.lambda / (M_PI * M_PI);
    for (int i = 0; i < np; ++i) {
        double p = pc[i];
        std::vector<double> gvals(np);
        for (int n = 1; n <= np; ++n)
            gvals[n - 1] = radial_basis(n, p, spec, field.knots);
        for (int j = 0; j < nt + 3; ++j) {
            double z = zc[j];
            double p0 = p * z;
            double ps2 = p * p * (1.0 - z * z);
            double dr = d_real(p0, ps2, field.params);
            double di = d_imag(p0, ps2, field.params);
            double lhs = 0.0, rhs = 0.0;
            for (int it = 1; it <= nt; ++it) {
                int k = ell + it - 1;
                double pk = spherical_fn(k, ell, z);
                double pk_neg = ((it - 1) % 2 == 0) ? pk : -pk;
                for (int n = 1; n <= np; ++n) {
                    double g = field.coeffs[MatrixPair::index(spec, it, n)];
                    if (g == 0.0)
                        continue;
                    lhs += g * gvals[n - 1] * (dr * pk + di * pk_neg);
                    rhs += g * inner[(static_cast<std::size_t>(i) * np + n - 1) * nt + it - 1] * pk;
                }
            }
            rhs *= rhs_scale;
            report.p.push_back(p);
            report.z.push_back(z);
            report.lhs.push_back(lhs);
            report.rhs.push_back(rhs);
        }
    }

    report.r_lhs_rhs = reliability_coefficient(report.lhs, report.rhs);
    double scale = 0.0;
    for (double v : report.lhs)
        scale = std::max(scale, std::abs(v));
    double worst = 0.0;
    for (std::size_t i = 0; i < report.lhs.size(); ++i)
        worst = std::max(worst, std::abs(report.lhs[i] - report.rhs[i]));
    report.max_rel_resid = scale > 0.0 ? worst / scale : worst;
    return report;
}

std::vector<ConvergenceRow> convergence_study(const ModelParams& params,
                                              const BasisSpec& base,
                                              const std::vector<std::pair<int, int>>& ladder,
                                              int n_eigen, int n_gl, int n_gc,
                                              double tol_real, int n_threads)
{
    std::vector<ConvergenceRow> rows;
    for (auto [np, nt] : ladder) {
        ConvergenceRow row;
        row.n_p = np;
        row.n_theta = nt;
        try {
            BasisSpec spec = base;
            spec.n_p = np;
            spec.n_theta = nt;
            spec.validate();
            KnotVector knots = make_knots(spec);
            QuadratureRule quad = QuadratureRule::make(spec, n_gl, n_gc);
            MatrixPair pair = assemble(params, spec, knots, quad, n_threads);
            Spectrum spectrum = solve_generalized(pair);
            auto real_pairs = filter_real(spectrum, tol_real);
            int keep = std::min<int>(n_eigen, static_cast<int>(real_pairs.size()));
            for (int i = 0; i < keep; ++i)
                row.eigenvalues.push_back(real_pairs[i].lambda);
            if (keep > 0) {
                SolutionField field{real_pairs[0].vec, params, spec, knots,
                                    real_pairs[0].lambda};
                row.r_lowest = residual_grid(field, quad).r_lhs_rhs;
            }
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_report(std::ostream& os, const VerificationReport& report)
{
    os << "# p z lhs rhs\n";
    os.precision(12);
    for (std::size_t i = 0; i < report.p.size(); ++i)
        os << report.p[i] << ' ' << report.z[i] << ' ' << report.lhs[i] << ' '
           << report.rhs[i] << '\n';
}

} // namespace wcbse
