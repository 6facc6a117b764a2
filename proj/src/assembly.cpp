#include "wcbse/assembly.hpp"

#include <cmath>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace wcbse {

namespace {

// Index j (0-based) of the physical knot interval [t[j], t[j+1]) containing p,
// or -1 when p lies outside [T_p(4), T_p(n_p+4)).
int find_interval(const std::vector<double>& t, double p)
{
    int last = static_cast<int>(t.size()) - 2;
    if (p < t[3] || p >= t.back())
        return -1;
    for (int j = 3; j <= last; ++j)
        if (p < t[j + 1])
            return j;
    return -1;
}

// Values of all radial basis functions G_n that are nonzero at p; n runs
// n_lo..n_hi (1-based), at most four splines.
void g_values(const BasisSpec& spec, const KnotVector& knots, double p,
              int& n_lo, int& n_hi, double g[4])
{
    int j = find_interval(knots.t_p, p);
    if (j < 0) {
        n_lo = 1;
        n_hi = 0;
        return;
    }
    n_lo = std::max(1, j - 2);      // spline n covers knots t[n-1..n+3]
    n_hi = std::min(spec.n_p, j + 1);
    double conv = convergence_function(spec.ell, spec.a, p);
    for (int n = n_lo; n <= n_hi; ++n)
        g[n - n_lo] = conv * bspline(n, p, knots);
}

void check_finite(double v, const char* where)
{
    if (!std::isfinite(v))
        throw std::runtime_error(std::string("assembly: non-finite integrand in ") + where);
}

// pi (2l+It)! / ((l+It) (It-1)!) from the spherical-function norm, combined
// with the 1/(l+It) of the kernel power.
double b_block_coef(int ell, int i_theta)
{
    double kappa = ell + i_theta;
    double prod = 1.0;
    for (int j = i_theta; j <= 2 * ell + i_theta; ++j)
        prod *= j;
    return M_PI * prod / (kappa * kappa);
}

template <typename Fn>
void run_chunked(std::size_t count, int n_threads, std::vector<Eigen::MatrixXd>& partials,
                 int size, Fn&& body)
{
    n_threads = std::max(1, n_threads);
    n_threads = std::min<int>(n_threads, static_cast<int>(count) > 0 ? static_cast<int>(count) : 1);
    partials.assign(n_threads, Eigen::MatrixXd::Zero(size, size));
    if (n_threads == 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(partials[0], i);
        return;
    }
    std::vector<std::thread> workers;
    std::size_t chunk = (count + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        workers.emplace_back([&, t, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i)
                body(partials[t], i);
        });
    }
    for (auto& w : workers)
        w.join();
}

} // namespace

Eigen::MatrixXd assemble_a(const ModelParams& params, const BasisSpec& spec,
                           const KnotVector& knots, const QuadratureRule& quad,
                           int n_threads)
{
    params.validate();
    spec.validate();
    int np = spec.n_p;
    int nt = spec.n_theta;
    int size = np * nt;
    int ell = spec.ell;

    std::vector<double> pq, pw;
    radial_nodes(knots, quad, -1.0, pq, pw);

    int nz = static_cast<int>(quad.z_nodes.size());
    // P[it][b] = P^(2)_{ell+it, ell}(z_b); parity (-1)^it under z -> -z
    std::vector<std::vector<double>> pmat(nt, std::vector<double>(nz));
    for (int it = 0; it < nt; ++it)
        for (int b = 0; b < nz; ++b)
            pmat[it][b] = spherical_fn(ell + it, ell, quad.z_nodes[b]);

    std::vector<Eigen::MatrixXd> partials;
    run_chunked(pq.size(), n_threads, partials, size, [&](Eigen::MatrixXd& acc, std::size_t a) {
        double p = pq[a];
        int n_lo, n_hi;
        double g[4];
        g_values(spec, knots, p, n_lo, n_hi, g);
        if (n_hi < n_lo)
            return;
        // angular kernel matrix at this radius
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nt, nt);
        for (int b = 0; b < nz; ++b) {
            double z = quad.z_nodes[b];
            double p0 = p * z;
            double ps2 = p * p * (1.0 - z * z);
            double dr = d_real(p0, ps2, params);
            double di = d_imag(p0, ps2, params);
            double wz = quad.z_weights[b];
            for (int jt = 0; jt < nt; ++jt) {
                double parity = (jt % 2 == 0) ? 1.0 : -1.0;
                double col = wz * (dr * pmat[jt][b] + di * parity * pmat[jt][b]);
                for (int it = 0; it < nt; ++it)
                    m(it, jt) += pmat[it][b] * col;
            }
        }
        double pref = pw[a] * std::pow(p, spec.script_n);
        check_finite(pref, "assemble_a");
        for (int it = 0; it < nt; ++it)
            for (int jt = 0; jt < nt; ++jt) {
                double coef = pref * m(it, jt);
                for (int n = n_lo; n <= n_hi; ++n)
                    for (int mm = n_lo; mm <= n_hi; ++mm)
                        acc(np * it + n - 1, np * jt + mm - 1) +=
                            coef * g[n - n_lo] * g[mm - n_lo];
            }
    });

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
    for (auto& part : partials)
        a += part;
    check_finite(a.norm(), "assemble_a");
    return a;
}

Eigen::MatrixXd assemble_b(const ModelParams& params, const BasisSpec& spec,
                           const KnotVector& knots, const QuadratureRule& quad,
                           int n_threads)
{
    params.validate();
    spec.validate();
    int np = spec.n_p;
    int nt = spec.n_theta;
    int size = np * nt;
    int ell = spec.ell;

    std::vector<double> pq, pw;
    radial_nodes(knots, quad, -1.0, pq, pw);

    std::vector<double> coef(nt);
    for (int it = 1; it <= nt; ++it)
        coef[it - 1] = b_block_coef(ell, it);

    std::vector<Eigen::MatrixXd> partials;
    run_chunked(pq.size(), n_threads, partials, size, [&](Eigen::MatrixXd& acc, std::size_t a) {
        double p = pq[a];
        int n_lo, n_hi;
        double gp[4];
        g_values(spec, knots, p, n_lo, n_hi, gp);
        if (n_hi < n_lo)
            return;

        // inner q-integrals H[it][J_p] = int dq q^2 G_Jp(q) R(p,q)^(ell+it+1),
        // split at q = p
        std::vector<double> h(static_cast<std::size_t>(nt) * np, 0.0);
        std::vector<double> qq, qw;
        radial_nodes(knots, quad, p, qq, qw);
        for (std::size_t c = 0; c < qq.size(); ++c) {
            double q = qq[c];
            int m_lo, m_hi;
            double gq[4];
            g_values(spec, knots, q, m_lo, m_hi, gq);
            if (m_hi < m_lo)
                continue;
            double r = q < p ? q / p : p / q;
            double rp = std::pow(r, ell + 1);
            double base = qw[c] * q * q;
            for (int it = 0; it < nt; ++it) {
                double wr = base * rp;
                for (int m = m_lo; m <= m_hi; ++m)
                    h[static_cast<std::size_t>(it) * np + m - 1] += wr * gq[m - m_lo];
                rp *= r;
            }
        }

        double pref = pw[a] * std::pow(p, spec.script_n - 1);
        check_finite(pref, "assemble_b");
        for (int it = 0; it < nt; ++it) {
            double cfull = coef[it] * pref;
            for (int n = n_lo; n <= n_hi; ++n) {
                double row = cfull * gp[n - n_lo];
                for (int m = 1; m <= np; ++m)
                    acc(np * it + n - 1, np * it + m - 1) +=
                        row * h[static_cast<std::size_t>(it) * np + m - 1];
            }
        }
    });

    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(size, size);
    for (auto& part : partials)
        b += part;
    check_finite(b.norm(), "assemble_b");
    return b;
}

MatrixPair assemble(const ModelParams& params, const BasisSpec& spec,
                    const KnotVector& knots, const QuadratureRule& quad, int n_threads)
{
    MatrixPair pair;
    pair.spec = spec;
    pair.params = params;
    pair.a_mat = assemble_a(params, spec, knots, quad, n_threads);
    pair.b_mat = assemble_b(params, spec, knots, quad, n_threads);
    return pair;
}

double radial_inner_integral(int n, int k, double p, const BasisSpec& spec,
                             const KnotVector& knots, const QuadratureRule& quad)
{
    if (!(p > 0.0))
        throw std::domain_error("radial_inner_integral: p must be positive");
    if (n < 1 || n > spec.n_p)
        throw std::out_of_range("radial_inner_integral: spline index out of range");
    std::vector<double> qq, qw;
    radial_nodes(knots, quad, p, qq, qw);
    double acc = 0.0;
    for (std::size_t c = 0; c < qq.size(); ++c) {
        double q = qq[c];
        double g = radial_basis(n, q, spec, knots);
        if (g == 0.0)
            continue;
        double r = q < p ? q / p : p / q;
        acc += qw[c] * q * q * g * std::pow(r, k + 1);
    }
    return 2.0 * M_PI * M_PI / (p * (k + 1)) * acc;
}

void write_matrix_pair(std::ostream& os, const MatrixPair& pair)
{
    os << "# wcbse matrix pair\n";
    os << pair.spec.n_p << ' ' << pair.spec.n_theta << ' ' << pair.params.delta << ' '
       << pair.params.epsilon << ' ' << pair.params.xi << ' ' << pair.params.ell << ' '
       << pair.spec.script_n << '\n';
    Eigen::IOFormat fmt(17, Eigen::DontAlignCols, " ", "\n");
    os << "A\n" << pair.a_mat.format(fmt) << "\nB\n" << pair.b_mat.format(fmt) << '\n';
}

} // namespace wcbse
