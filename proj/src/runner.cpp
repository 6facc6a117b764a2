#include "wcbse/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace wcbse {

namespace {

using json = nlohmann::json;

const std::vector<std::string> known_keys = {
    "mode",    "delta",   "epsilon2", "xi",       "ell",      "n_p",
    "n_theta", "c_prime", "c_dprime", "a",        "script_n", "n_gl",
    "n_gc",    "tol_real", "n_eigen", "n_threads", "out_dir",  "ladder"};

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value)
{
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("config: invalid number for key '" + key + "': " + value);
    }
    if (pos != value.size())
        throw std::runtime_error("config: trailing characters for key '" + key + "': " + value);
    return v;
}

int parse_int(const std::string& key, const std::string& value)
{
    double v = parse_double(key, value);
    if (v != std::floor(v))
        throw std::runtime_error("config: key '" + key + "' must be an integer");
    return static_cast<int>(v);
}

double ms_since(std::chrono::steady_clock::time_point t0)
{
    auto dt = std::chrono::steady_clock::now() - t0;
    return std::chrono::duration<double, std::milli>(dt).count();
}

std::string fmt6(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

RunConfig RunConfig::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("config: cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(lineno) +
                                     " is not of the form key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (kv.count(key))
            throw std::runtime_error("config: duplicate key '" + key + "'");
        kv[key] = value;
    }
    RunConfig config;
    config.apply(kv);
    return config;
}

void RunConfig::apply(const std::map<std::string, std::string>& overrides)
{
    for (const auto& [key, value] : overrides) {
        if (std::find(known_keys.begin(), known_keys.end(), key) == known_keys.end())
            throw std::runtime_error("config: unknown key '" + key + "'");
        if (key == "mode")
            mode = value;
        else if (key == "delta")
            delta = parse_double(key, value);
        else if (key == "epsilon2")
            epsilon2 = parse_double(key, value);
        else if (key == "xi")
            xi = parse_double(key, value);
        else if (key == "ell")
            ell = parse_int(key, value);
        else if (key == "n_p")
            n_p = parse_int(key, value);
        else if (key == "n_theta")
            n_theta = parse_int(key, value);
        else if (key == "c_prime")
            c_prime = parse_double(key, value);
        else if (key == "c_dprime")
            c_dprime = parse_double(key, value);
        else if (key == "a")
            a = parse_double(key, value);
        else if (key == "script_n")
            script_n = parse_int(key, value);
        else if (key == "n_gl")
            n_gl = parse_int(key, value);
        else if (key == "n_gc")
            n_gc = parse_int(key, value);
        else if (key == "tol_real")
            tol_real = parse_double(key, value);
        else if (key == "n_eigen")
            n_eigen = parse_int(key, value);
        else if (key == "n_threads")
            n_threads = parse_int(key, value);
        else if (key == "out_dir")
            out_dir = value;
        else if (key == "ladder") {
            ladder.clear();
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ','))
                ladder.push_back(parse_int(key, trim(item)));
            if (ladder.empty())
                throw std::runtime_error("config: ladder must list at least one n_p");
        }
    }
}

void RunConfig::validate() const
{
    static const std::vector<std::string> modes = {"solve", "table1", "table2", "converge",
                                                   "verify"};
    if (mode.empty())
        throw std::runtime_error("config: required field 'mode' is missing "
                                 "(one of solve, table1, table2, converge, verify)");
    if (std::find(modes.begin(), modes.end(), mode) == modes.end())
        throw std::runtime_error("config: unknown mode '" + mode + "'");

    std::vector<std::string> missing;
    auto need = [&](const char* name, bool present) {
        if (!present)
            missing.push_back(name);
    };
    if (mode == "solve" || mode == "verify" || mode == "converge") {
        need("delta", delta.has_value());
        need("epsilon2", epsilon2.has_value());
        need("ell", ell.has_value());
        need("n_theta", n_theta.has_value());
        if (mode != "converge")
            need("n_p", n_p.has_value());
    }
    if (!missing.empty()) {
        std::string msg = "config: missing required fields for mode '" + mode + "':";
        for (const auto& f : missing)
            msg += " " + f;
        throw std::runtime_error(msg);
    }
    if (epsilon2 && !(*epsilon2 >= 0.0 && *epsilon2 < 1.0))
        throw std::runtime_error("config: epsilon2 must satisfy 0 <= epsilon2 < 1");
    if (n_eigen < 1)
        throw std::runtime_error("config: n_eigen must be >= 1");
    if (!(tol_real > 0.0))
        throw std::runtime_error("config: tol_real must be positive");
    if (delta)
        to_params().validate();
    if (n_p && n_theta)
        to_spec().validate();
}

ModelParams RunConfig::to_params() const
{
    ModelParams params;
    params.delta = delta.value_or(0.0);
    params.epsilon = std::sqrt(epsilon2.value_or(0.0));
    params.xi = xi.value_or(ModelParams::default_xi(params.delta));
    params.ell = ell.value_or(0);
    return params;
}

BasisSpec RunConfig::to_spec() const
{
    BasisSpec spec;
    spec.n_p = n_p.value_or(20);
    spec.n_theta = n_theta.value_or(1);
    spec.c_prime = c_prime;
    spec.c_dprime = c_dprime;
    spec.a = a;
    spec.script_n = script_n;
    spec.ell = ell.value_or(0);
    return spec;
}

std::map<std::string, std::string> RunConfig::echo() const
{
    std::map<std::string, std::string> kv;
    kv["mode"] = mode;
    if (delta)
        kv["delta"] = fmt6(*delta);
    if (epsilon2)
        kv["epsilon2"] = fmt6(*epsilon2);
    if (xi)
        kv["xi"] = fmt6(*xi);
    if (ell)
        kv["ell"] = std::to_string(*ell);
    if (n_p)
        kv["n_p"] = std::to_string(*n_p);
    if (n_theta)
        kv["n_theta"] = std::to_string(*n_theta);
    kv["c_prime"] = fmt6(c_prime);
    kv["c_dprime"] = fmt6(c_dprime);
    kv["a"] = fmt6(a);
    kv["script_n"] = std::to_string(script_n);
    kv["n_gl"] = std::to_string(n_gl);
    kv["n_gc"] = std::to_string(n_gc);
    kv["tol_real"] = fmt6(tol_real);
    kv["n_eigen"] = std::to_string(n_eigen);
    return kv;
}

int RunConfig::worker_count() const
{
    if (n_threads > 0)
        return n_threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

json ResultRecord::to_json() const
{
    json j;
    j["label"] = label;
    j["config"] = config_echo;
    j["n_basis"] = n_basis;
    j["k_max"] = k_max;
    j["timings_ms"] = {{"assemble", t_assemble_ms}, {"solve", t_solve_ms},
                       {"verify", t_verify_ms}};
    j["eigenvalues"] = json::array();
    for (const auto& row : rows)
        j["eigenvalues"].push_back({{"index", row.index},
                                    {"lambda_re", row.lambda_re},
                                    {"lambda_im", row.lambda_im},
                                    {"r", row.r},
                                    {"max_resid", row.max_resid}});
    return j;
}

ResultRecord ResultRecord::from_json(const json& j)
{
    ResultRecord rec;
    rec.label = j.at("label").get<std::string>();
    rec.config_echo = j.at("config").get<std::map<std::string, std::string>>();
    rec.n_basis = j.at("n_basis").get<int>();
    rec.k_max = j.at("k_max").get<int>();
    rec.t_assemble_ms = j.at("timings_ms").at("assemble").get<double>();
    rec.t_solve_ms = j.at("timings_ms").at("solve").get<double>();
    rec.t_verify_ms = j.at("timings_ms").at("verify").get<double>();
    for (const auto& e : j.at("eigenvalues")) {
        EigenResultRow row;
        row.index = e.at("index").get<int>();
        row.lambda_re = e.at("lambda_re").get<double>();
        row.lambda_im = e.at("lambda_im").get<double>();
        row.r = e.at("r").get<double>();
        row.max_resid = e.at("max_resid").get<double>();
        rec.rows.push_back(row);
    }
    return rec;
}

bool ResultRecord::operator==(const ResultRecord& other) const
{
    if (label != other.label || config_echo != other.config_echo ||
        n_basis != other.n_basis || k_max != other.k_max ||
        t_assemble_ms != other.t_assemble_ms || t_solve_ms != other.t_solve_ms ||
        t_verify_ms != other.t_verify_ms || rows.size() != other.rows.size())
        return false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& x = rows[i];
        const auto& y = other.rows[i];
        if (x.index != y.index || x.lambda_re != y.lambda_re || x.lambda_im != y.lambda_im ||
            x.r != y.r || x.max_resid != y.max_resid)
            return false;
    }
    return true;
}

CaseResult run_case(const ModelParams& params, const BasisSpec& spec, int n_gl, int n_gc,
                    double tol_real, int n_eigen, int n_threads, const std::string& label)
{
    CaseResult result;
    result.params = params;
    result.spec = spec;
    result.knots = make_knots(spec);
    result.quad = QuadratureRule::make(spec, n_gl, n_gc);

    auto t0 = std::chrono::steady_clock::now();
    MatrixPair pair = assemble(params, spec, result.knots, result.quad, n_threads);
    result.record.t_assemble_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    Spectrum spectrum = solve_generalized(pair);
    auto real_pairs = filter_real(spectrum, tol_real);
    result.record.t_solve_ms = ms_since(t0);

    t0 = std::chrono::steady_clock::now();
    int keep = std::min<int>(n_eigen, static_cast<int>(real_pairs.size()));
    for (int i = 0; i < keep; ++i) {
        SolutionField field{real_pairs[i].vec, params, spec, result.knots,
                            real_pairs[i].lambda};
        VerificationReport report = residual_grid(field, result.quad);
        EigenResultRow row;
        row.index = i;
        row.lambda_re = real_pairs[i].lambda;
        row.lambda_im = real_pairs[i].imag_part;
        row.r = report.r_lhs_rhs;
        row.max_resid = report.max_rel_resid;
        result.record.rows.push_back(row);
    }
    result.record.t_verify_ms = ms_since(t0);

    result.pairs.assign(real_pairs.begin(), real_pairs.begin() + keep);
    result.record.label = label;
    result.record.n_basis = spec.size();
    result.record.k_max = spec.k_max();
    return result;
}

std::vector<TableFixture> table1_fixtures(int n_p)
{
    return {
        {"l=0", 0.0, 0, n_p, 1, {1.838, 5.000, 9.817}, 0.005, 0.005},
        {"l=1", 0.0, 1, n_p, 1, {5.654, 10.43}, 0.005, 0.005},
        {"l=2", 0.0, 2, n_p, 1, {11.46}, 0.005, 0.005},
    };
}

std::vector<TableFixture> table2_fixtures()
{
    return {
        {"eps2=0.1", 0.1, 0, 20, 10, {1.686, 4.690, 5.156, 9.252, 9.688, 10.42}, 0.005, 0.005},
        {"eps2=0.5", 0.5, 0, 20, 10, {1.052, 3.112, 3.344, 6.174, 6.532, 6.748}, 0.01, 0.01},
        {"eps2=0.9", 0.9, 0, 25, 20, {0.3167, 0.8500, 1.550, 1.590, 2.534, 2.604}, 0.015, 0.015},
        {"eps2=0.99", 0.99, 0, 30, 30, {0.0702, 0.166, 0.286, 0.427, 0.590, 0.734}, 0.06,
         0.015, 0.3},
    };
}

void write_results_csv(std::ostream& os, const std::vector<ResultRecord>& records)
{
    os << "label,index,lambda_re,lambda_im,r,max_resid\n";
    for (const auto& rec : records)
        for (const auto& row : rec.rows) {
            os << rec.label << ',' << row.index << ',';
            os.precision(6);
            os << row.lambda_re << ',';
            os.precision(3);
            os << row.lambda_im << ',';
            os.precision(10);
            os << row.r << ',';
            os.precision(3);
            os << row.max_resid << '\n';
        }
}

void write_grid_tsv(std::ostream& os, const SolutionField& field, const QuadratureRule& quad)
{
    VerificationReport report = residual_grid(field, quad);
    ParityDecomposition parity = decompose_parity(field);
    os << "p\tz\tpsi\tchi_R\tchi_I\tlhs\trhs\n";
    os.precision(12);
    for (std::size_t i = 0; i < report.p.size(); ++i) {
        double p = report.p[i];
        double z = report.z[i];
        os << p << '\t' << z << '\t' << evaluate_psi(field, p, z) << '\t'
           << parity.chi_r(p, z) << '\t' << parity.chi_i(p, z) << '\t' << report.lhs[i]
           << '\t' << report.rhs[i] << '\n';
    }
}

namespace {

void write_outputs(const RunConfig& config, const RunOutcome& outcome,
                   const CaseResult* grid_case)
{
    if (config.out_dir.empty())
        return;
    std::filesystem::create_directories(config.out_dir);
    std::filesystem::path dir(config.out_dir);

    std::ofstream csv(dir / "results.csv");
    write_results_csv(csv, outcome.records);

    json j;
    j["records"] = json::array();
    for (const auto& rec : outcome.records)
        j["records"].push_back(rec.to_json());
    std::ofstream js(dir / "results.json");
    js << j.dump(2) << '\n';

    if (grid_case && !grid_case->pairs.empty()) {
        SolutionField field{grid_case->pairs[0].vec, grid_case->params, grid_case->spec,
                            grid_case->knots, grid_case->pairs[0].lambda};
        std::ofstream grid(dir / "grid.tsv");
        write_grid_tsv(grid, field, grid_case->quad);
    }
}

RunOutcome run_table(const RunConfig& config, const std::vector<TableFixture>& fixtures,
                     double delta)
{
    RunOutcome outcome;
    std::string mismatches;
    for (const auto& fix : fixtures) {
        ModelParams params;
        params.delta = delta;
        params.epsilon = std::sqrt(fix.epsilon2);
        params.xi = config.xi.value_or(ModelParams::default_xi(delta));
        params.ell = fix.ell;
        BasisSpec spec = config.to_spec();
        spec.n_p = config.n_p.value_or(fix.n_p);
        spec.n_theta = fix.n_theta;
        spec.ell = fix.ell;
        spec.c_prime = fix.c_prime;

        CaseResult result =
            run_case(params, spec, config.n_gl, config.n_gc, config.tol_real,
                     static_cast<int>(fix.eigenvalues.size()), config.worker_count(),
                     fix.name);
        outcome.records.push_back(result.record);

        for (std::size_t i = 0; i < fix.eigenvalues.size(); ++i) {
            double tol = i == 0 ? fix.rel_tol_first : fix.rel_tol;
            if (i >= result.record.rows.size()) {
                mismatches += fix.name + ": only " +
                              std::to_string(result.record.rows.size()) +
                              " real eigenvalues found\n";
                break;
            }
            double got = result.record.rows[i].lambda_re;
            double want = fix.eigenvalues[i];
            if (std::abs(got - want) > tol * want)
                mismatches += fix.name + " eigenvalue " + std::to_string(i) + ": got " +
                              fmt6(got) + ", reference " + fmt6(want) + " (tol " +
                              fmt6(tol * 100) + "%)\n";
        }
    }
    if (!mismatches.empty()) {
        outcome.exit_code = exit_table_mismatch;
        outcome.message = mismatches;
    }
    return outcome;
}

} // namespace

RunOutcome run(const RunConfig& config)
{
    try {
        config.validate();
    } catch (const std::exception& e) {
        return {exit_config_error, {}, e.what()};
    }

    try {
        if (config.mode == "solve" || config.mode == "verify") {
            CaseResult result =
                run_case(config.to_params(), config.to_spec(), config.n_gl, config.n_gc,
                         config.tol_real, config.n_eigen, config.worker_count(), config.mode);
            result.record.config_echo = config.echo();
            RunOutcome outcome;
            outcome.records.push_back(result.record);
            write_outputs(config, outcome, config.mode == "verify" ? &result : nullptr);
            return outcome;
        }
        if (config.mode == "table1" || config.mode == "table2") {
            auto fixtures = config.mode == "table1"
                                ? table1_fixtures(config.n_p.value_or(20))
                                : table2_fixtures();
            RunOutcome outcome = run_table(config, fixtures, config.delta.value_or(0.6));
            for (auto& rec : outcome.records)
                rec.config_echo = config.echo();
            write_outputs(config, outcome, nullptr);
            return outcome;
        }
        if (config.mode == "converge") {
            std::vector<std::pair<int, int>> ladder;
            for (int np : config.ladder)
                ladder.emplace_back(np, config.n_theta.value_or(1));
            auto rows = convergence_study(config.to_params(), config.to_spec(), ladder,
                                          config.n_eigen, config.n_gl, config.n_gc,
                                          config.tol_real, config.worker_count());
            RunOutcome outcome;
            for (const auto& row : rows) {
                ResultRecord rec;
                rec.label = "converge n_p=" + std::to_string(row.n_p) +
                            " n_theta=" + std::to_string(row.n_theta);
                rec.config_echo = config.echo();
                rec.n_basis = row.n_p * row.n_theta;
                rec.k_max = config.to_spec().ell + row.n_theta - 1;
                if (!row.ok) {
                    rec.label += " FAILED: " + row.error;
                    outcome.exit_code = exit_numerical_failure;
                } else {
                    for (std::size_t i = 0; i < row.eigenvalues.size(); ++i) {
                        EigenResultRow e;
                        e.index = static_cast<int>(i);
                        e.lambda_re = row.eigenvalues[i];
                        e.r = i == 0 ? row.r_lowest : 0.0;
                        rec.rows.push_back(e);
                    }
                }
                outcome.records.push_back(std::move(rec));
            }
            write_outputs(config, outcome, nullptr);
            return outcome;
        }
    } catch (const std::exception& e) {
        return {exit_numerical_failure, {}, e.what()};
    }
    return {exit_config_error, {}, "config: unknown mode '" + config.mode + "'"};
}

RunOutcome sweep(const RunConfig& config, const std::string& axis,
                 const std::vector<double>& values)
{
    static const std::vector<std::string> axes = {"epsilon2", "delta", "n_p", "n_theta",
                                                  "xi", "a", "script_n"};
    if (std::find(axes.begin(), axes.end(), axis) == axes.end())
        return {exit_config_error, {}, "sweep: unknown axis '" + axis + "'"};

    std::vector<RunConfig> points;
    for (double v : values) {
        RunConfig point = config;
        point.mode = "solve";
        point.out_dir.clear();
        if (axis == "epsilon2")
            point.epsilon2 = v;
        else if (axis == "delta")
            point.delta = v;
        else if (axis == "n_p")
            point.n_p = static_cast<int>(v);
        else if (axis == "n_theta")
            point.n_theta = static_cast<int>(v);
        else if (axis == "xi")
            point.xi = v;
        else if (axis == "a")
            point.a = v;
        else if (axis == "script_n")
            point.script_n = static_cast<int>(v);
        points.push_back(std::move(point));
    }

    RunOutcome outcome;
    outcome.records.resize(points.size());
    std::vector<int> codes(points.size(), exit_ok);
    std::vector<std::string> errors(points.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= points.size())
                return;
            std::string label = axis + "=" + fmt6(values[i]);
            try {
                points[i].validate();
                CaseResult result = run_case(points[i].to_params(), points[i].to_spec(),
                                             points[i].n_gl, points[i].n_gc,
                                             points[i].tol_real, points[i].n_eigen,
                                             /*n_threads=*/1, label);
                result.record.config_echo = points[i].echo();
                outcome.records[i] = std::move(result.record);
            } catch (const std::exception& e) {
                codes[i] = exit_numerical_failure;
                errors[i] = e.what();
                outcome.records[i].label = label + " FAILED";
                outcome.records[i].config_echo = points[i].echo();
            }
        }
    };
    int pool = std::min<int>(config.worker_count(), static_cast<int>(points.size()));
    std::vector<std::thread> threads;
    for (int t = 0; t < std::max(1, pool); ++t)
        threads.emplace_back(worker);
    for (auto& t : threads)
        t.join();

    for (std::size_t i = 0; i < points.size(); ++i)
        if (codes[i] != exit_ok) {
            outcome.exit_code = exit_numerical_failure;
            outcome.message += axis + "=" + fmt6(values[i]) + ": " + errors[i] + "\n";
        }
    write_outputs(config, outcome, nullptr);
    return outcome;
}

} // namespace wcbse
