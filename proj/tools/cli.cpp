#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "radlab/certificate.hpp"
#include "radlab/curve.hpp"
#include "radlab/errors.hpp"
#include "radlab/identity.hpp"
#include "radlab/io.hpp"
#include "radlab/test_function.hpp"

namespace radlab::cli {

namespace {

const char* command_name(Command c) {
    switch (c) {
        case Command::Solve: return "solve";
        case Command::Identity: return "identity";
        case Command::Certify: return "certify";
        case Command::Trace: return "trace";
    }
    return "?";
}

std::string default_format(Command c) {
    return c == Command::Trace ? "csv" : "json";
}

std::pair<double, double> parse_pair(const std::string& text, const char* what) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw ValidationError(std::string(what) + ": expected 'a,b', got '" + text + "'");
    }
    try {
        std::size_t used = 0;
        const double a = std::stod(text.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument(text);
        const std::string rest = text.substr(comma + 1);
        const double b = std::stod(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(text);
        return {a, b};
    } catch (const std::logic_error&) {
        throw ValidationError(std::string(what) + ": cannot parse '" + text + "'");
    }
}

json config_json(const RunConfig& c) {
    json j{{"command", command_name(c.command)}, {"format", c.format}, {"controls", c.controls}};
    switch (c.command) {
        case Command::Solve:
        case Command::Identity: {
            j["problem"] = c.problem();
            if (c.alpha) j["alpha"] = *c.alpha;
            if (c.bracket) j["bracket"] = {c.bracket->first, c.bracket->second};
            if (c.solution_csv) j["solution_csv"] = *c.solution_csv;
            if (c.command == Command::Identity) {
                j["psi"] = c.psi;
                j["identity"] = c.identity;
            }
            break;
        }
        case Command::Certify:
            j["lambdas"] = c.lambdas;
            j["ps"] = c.ps;
            j["grid_size"] = c.cert_grid;
            j["sweep"] = c.sweep;
            if (c.sweep) {
                j["sweep_alpha_range"] = {c.sweep_alpha_min, c.sweep_alpha_max};
                j["sweep_points"] = c.sweep_points;
            }
            break;
        case Command::Trace:
            j["q"] = c.q;
            j["a_min"] = c.a_min;
            j["a_max"] = c.a_max;
            j["points"] = c.points;
            break;
    }
    return j;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open output file '" + path + "'");
    f << content;
    if (!f) throw ValidationError("failed writing '" + path + "'");
}

/// Data goes to --out when given, stdout otherwise.
void emit(const RunConfig& c, const std::string& content, std::ostream& out) {
    if (c.out) {
        write_file(*c.out, content);
    } else {
        out << content;
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

RadialSolution obtain_solution(const RunConfig& c, const RadialProblem& prob) {
    if (c.solution_csv) {
        std::ifstream f(*c.solution_csv);
        if (!f) throw ValidationError("cannot read solution file '" + *c.solution_csv + "'");
        return read_solution_csv(f);
    }
    if (c.bracket) return shoot_bvp(prob, c.bracket->first, c.bracket->second, c.controls);
    return integrate_ivp(prob, *c.alpha, prob.radius, c.controls);
}

std::vector<TestFunction> selected_psi(const RunConfig& c) {
    std::vector<std::string> names = c.psi;
    if (names.empty()) {
        names = {"r", "r^2"};
        if (c.lambda > 0.0) names.push_back("sin");
    }
    std::vector<TestFunction> out;
    for (const auto& s : names) out.push_back(TestFunction::parse(s, c.lambda));
    return out;
}

int run_solve(const RunConfig& c, std::ostream& out) {
    const RadialProblem prob = c.problem();
    const RadialSolution sol = c.bracket ? shoot_bvp(prob, c.bracket->first, c.bracket->second, c.controls)
                                         : integrate_ivp(prob, *c.alpha, prob.radius, c.controls);
    json rep{{"command", "solve"}, {"config", config_json(c)}, {"solution", sol}};
    if (c.out) {
        std::ostringstream csv;
        write_solution_csv(csv, sol);
        write_file(*c.out, csv.str());
        write_file(c.report ? *c.report : *c.out + ".json", dump(rep));
        out << "alpha = " << format_double(sol.alpha) << "  boundary_defect = " << format_double(sol.boundary_defect)
            << "\n";
    } else {
        if (c.report) write_file(*c.report, dump(rep));
        out << dump(rep);
    }
    return 0;
}

int run_identity(const RunConfig& c, std::ostream& out) {
    const RadialProblem prob = c.problem();
    const RadialSolution sol = obtain_solution(c, prob);
    const bool all = c.identity == "all";
    const bool laplacian = prob.p == 2.0;

    std::vector<IdentityReport> reports;
    if (all || c.identity == "general") {
        for (const auto& psi : selected_psi(c)) reports.push_back(identity_residual_general(sol, prob, psi));
    }
    if ((all && laplacian && prob.n == 3.0) || c.identity == "n3") {
        for (const auto& psi : selected_psi(c)) {
            if (all && std::abs(psi.at_origin()) > 0.0) continue;
            reports.push_back(identity_residual_n3(sol, prob, psi));
        }
    }
    if ((all && laplacian) || c.identity == "classical") reports.push_back(identity_residual_classical(sol, prob));
    if ((all && laplacian && prob.n >= 3.0) || c.identity == "peletier_serrin") {
        reports.push_back(identity_residual_peletier_serrin(sol, prob));
    }

    std::string content;
    if (c.format == "csv") {
        std::ostringstream os;
        os << "identity,psi,lhs,rhs,residual,relative_residual\n";
        for (const auto& r : reports) {
            os << r.identity << ",\"" << r.psi << "\"," << format_double(r.lhs) << ',' << format_double(r.rhs) << ','
               << format_double(r.residual) << ',' << format_double(r.relative_residual) << '\n';
        }
        content = os.str();
    } else {
        content = dump(json{{"command", "identity"}, {"config", config_json(c)}, {"solution", sol}, {"reports", reports}});
    }
    emit(c, content, out);
    if (c.out) {
        out << std::left << std::setw(16) << "identity" << std::setw(28) << "psi" << std::setw(24) << "lhs"
            << std::setw(24) << "rhs" << "relative_residual\n";
        for (const auto& r : reports) {
            out << std::left << std::setw(16) << r.identity << std::setw(28) << r.psi << std::setw(24)
                << format_double(r.lhs) << std::setw(24) << format_double(r.rhs) << format_double(r.relative_residual)
                << "\n";
        }
    }
    return 0;
}

int run_certify(const RunConfig& c, std::ostream& out) {
    std::vector<CertificateReport> certs;
    std::vector<SweepReport> sweeps;
    const auto alphas = logspace(c.sweep_alpha_min, c.sweep_alpha_max, c.sweep_points);
    bool all_pass = true;
    for (double p : c.ps) {
        for (double lam : c.lambdas) {
            certs.push_back(certify_nonexistence(lam, p, c.cert_grid));
            all_pass = all_pass && certs.back().pass;
            if (c.sweep) sweeps.push_back(empirical_shooting_sweep(lam, p, alphas, c.controls));
        }
    }

    std::string content;
    if (c.format == "csv") {
        std::ostringstream os;
        os << "lambda,p,verdict,failing_condition,psi1,positivity_min,theta_margin_min";
        if (c.sweep) os << ",sweep_sign_change";
        os << '\n';
        for (std::size_t i = 0; i < certs.size(); ++i) {
            const auto& r = certs[i];
            os << format_double(r.lambda) << ',' << format_double(r.p) << ',' << (r.pass ? "pass" : "fail") << ','
               << r.failing_condition << ',' << format_double(r.psi1) << ',' << format_double(r.positivity_min) << ','
               << format_double(r.theta_margin_min);
            if (c.sweep) os << ',' << (sweeps[i].sign_change_found ? "true" : "false");
            os << '\n';
        }
        content = os.str();
    } else {
        json j{{"command", "certify"}, {"config", config_json(c)}, {"all_pass", all_pass}, {"certificates", certs}};
        if (c.sweep) j["sweeps"] = sweeps;
        content = dump(j);
    }
    emit(c, content, out);
    if (c.out) {
        out << std::left << std::setw(24) << "lambda" << std::setw(8) << "p" << std::setw(8) << "verdict"
            << "failing\n";
        for (const auto& r : certs) {
            out << std::left << std::setw(24) << format_double(r.lambda) << std::setw(8) << r.p << std::setw(8)
                << (r.pass ? "pass" : "fail") << r.failing_condition << "\n";
        }
    }
    return 0;
}

int run_trace(const RunConfig& c, std::ostream& out) {
    const auto amps = logspace(c.a_min, c.a_max, c.points);
    const auto curve = trace_curve(c.q, amps, c.controls, c.threads);
    const auto turning = find_turning_points(curve);
    double min_lambda = curve.front().lambda;
    for (const auto& pt : curve) min_lambda = std::min(min_lambda, pt.lambda);

    std::ostringstream os;
    if (c.format == "csv") {
        write_curve_csv(os, curve);
    } else if (c.format == "gnuplot") {
        write_curve_gnuplot(os, curve);
    } else {
        os << dump(json{{"command", "trace"},
                        {"config", config_json(c)},
                        {"min_lambda", min_lambda},
                        {"turning_points", turning},
                        {"points", curve}});
    }
    emit(c, os.str(), out);
    if (c.out) {
        out << "points = " << curve.size() << "  min lambda = " << format_double(min_lambda) << "\n";
        for (const auto& tp : turning) {
            out << "turning point: a = " << format_double(tp.amplitude_a) << "  lambda = " << format_double(tp.lambda)
                << "\n";
        }
    }
    return 0;
}

}  // namespace

RadialProblem RunConfig::problem() const {
    RadialProblem prob;
    prob.n = n;
    prob.p = p;
    prob.nl = PowerSumNonlinearity(lambda, terms);
    prob.radius = radius;
    return prob;
}

void RunConfig::validate() const {
    const std::string fmt = format.empty() ? default_format(command) : format;
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ValidationError(msg);
    };
    const auto& k = controls;
    require(k.rtol > 0.0 && k.atol > 0.0, "--rtol and --atol must be positive");
    require(k.grid_points >= 3 && k.grid_points % 2 == 1, "--grid-points must be odd and >= 3");
    require(k.bvp_tol > 0.0, "--bvp-tol must be positive");
    require(k.r_max > 0.0, "--r-max must be positive");

    switch (command) {
        case Command::Solve:
        case Command::Identity:
            problem().validate();
            require(fmt == "json" || fmt == "csv", "--format must be json or csv");
            if (command == Command::Identity) {
                require(radius == 1.0, "identity: --radius must be 1");
                require(identity == "all" || identity == "general" || identity == "n3" || identity == "classical" ||
                            identity == "peletier_serrin",
                        "--identity must be one of all|general|n3|classical|peletier_serrin");
                selected_psi(*this);
            }
            if (command == Command::Solve || !solution_csv) {
                require(alpha.has_value() != bracket.has_value(), "give exactly one of --alpha or --bracket");
            }
            if (alpha) require(std::isfinite(*alpha), "--alpha must be finite");
            if (bracket) require(bracket->first < bracket->second, "--bracket needs lo < hi");
            break;
        case Command::Certify:
            require(!lambdas.empty() && !ps.empty(), "certify: --lambda and --p are required");
            for (double l : lambdas) require(l > 0.0 && std::isfinite(l), "certify: every lambda must be > 0");
            for (double v : ps) require(v > 1.0 && std::isfinite(v), "certify: every p must be > 1");
            require(cert_grid >= 1, "--grid-size must be >= 1");
            require(fmt == "json" || fmt == "csv", "--format must be json or csv");
            if (sweep) {
                require(sweep_alpha_min > 0.0 && sweep_alpha_max > sweep_alpha_min && sweep_points >= 2,
                        "sweep: need 0 < --alpha-min < --alpha-max and --sweep-points >= 2");
            }
            break;
        case Command::Trace:
            require(q > 1.0 && std::isfinite(q), "trace: --q must be > 1");
            require(a_min > 0.0 && a_max > a_min, "trace: need 0 < --a-min < --a-max");
            require(points >= 3, "trace: --points must be >= 3");
            require(fmt == "csv" || fmt == "gnuplot" || fmt == "json", "--format must be csv, gnuplot or json");
            break;
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        RunConfig c = config;
        if (c.format.empty()) c.format = default_format(c.command);
        c.validate();
        switch (c.command) {
            case Command::Solve: return run_solve(c, out);
            case Command::Identity: return run_identity(c, out);
            case Command::Certify: return run_certify(c, out);
            case Command::Trace: return run_trace(c, out);
        }
        return 1;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"radlab: radial p-Laplace boundary-value problems, Pohozhaev identities and solution curves"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.format.clear();
    std::vector<std::string> term_text;
    std::string bracket_text;
    auto& k = cfg.controls;

    auto add_problem = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "dimension (>= 2)")->capture_default_str();
        sub->add_option("--p", cfg.p, "p-Laplace exponent (> 1)")->capture_default_str();
        sub->add_option("--lambda", cfg.lambda, "coefficient of the linear term")->capture_default_str();
        sub->add_option("--term", term_text, "power term c,q for c*u|u|^(q-1); repeatable");
        sub->add_option("--alpha", cfg.alpha, "shooting amplitude u(0) for a single integration");
        sub->add_option("--bracket", bracket_text, "amplitude bracket lo,hi for shooting");
    };
    auto add_controls = [&](CLI::App* sub) {
        sub->add_option("--rtol", k.rtol, "integrator relative tolerance")->capture_default_str();
        sub->add_option("--atol", k.atol, "integrator absolute tolerance")->capture_default_str();
        sub->add_option("--grid-points", k.grid_points, "uniform resampling grid size (odd)")->capture_default_str();
        sub->add_option("--bvp-tol", k.bvp_tol, "boundary defect tolerance")->capture_default_str();
        sub->add_option("--bracket-scan", k.bracket_scan, "amplitudes scanned for a sign change")
            ->capture_default_str();
        sub->add_option("--r-max", k.r_max, "largest radius searched for a first zero")->capture_default_str();
    };
    auto add_output = [&](CLI::App* sub, const std::string& formats) {
        sub->add_option("--out", cfg.out, "output file (stdout when omitted)");
        sub->add_option("--format", cfg.format, formats);
    };

    auto* solve = app.add_subcommand("solve", "integrate or shoot a radial solution");
    add_problem(solve);
    add_controls(solve);
    solve->add_option("--radius", cfg.radius, "ball radius")->capture_default_str();
    solve->add_option("--out", cfg.out, "CSV file for r,u,uprime samples");
    solve->add_option("--report", cfg.report, "JSON report file (default <out>.json)");

    auto* identity = app.add_subcommand("identity", "evaluate Pohozhaev identity residuals");
    add_problem(identity);
    add_controls(identity);
    identity->add_option("--solution", cfg.solution_csv, "solution CSV written by 'solve'");
    identity->add_option("--psi", cfg.psi, "r | r^K | sin | sin:OMEGA | rlogr | poly:C0,C1,.. | zero; repeatable");
    identity->add_option("--identity", cfg.identity, "all|general|n3|classical|peletier_serrin")
        ->capture_default_str();
    add_output(identity, "json|csv");

    auto* certify = app.add_subcommand("certify", "non-existence certificate over (lambda, p) grids");
    certify->add_option("--lambda", cfg.lambdas, "lambda values (comma separated or repeated)")->delimiter(',');
    certify->add_option("--p", cfg.ps, "exponents p (comma separated or repeated)")->delimiter(',');
    certify->add_option("--grid-size", cfg.cert_grid, "grid points on (0,1]")->capture_default_str();
    certify->add_flag("--sweep", cfg.sweep, "also shoot u(1; alpha) over a logarithmic alpha sweep");
    certify->add_option("--alpha-min", cfg.sweep_alpha_min)->capture_default_str();
    certify->add_option("--alpha-max", cfg.sweep_alpha_max)->capture_default_str();
    certify->add_option("--sweep-points", cfg.sweep_points)->capture_default_str();
    add_controls(certify);
    add_output(certify, "json|csv");

    auto* trace = app.add_subcommand("trace", "shoot-and-scale solution curve in the (lambda, u(0)) plane");
    trace->add_option("--q", cfg.q, "power of u|u|^(q-1)")->capture_default_str();
    trace->add_option("--a-min", cfg.a_min, "smallest scaled amplitude")->capture_default_str();
    trace->add_option("--a-max", cfg.a_max, "largest scaled amplitude")->capture_default_str();
    trace->add_option("--points", cfg.points, "number of logarithmically spaced amplitudes")->capture_default_str();
    trace->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->capture_default_str();
    add_controls(trace);
    add_output(trace, "csv|gnuplot|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        for (const auto& t : term_text) {
            const auto [c, q] = parse_pair(t, "--term");
            cfg.terms.push_back({c, q});
        }
        if (!bracket_text.empty()) cfg.bracket = parse_pair(bracket_text, "--bracket");
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    if (solve->parsed()) cfg.command = Command::Solve;
    if (identity->parsed()) cfg.command = Command::Identity;
    if (certify->parsed()) cfg.command = Command::Certify;
    if (trace->parsed()) cfg.command = Command::Trace;
    return run(cfg, out, err);
}

}  // namespace radlab::cli
