#include "radlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "radlab/errors.hpp"

namespace radlab {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

// nlohmann serializes non-finite doubles as null; keep that explicit.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

void to_json(json& j, const PowerSumNonlinearity& nl) {
    json terms = json::array();
    for (const auto& t : nl.terms()) terms.push_back({t.c, t.q});
    j = json{{"lambda", nl.lambda()}, {"terms", terms}};
}

void from_json(const json& j, PowerSumNonlinearity& nl) {
    std::vector<PowerTerm> terms;
    for (const auto& t : j.value("terms", json::array())) {
        if (!t.is_array() || t.size() != 2) {
            throw PreconditionViolation("nonlinearity json: each term must be [c, q]");
        }
        terms.push_back({t[0].get<double>(), t[1].get<double>()});
    }
    nl = PowerSumNonlinearity(j.at("lambda").get<double>(), std::move(terms));
}

void to_json(json& j, const SolverControls& c) {
    j = json{{"rtol", c.rtol},
             {"atol", c.atol},
             {"series_window", c.series_window},
             {"max_step", c.max_step},
             {"max_steps", c.max_steps},
             {"grid_points", c.grid_points},
             {"bvp_tol", c.bvp_tol},
             {"alpha_tol", c.alpha_tol},
             {"bracket_scan", c.bracket_scan},
             {"event_tol", c.event_tol},
             {"r_max", c.r_max}};
}

void from_json(const json& j, SolverControls& c) {
    const SolverControls d;
    c.rtol = j.value("rtol", d.rtol);
    c.atol = j.value("atol", d.atol);
    c.series_window = j.value("series_window", d.series_window);
    c.max_step = j.value("max_step", d.max_step);
    c.max_steps = j.value("max_steps", d.max_steps);
    c.grid_points = j.value("grid_points", d.grid_points);
    c.bvp_tol = j.value("bvp_tol", d.bvp_tol);
    c.alpha_tol = j.value("alpha_tol", d.alpha_tol);
    c.bracket_scan = j.value("bracket_scan", d.bracket_scan);
    c.event_tol = j.value("event_tol", d.event_tol);
    c.r_max = j.value("r_max", d.r_max);
}

void to_json(json& j, const RadialProblem& prob) {
    j = json{{"n", prob.n}, {"p", prob.p}, {"nonlinearity", prob.nl}, {"radius", prob.radius}};
}

void from_json(const json& j, RadialProblem& prob) {
    prob.n = j.at("n").get<double>();
    prob.p = j.at("p").get<double>();
    prob.nl = j.at("nonlinearity").get<PowerSumNonlinearity>();
    prob.radius = j.value("radius", 1.0);
}

void to_json(json& j, const RadialSolution& sol) {
    j = json{{"alpha", sol.alpha},
             {"boundary_defect", number(sol.boundary_defect)},
             {"radius", sol.radius},
             {"is_bvp", sol.is_bvp},
             {"grid_points", sol.grid.size()},
             {"controls", sol.controls}};
    if (!sol.uprime.empty()) j["uprime_at_radius"] = number(sol.uprime.back());
}

void to_json(json& j, const IdentityReport& rep) {
    j = json{{"identity", rep.identity},
             {"psi", rep.psi},
             {"lhs", number(rep.lhs)},
             {"rhs", number(rep.rhs)},
             {"residual", number(rep.residual)},
             {"relative_residual", number(rep.relative_residual)},
             {"term_scale", number(rep.term_scale)},
             {"quadrature_points", rep.quadrature_points},
             {"quadrature_error_estimate",
              rep.quadrature_error_estimate ? number(*rep.quadrature_error_estimate) : json(nullptr)}};
}

void to_json(json& j, const CertificateReport& rep) {
    j = json{{"lambda", rep.lambda},
             {"p", rep.p},
             {"omega", rep.omega},
             {"gamma", rep.gamma},
             {"psi0", rep.psi0},
             {"psi1", rep.psi1},
             {"ode_residual_max", number(rep.ode_residual_max)},
             {"positivity_min", number(rep.positivity_min)},
             {"theta_margin_min", number(rep.theta_margin_min)},
             {"grid_size", rep.grid_size},
             {"verdict", rep.pass ? "pass" : "fail"},
             {"failing_condition", rep.failing_condition.empty() ? json(nullptr) : json(rep.failing_condition)},
             {"endpoint", rep.endpoint}};
}

void to_json(json& j, const SweepReport& rep) {
    json entries = json::array();
    for (const auto& e : rep.entries) {
        json je{{"alpha", e.alpha}, {"u_at_radius", number(e.u_at_radius)}, {"sign", e.sign}};
        if (!e.error.empty()) je["error"] = e.error;
        entries.push_back(std::move(je));
    }
    j = json{{"lambda", rep.lambda},
             {"p", rep.p},
             {"sign_change_found", rep.sign_change_found},
             {"bracket", rep.bracket ? json{rep.bracket->first, rep.bracket->second} : json(nullptr)},
             {"entries", std::move(entries)}};
}

void to_json(json& j, const CurvePoint& pt) {
    j = json{{"a", pt.amplitude_a}, {"rho0", pt.rho0}, {"lambda", pt.lambda}, {"u0", pt.u0}};
}

void to_json(json& j, const TurningPoint& tp) {
    j = json{{"a", tp.amplitude_a}, {"lambda", tp.lambda}};
}

void write_solution_csv(std::ostream& os, const RadialSolution& sol) {
    os << "r,u,uprime\n";
    for (std::size_t i = 0; i < sol.size(); ++i) {
        os << format_double(sol.grid[i]) << ',' << format_double(sol.u[i]) << ',' << format_double(sol.uprime[i])
           << '\n';
    }
}

RadialSolution read_solution_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw BadGrid("solution csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "r,u,uprime") throw BadGrid("solution csv: expected header 'r,u,uprime', got '" + line + "'");

    RadialSolution sol;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        std::istringstream ls(line);
        std::string cell;
        double vals[3];
        for (int k = 0; k < 3; ++k) {
            if (!std::getline(ls, cell, ',')) {
                throw BadGrid("solution csv: row " + std::to_string(row) + " has fewer than 3 columns");
            }
            try {
                std::size_t used = 0;
                vals[k] = std::stod(cell, &used);
            } catch (const std::exception&) {
                throw BadGrid("solution csv: bad number '" + cell + "' at row " + std::to_string(row));
            }
        }
        sol.grid.push_back(vals[0]);
        sol.u.push_back(vals[1]);
        sol.uprime.push_back(vals[2]);
    }
    if (sol.grid.empty()) throw BadGrid("solution csv: no data rows");
    sol.alpha = sol.u.front();
    sol.radius = sol.grid.back();
    sol.boundary_defect = std::abs(sol.u.back());
    return sol;
}

void write_curve_csv(std::ostream& os, std::span<const CurvePoint> curve) {
    os << "a,rho0,lambda,u0\n";
    for (const auto& pt : curve) {
        os << format_double(pt.amplitude_a) << ',' << format_double(pt.rho0) << ',' << format_double(pt.lambda) << ','
           << format_double(pt.u0) << '\n';
    }
}

void write_curve_gnuplot(std::ostream& os, std::span<const CurvePoint> curve) {
    os << "# lambda u0\n";
    for (const auto& pt : curve) {
        os << format_double(pt.lambda) << ' ' << format_double(pt.u0) << '\n';
    }
}

}  // namespace radlab
