#include "radlab/identity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "radlab/errors.hpp"
#include "radlab/quadrature.hpp"

namespace radlab {

namespace {

void require_unit_ball(const RadialSolution& sol) {
    if (sol.grid.size() < 3 || sol.grid.size() != sol.u.size() || sol.grid.size() != sol.uprime.size()) {
        throw BadGrid("identity: solution arrays are inconsistent or too short");
    }
    if (std::abs(sol.grid.back() - 1.0) > 1e-12 || sol.grid.front() != 0.0) {
        std::ostringstream os;
        os << "identity: solution must live on [0, 1], got [" << sol.grid.front() << ", " << sol.grid.back() << "]";
        throw DomainMismatch(os.str());
    }
}

void require_laplacian(const RadialProblem& prob, const char* what) {
    if (prob.p != 2.0) {
        throw PreconditionViolation(std::string(what) + ": requires p = 2");
    }
}

IdentityReport finish(std::string identity, std::string psi, const RadialSolution& sol,
                      const std::vector<double>& integrand, const std::vector<double>& magnitude, double scale,
                      double rhs) {
    IdentityReport rep;
    rep.identity = std::move(identity);
    rep.psi = std::move(psi);
    rep.lhs = scale * simpson(sol.grid, integrand);
    rep.rhs = rhs;
    rep.residual = rep.lhs - rep.rhs;
    rep.term_scale = std::abs(scale) * simpson(sol.grid, magnitude);
    rep.relative_residual =
        std::abs(rep.residual) / std::max({std::abs(rep.lhs), std::abs(rep.rhs), rep.term_scale, 1e-300});
    rep.quadrature_points = integrand.size();
    if ((integrand.size() - 1) % 4 == 0) {
        const double h = (sol.grid.back() - sol.grid.front()) / static_cast<double>(sol.grid.size() - 1);
        rep.quadrature_error_estimate = scale * simpson_error_estimate(integrand, h);
    }
    return rep;
}

}  // namespace

IdentityReport identity_residual_general(const RadialSolution& sol, const RadialProblem& prob,
                                         const TestFunction& psi) {
    prob.validate();
    require_unit_ball(sol);
    const double n = prob.n;
    const double p = prob.p;
    const auto& nl = prob.nl;

    std::vector<double> integrand(sol.size());
    std::vector<double> magnitude(sol.size());
    for (std::size_t i = 0; i < sol.size(); ++i) {
        const double r = sol.grid[i];
        const double u = sol.u[i];
        const double uf = u * nl.f(u);
        // (psi r^(n-1))' = psi' r^(n-1) + (n-1) psi r^(n-2)
        const double dpsi_w = psi.weighted(1, r, n - 1.0);
        const double d_psi_rn1 = dpsi_w + (n - 1.0) * psi.weighted(0, r, n - 2.0);
        double l_term;
        if (r > 0.0) {
            l_term = phi_p(sol.uprime[i], p) * u * L_operator(psi, r, n, p) * std::pow(r, n - 3.0);
        } else {
            // phi_p(u') ~ -f(alpha) r / n and L[psi](0) = (n-1) psi(0); the product with
            // r^(n-3) survives only for n = 2.
            l_term = (n == 2.0) ? -nl.f(u) / n * u * (n - 1.0) * psi.at_origin() : 0.0;
        }
        const double t1 = (p * nl.F(u) - uf) * d_psi_rn1;
        const double t2 = p * dpsi_w * uf;
        integrand[i] = t1 + t2 - l_term;
        magnitude[i] = std::abs(t1) + std::abs(t2) + std::abs(l_term);
    }
    const double du1 = sol.uprime.back();
    const double rhs = (p - 1.0) * phi_p(du1, p) * psi.value(1.0) * du1;
    return finish("general", psi.name(), sol, integrand, magnitude, 1.0, rhs);
}

IdentityReport identity_residual_n3(const RadialSolution& sol, const RadialProblem& prob, const TestFunction& psi) {
    prob.validate();
    if (prob.n != 3.0 || prob.p != 2.0) {
        throw PreconditionViolation("identity_residual_n3: requires n = 3 and p = 2");
    }
    if (std::abs(psi.at_origin()) > 1e-14) {
        throw PreconditionViolation("identity_residual_n3: requires psi(0) = 0");
    }
    require_unit_ball(sol);
    const auto& nl = prob.nl;

    std::vector<double> integrand(sol.size());
    std::vector<double> magnitude(sol.size());
    for (std::size_t i = 0; i < sol.size(); ++i) {
        const double r = sol.grid[i];
        const double u = sol.u[i];
        const double dpsi_r2 = psi.weighted(1, r, 2.0);
        const double d_psi_r2 = dpsi_r2 + 2.0 * psi.weighted(0, r, 1.0);
        const double t1 = 2.0 * d_psi_r2 * nl.F(u);
        const double t2 = (2.0 * dpsi_r2 - d_psi_r2) * u * nl.f(u);
        const double t3 = 0.5 * u * u * psi.weighted(3, r, 2.0);
        integrand[i] = t1 + t2 + t3;
        magnitude[i] = std::abs(t1) + std::abs(t2) + std::abs(t3);
    }
    const double du1 = sol.uprime.back();
    return finish("n3", psi.name(), sol, integrand, magnitude, 1.0, psi.value(1.0) * du1 * du1);
}

IdentityReport identity_residual_classical(const RadialSolution& sol, const RadialProblem& prob) {
    prob.validate();
    require_laplacian(prob, "identity_residual_classical");
    require_unit_ball(sol);
    const double n = prob.n;
    std::vector<double> integrand(sol.size());
    std::vector<double> magnitude(sol.size());
    for (std::size_t i = 0; i < sol.size(); ++i) {
        const double r = sol.grid[i];
        const double u = sol.u[i];
        const double rn1 = r > 0.0 ? std::pow(r, n - 1.0) : 0.0;
        const double t1 = 2.0 * n * prob.nl.F(u) * rn1;
        const double t2 = (2.0 - n) * u * prob.nl.f(u) * rn1;
        integrand[i] = t1 + t2;
        magnitude[i] = std::abs(t1) + std::abs(t2);
    }
    const double du1 = sol.uprime.back();
    return finish("classical", "r", sol, integrand, magnitude, 1.0, du1 * du1);
}

IdentityReport identity_residual_peletier_serrin(const RadialSolution& sol, const RadialProblem& prob) {
    prob.validate();
    require_laplacian(prob, "identity_residual_peletier_serrin");
    if (prob.n < 3.0) throw PreconditionViolation("identity_residual_peletier_serrin: requires n >= 3");
    require_unit_ball(sol);
    const double n = prob.n;
    std::vector<double> integrand(sol.size());
    for (std::size_t i = 0; i < sol.size(); ++i) {
        const double r = sol.grid[i];
        integrand[i] = r > 0.0 ? prob.nl.F(sol.u[i]) * std::pow(r, 2.0 * n - 3.0) : 0.0;
    }
    std::vector<double> magnitude(integrand.size());
    std::transform(integrand.begin(), integrand.end(), magnitude.begin(), [](double x) { return std::abs(x); });
    const double du1 = sol.uprime.back();
    std::ostringstream psi;
    psi << "r^" << (n - 1.0);
    return finish("peletier_serrin", psi.str(), sol, integrand, magnitude, 4.0 * n - 4.0, du1 * du1);
}

double v_equation_residual(const RadialSolution& sol, const RadialProblem& prob, const TestFunction& psi, double r,
                           double h, const VEquationOptions& opt) {
    prob.validate();
    const double radius = sol.grid.empty() ? prob.radius : sol.grid.back();
    if (!(h > 0.0) || !(r - h > 0.0) || !(r + h < radius)) {
        throw PreconditionViolation("v_equation_residual: need 0 < r - h and r + h < radius");
    }
    const double n = prob.n;
    const double p = prob.p;
    const std::array<double, 5> x{r - h, r - 0.5 * h, r, r + 0.5 * h, r + h};
    const std::vector<RadialState> s = sample_exact(prob, sol.alpha, x, opt.ctl);

    if (p != 2.0) {
        for (const auto& st : s) {
            if (std::abs(st.uprime) < opt.critical_exclusion) {
                std::ostringstream os;
                os << "v_equation_residual: |u'(" << st.r << ")| = " << std::abs(st.uprime)
                   << " is inside the critical-point exclusion for p = " << p;
                throw DerivativeSingularity(os.str());
            }
        }
    }

    std::array<double, 5> v{};
    for (std::size_t i = 0; i < 5; ++i) v[i] = psi.value(x[i]) * s[i].uprime;

    const double flux_hi = phi_p_prime(s[3].uprime, p) * (v[4] - v[2]) / h;
    const double flux_lo = phi_p_prime(s[1].uprime, p) * (v[2] - v[0]) / h;
    const double dflux = (flux_hi - flux_lo) / h;
    const double drift = (n - 1.0) / r * phi_p_prime(s[2].uprime, p) * (v[4] - v[0]) / (2.0 * h);
    const double u = s[2].u;
    const double lhs = dflux + drift + prob.nl.fprime(u) * v[2];
    const double rhs = -p * psi.d1(r) * prob.nl.f(u) + phi_p(s[2].uprime, p) * L_operator(psi, r, n, p) / (r * r);
    return lhs - rhs;
}

}  // namespace radlab
