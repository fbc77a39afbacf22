#include "radlab/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radlab/errors.hpp"
#include "radlab/test_function.hpp"

namespace radlab {

double gamma_of_p(double p) {
    if (!(p > 1.0)) throw PreconditionViolation("gamma_of_p: p must be > 1");
    return (p + 3.0) / (2.0 * (p - 1.0));
}

double theta_inequality_margin(double gamma, double theta) noexcept {
    return std::sin(theta) - gamma * theta * std::cos(theta);
}

CertificateReport certify_nonexistence(double lambda, double p, std::size_t grid_size,
                                       const CertificateTolerances& tol) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw PreconditionViolation("certify_nonexistence: lambda must be positive");
    }
    if (!(p > 1.0) || !std::isfinite(p)) throw PreconditionViolation("certify_nonexistence: p must be > 1");
    if (grid_size < 1) throw PreconditionViolation("certify_nonexistence: grid_size must be >= 1");

    CertificateReport rep;
    rep.lambda = lambda;
    rep.p = p;
    rep.omega = std::sqrt(4.0 * lambda);
    rep.gamma = gamma_of_p(p);
    rep.grid_size = grid_size;

    const TestFunction psi = TestFunction::sine(rep.omega);
    rep.psi0 = psi.value(0.0);
    rep.psi1 = psi.value(1.0);
    rep.endpoint = std::abs(rep.psi1) <= tol.psi_tol;

    rep.ode_residual_max = 0.0;
    rep.positivity_min = std::numeric_limits<double>::infinity();
    rep.theta_margin_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= grid_size; ++i) {
        const double r = static_cast<double>(i) / static_cast<double>(grid_size);
        const double d1 = psi.d1(r);
        rep.ode_residual_max = std::max(rep.ode_residual_max, std::abs(psi.d3(r) + 4.0 * lambda * d1));
        rep.positivity_min = std::min(rep.positivity_min, 2.0 * (p - 1.0) * psi.value(r) * r - (p + 3.0) * d1 * r * r);
        rep.theta_margin_min = std::min(rep.theta_margin_min, theta_inequality_margin(rep.gamma, rep.omega * r));
    }

    const double ode_bound = tol.ode_tol * std::max(1.0, rep.omega * rep.omega * rep.omega);
    if (!(std::abs(rep.psi0) <= tol.psi_tol)) {
        rep.failing_condition = "psi0";
    } else if (!(rep.psi1 >= -tol.psi_tol)) {
        rep.failing_condition = "psi1";
    } else if (!(rep.ode_residual_max <= ode_bound)) {
        rep.failing_condition = "ode";
    } else if (!(rep.positivity_min > 0.0)) {
        rep.failing_condition = "positivity";
    }
    rep.pass = rep.failing_condition.empty();
    return rep;
}

SweepReport empirical_shooting_sweep(double lambda, double p, std::span<const double> alphas,
                                     const SolverControls& ctl) {
    if (!(p > 1.0)) throw PreconditionViolation("empirical_shooting_sweep: p must be > 1");
    RadialProblem prob;
    prob.n = 3.0;
    prob.p = 2.0;
    prob.nl = brezis_nirenberg(lambda, p);

    SweepReport rep;
    rep.lambda = lambda;
    rep.p = p;
    const SweepEntry* last_signed = nullptr;
    rep.entries.reserve(alphas.size());
    for (double a : alphas) {
        if (a == 0.0) continue;
        SweepEntry e;
        e.alpha = a;
        try {
            e.u_at_radius = shooting_map(prob, a, ctl);
            e.sign = (e.u_at_radius > 0.0) - (e.u_at_radius < 0.0);
        } catch (const NumericalError& err) {
            e.error = err.what();
        }
        rep.entries.push_back(std::move(e));
    }
    for (const auto& e : rep.entries) {
        if (!e.error.empty()) continue;
        if (e.sign == 0) {
            rep.sign_change_found = true;
            if (!rep.bracket) rep.bracket = std::pair{e.alpha, e.alpha};
        } else if (last_signed && last_signed->sign != e.sign) {
            rep.sign_change_found = true;
            if (!rep.bracket) rep.bracket = std::pair{last_signed->alpha, e.alpha};
        }
        if (e.sign != 0) last_signed = &e;
    }
    return rep;
}

std::vector<double> logspace(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0) || !(hi > 0.0)) throw PreconditionViolation("logspace: bounds must be positive");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

}  // namespace radlab
