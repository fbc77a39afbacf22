#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "radlab/radial_solver.hpp"

namespace radlab {

/// gamma = (p + 3) / (2 (p - 1)); lies in (0, 1] exactly when p >= 5.
double gamma_of_p(double p);

/// sin(theta) - gamma * theta * cos(theta).
double theta_inequality_margin(double gamma, double theta) noexcept;

struct CertificateTolerances {
    /// |psi(0)| and the amount by which psi(1) may dip below zero through rounding.
    double psi_tol = 1e-12;
    /// Bound on max |psi''' + 4 lambda psi'| relative to max(1, omega^3).
    double ode_tol = 1e-10;
};

/**
 * Non-existence certificate for u'' + (2/r) u' + lambda u + u|u|^(p-1) = 0 on the
 * unit ball with psi = sin(omega r), omega = sqrt(4 lambda). The conditions are
 *
 *   psi(0) = 0,  psi(1) >= 0,  psi''' + 4 lambda psi' = 0,
 *   2(p-1) psi r - (p+3) psi' r^2 > 0  on (0, 1].
 */
struct CertificateReport {
    double lambda = 0.0;
    double p = 0.0;
    double omega = 0.0;
    double gamma = 0.0;
    double psi0 = 0.0;
    double psi1 = 0.0;
    double ode_residual_max = 0.0;
    double positivity_min = 0.0;
    double theta_margin_min = 0.0;
    std::size_t grid_size = 0;
    bool pass = false;
    /// Name of the first failing condition ("psi0", "psi1", "ode", "positivity"); empty on pass.
    std::string failing_condition;
    /// psi(1) is zero to rounding: the closed endpoint lambda = pi^2/4.
    bool endpoint = false;
};

CertificateReport certify_nonexistence(double lambda, double p, std::size_t grid_size = 1000,
                                       const CertificateTolerances& tol = {});

struct SweepEntry {
    double alpha = 0.0;
    double u_at_radius = 0.0;
    int sign = 0;
    std::string error;  // integrator failure for this amplitude, if any
};

struct SweepReport {
    double lambda = 0.0;
    double p = 0.0;
    std::vector<SweepEntry> entries;
    bool sign_change_found = false;
    /// First pair of consecutive amplitudes whose u(1) signs differ.
    std::optional<std::pair<double, double>> bracket;
};

/// Shoot u(1; alpha) for f(u) = lambda u + u|u|^(p-1), n = 3, at each amplitude.
/// alpha = 0 is skipped as trivial; integrator errors are recorded per entry.
SweepReport empirical_shooting_sweep(double lambda, double p, std::span<const double> alphas,
                                     const SolverControls& ctl = {});

/// `count` logarithmically spaced values from lo to hi inclusive.
std::vector<double> logspace(double lo, double hi, std::size_t count);

}  // namespace radlab
