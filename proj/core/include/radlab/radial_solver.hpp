#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "radlab/nonlinearity.hpp"

namespace radlab {

/// phi_p(t) = t|t|^(p-2), with phi_p(0) = 0.
double phi_p(double t, double p) noexcept;
/// Inverse of phi_p: sign(s)|s|^(1/(p-1)).
double phi_p_inv(double s, double p) noexcept;
/// phi_p'(t) = (p-1)|t|^(p-2). Infinite at t = 0 when p < 2.
double phi_p_prime(double t, double p) noexcept;

/// Radial p-Laplace problem
///   (phi_p(u'))' + (n-1)/r phi_p(u') + f(u) = 0,  u'(0) = 0,  u(radius) = 0.
struct RadialProblem {
    double n = 3.0;
    double p = 2.0;
    PowerSumNonlinearity nl;
    double radius = 1.0;

    /// Throws PreconditionViolation unless p > 1, n >= 2 and radius > 0.
    void validate() const;
};

struct SolverControls {
    double rtol = 1e-10;
    double atol = 1e-12;
    /// Series window r0 as a fraction of the problem radius. Shrunk automatically
    /// when the expansion would move u by more than 1e-6 relative (large amplitudes).
    double series_window = 1e-4;
    /// Largest accepted step, bounds the cubic Hermite dense-output error.
    double max_step = 1.0 / 256.0;
    std::size_t max_steps = 5'000'000;
    /// Uniform resampling grid size (odd, for Simpson).
    std::size_t grid_points = 2049;
    double bvp_tol = 1e-11;
    /// Relative tolerance on the shooting amplitude.
    double alpha_tol = 1e-12;
    /// Number of amplitudes scanned on [alpha_lo, alpha_hi] to locate a sign change.
    std::size_t bracket_scan = 96;
    double event_tol = 1e-12;
    double r_max = 50.0;

    /// Same controls with rtol and atol scaled by `factor`.
    SolverControls tightened(double factor) const;
};

struct RadialSolution {
    std::vector<double> grid;
    std::vector<double> u;
    std::vector<double> uprime;
    double alpha = 0.0;
    double boundary_defect = 0.0;
    double radius = 1.0;
    bool is_bvp = false;
    SolverControls controls;

    std::size_t size() const noexcept { return grid.size(); }
};

/// Pointwise state of the first-order system u' = phi_p^{-1}(w / r^(n-1)), w' = -r^(n-1) f(u).
struct RadialState {
    double r = 0.0;
    double u = 0.0;
    double uprime = 0.0;
    double w = 0.0;
};

/**
 * Dense trajectory produced by the adaptive integrator.
 *
 * Accepted nodes carry (u, u', w, w'); between nodes u and w are evaluated by
 * cubic Hermite interpolation and u' is recovered from w. Below the series
 * window the leading-order expansion at the origin is used.
 */
class Trajectory {
public:
    struct Node {
        double r, u, du, w, dw;
    };

    Trajectory(const RadialProblem& prob, double alpha, double r0);

    double alpha() const noexcept { return alpha_; }
    double r_begin() const noexcept { return 0.0; }
    double r_end() const noexcept { return nodes_.back().r; }
    double series_window() const noexcept { return r0_; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }

    RadialState at(double r) const;
    double u(double r) const { return at(r).u; }

    /// Resample onto `points` uniformly spaced abscissae on [0, r_end()].
    RadialSolution resample(std::size_t points) const;

    // integrator side
    void push(const Node& node) { nodes_.push_back(node); }
    RadialState series(double r) const;

private:
    double n_, p_, alpha_, f_alpha_, r0_;
    std::vector<Node> nodes_;
};

/// Integrate the initial-value problem u(0) = alpha, u'(0) = 0 on [0, r_end].
Trajectory integrate_trajectory(const RadialProblem& prob, double alpha, double r_end,
                                const SolverControls& ctl = {});

/// integrate_trajectory resampled onto ctl.grid_points uniform points.
/// boundary_defect is |u(r_end)|.
RadialSolution integrate_ivp(const RadialProblem& prob, double alpha, double r_end,
                             const SolverControls& ctl = {});

/// States at the given increasing abscissae, each landed on exactly by the stepper
/// (no interpolation). Used where finite differences need clean samples.
std::vector<RadialState> sample_exact(const RadialProblem& prob, double alpha,
                                      std::span<const double> points, const SolverControls& ctl = {});

/// u(prob.radius; alpha).
double shooting_map(const RadialProblem& prob, double alpha, const SolverControls& ctl = {});

/// Solve the two-point problem by scanning [alpha_lo, alpha_hi] for the first sign
/// change of the shooting map and refining it by safeguarded secant.
RadialSolution shoot_bvp(const RadialProblem& prob, double alpha_lo, double alpha_hi,
                         const SolverControls& ctl = {});

struct ZeroCrossing {
    double rho0 = 0.0;
    double slope_at_zero = 0.0;
};

/// First sign change of u(r; alpha), located by bisection on the dense output.
ZeroCrossing first_zero(const RadialProblem& prob, double alpha, const SolverControls& ctl = {});

}  // namespace radlab
