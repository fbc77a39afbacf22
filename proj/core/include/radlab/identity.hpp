#pragma once

#include <optional>
#include <string>

#include "radlab/radial_solver.hpp"
#include "radlab/test_function.hpp"

namespace radlab {

struct IdentityReport {
    std::string identity;  // "general", "n3", "classical", "peletier_serrin"
    std::string psi;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;           // lhs - rhs
    /// |residual| / max(|lhs|, |rhs|, term_scale, 1e-300)
    double relative_residual = 0.0;
    /// Integral of the summed absolute values of the integrand's terms: the size of
    /// what is being balanced. Keeps the relative residual meaningful when both
    /// sides vanish (psi(1) = 0) or the terms cancel pointwise.
    double term_scale = 0.0;
    std::size_t quadrature_points = 0;
    /// (S_h - S_2h)/15 on the same samples; absent unless the grid has 4k+1 points.
    std::optional<double> quadrature_error_estimate;
};

/**
 * Generalized Pohozhaev identity for radial p-Laplace solutions on the unit ball:
 *
 *   int_0^1 [ (pF(u) - u f(u)) (psi r^(n-1))' + p psi' u f(u) r^(n-1)
 *             - phi_p(u') u L[psi] r^(n-3) ] dr  =  (p-1) phi_p(u'(1)) psi(1) u'(1)
 *
 * evaluated by Simpson's rule on the solution's uniform grid. The right side
 * uses the last grid sample of u'. Throws DomainMismatch unless the solution
 * lives on [0, 1].
 */
IdentityReport identity_residual_general(const RadialSolution& sol, const RadialProblem& prob,
                                         const TestFunction& psi);

/// n = 3, p = 2 form with the L[psi] term integrated by parts into u^2 psi''' r^2 / 2.
/// Requires psi(0) = 0.
IdentityReport identity_residual_n3(const RadialSolution& sol, const RadialProblem& prob,
                                    const TestFunction& psi);

/// psi = r, p = 2: int [2nF(u) + (2-n) u f(u)] r^(n-1) dr = u'(1)^2.
IdentityReport identity_residual_classical(const RadialSolution& sol, const RadialProblem& prob);

/// psi = r^(n-1), p = 2, n >= 3: (4n-4) int F(u) r^(2n-3) dr = u'(1)^2.
IdentityReport identity_residual_peletier_serrin(const RadialSolution& sol, const RadialProblem& prob);

struct VEquationOptions {
    /// Stencils touching |u'| below this are rejected when p != 2.
    double critical_exclusion = 1e-6;
    SolverControls ctl = [] {
        SolverControls c;
        c.rtol = 1e-13;
        c.atol = 1e-15;
        return c;
    }();
};

/**
 * Central-difference residual at r of the equation satisfied by v = psi u':
 *
 *   (phi_p'(u') v')' + (n-1)/r phi_p'(u') v' + f'(u) v + p psi' f(u) - phi_p(u') L[psi] / r^2
 *
 * The five stencil points r - h, r - h/2, r, r + h/2, r + h are obtained by
 * re-integrating from sol.alpha and landing on each abscissa. The residual is
 * O(h^2) as h -> 0.
 */
double v_equation_residual(const RadialSolution& sol, const RadialProblem& prob, const TestFunction& psi, double r,
                           double h, const VEquationOptions& opt = {});

}  // namespace radlab
