#pragma once

#include <span>
#include <vector>

#include "radlab/radial_solver.hpp"

namespace radlab {

/// One point of the solution curve of u'' + (2/r) u' + lambda u + u|u|^(q-1) = 0
/// on the unit ball, parametrized by the scaled amplitude a = z(0).
struct CurvePoint {
    double amplitude_a = 0.0;
    double rho0 = 0.0;
    double lambda = 0.0;  // rho0^2
    double u0 = 0.0;      // lambda^(1/(q-1)) * a
};

struct TurningPoint {
    double amplitude_a = 0.0;
    double lambda = 0.0;
};

/// beta = 1/(q-1): u = lambda^beta z removes lambda from the power term.
double scaling_exponent(double q);

/// The lambda-free profile problem z'' + (2/rho) z' + z + z|z|^(q-1) = 0.
RadialProblem profile_problem(double q);

CurvePoint trace_point(double q, double amplitude, const SolverControls& ctl = {});

/// Shoot-and-scale over the amplitudes. Points are independent and are computed
/// on up to `threads` workers (0 = hardware concurrency); output keeps input order.
std::vector<CurvePoint> trace_curve(double q, std::span<const double> amplitudes, const SolverControls& ctl = {},
                                    unsigned threads = 0);

/// Interior local extrema of lambda(a), refined by a parabola in log a.
std::vector<TurningPoint> find_turning_points(std::span<const CurvePoint> curve);

/// The unit-ball solution u(r) = lambda^beta z(rho0 r) behind a curve point,
/// resampled onto ctl.grid_points.
RadialSolution rescale_to_unit_ball(const CurvePoint& point, double q, const SolverControls& ctl = {});

}  // namespace radlab
