#include "radlab/curve.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "radlab/errors.hpp"

namespace radlab {

namespace {
constexpr double kTurningNoise = 1e-8;
}  // namespace

double scaling_exponent(double q) {
    if (!(q > 1.0)) throw PreconditionViolation("scaling_exponent: q must be > 1");
    return 1.0 / (q - 1.0);
}

RadialProblem profile_problem(double q) {
    RadialProblem prob;
    prob.n = 3.0;
    prob.p = 2.0;
    prob.nl = PowerSumNonlinearity(1.0, {PowerTerm{1.0, q}});
    return prob;
}

CurvePoint trace_point(double q, double amplitude, const SolverControls& ctl) {
    const double beta = scaling_exponent(q);
    if (!(amplitude > 0.0)) throw PreconditionViolation("trace_point: amplitude must be positive");
    const ZeroCrossing zc = first_zero(profile_problem(q), amplitude, ctl);
    CurvePoint pt;
    pt.amplitude_a = amplitude;
    pt.rho0 = zc.rho0;
    pt.lambda = zc.rho0 * zc.rho0;
    pt.u0 = std::pow(pt.lambda, beta) * amplitude;
    return pt;
}

std::vector<CurvePoint> trace_curve(double q, std::span<const double> amplitudes, const SolverControls& ctl,
                                    unsigned threads) {
    scaling_exponent(q);
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        if (!(amplitudes[i] > 0.0) || (i > 0 && !(amplitudes[i] > amplitudes[i - 1]))) {
            throw PreconditionViolation("trace_curve: amplitudes must be positive and increasing");
        }
    }
    std::vector<CurvePoint> out(amplitudes.size());
    std::vector<std::exception_ptr> errors(amplitudes.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, amplitudes.size())));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < amplitudes.size(); i = next++) {
            try {
                out[i] = trace_point(q, amplitudes[i], ctl);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

std::vector<TurningPoint> find_turning_points(std::span<const CurvePoint> curve) {
    std::vector<TurningPoint> out;
    if (curve.size() < 3) return out;
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
        const double d_lo = curve[i].lambda - curve[i - 1].lambda;
        const double d_hi = curve[i + 1].lambda - curve[i].lambda;
        // differences at the level of integration noise are not turning points
        const double noise = kTurningNoise * std::max(1.0, std::abs(curve[i].lambda));
        if (std::abs(d_lo) <= noise || std::abs(d_hi) <= noise || (d_lo > 0.0) == (d_hi > 0.0)) continue;

        const double x0 = std::log(curve[i - 1].amplitude_a);
        const double x1 = std::log(curve[i].amplitude_a);
        const double x2 = std::log(curve[i + 1].amplitude_a);
        const double y0 = curve[i - 1].lambda;
        const double y1 = curve[i].lambda;
        const double y2 = curve[i + 1].lambda;

        // vertex of the parabola through the three points
        const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
        const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
        TurningPoint tp{curve[i].amplitude_a, y1};
        if (den != 0.0) {
            const double xv = std::clamp(x1 - 0.5 * num / den, x0, x2);
            // Lagrange form evaluated at the vertex
            const double l0 = (xv - x1) * (xv - x2) / ((x0 - x1) * (x0 - x2));
            const double l1 = (xv - x0) * (xv - x2) / ((x1 - x0) * (x1 - x2));
            const double l2 = (xv - x0) * (xv - x1) / ((x2 - x0) * (x2 - x1));
            tp = {std::exp(xv), l0 * y0 + l1 * y1 + l2 * y2};
        }
        out.push_back(tp);
    }
    return out;
}

RadialSolution rescale_to_unit_ball(const CurvePoint& point, double q, const SolverControls& ctl) {
    const double beta = scaling_exponent(q);
    if (!(point.rho0 > 0.0)) throw PreconditionViolation("rescale_to_unit_ball: rho0 must be positive");
    const RadialSolution z = integrate_ivp(profile_problem(q), point.amplitude_a, point.rho0, ctl);
    const double scale = std::pow(point.lambda, beta);

    RadialSolution u;
    u.grid.resize(z.size());
    u.u.resize(z.size());
    u.uprime.resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        u.grid[i] = static_cast<double>(i) / static_cast<double>(z.size() - 1);
        u.u[i] = scale * z.u[i];
        u.uprime[i] = scale * point.rho0 * z.uprime[i];
    }
    u.alpha = scale * point.amplitude_a;
    u.radius = 1.0;
    u.boundary_defect = std::abs(u.u.back());
    u.controls = ctl;
    return u;
}

}  // namespace radlab
