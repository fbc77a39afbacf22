#include "radlab/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "radlab/errors.hpp"

namespace radlab {

double phi_p(double t, double p) noexcept {
    if (t == 0.0) return 0.0;
    return t * std::pow(std::abs(t), p - 2.0);
}

double phi_p_inv(double s, double p) noexcept {
    if (s == 0.0) return 0.0;
    return std::copysign(std::pow(std::abs(s), 1.0 / (p - 1.0)), s);
}

double phi_p_prime(double t, double p) noexcept {
    if (p == 2.0) return 1.0;
    return (p - 1.0) * std::pow(std::abs(t), p - 2.0);
}

void RadialProblem::validate() const {
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw PreconditionViolation("radial problem: p must be > 1");
    }
    if (!(n >= 2.0) || !std::isfinite(n)) {
        throw PreconditionViolation("radial problem: n must be >= 2");
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw PreconditionViolation("radial problem: radius must be > 0");
    }
}

SolverControls SolverControls::tightened(double factor) const {
    SolverControls c = *this;
    c.rtol *= factor;
    c.atol *= factor;
    return c;
}

// ---------------------------------------------------------------------------
// Trajectory

namespace {

// Largest change of u allowed across the series window, relative to |alpha|.
constexpr double kSeriesRelativeDrift = 1e-6;

double series_window_for(const RadialProblem& prob, double alpha, double window_fraction) {
    double r0 = window_fraction * prob.radius;
    const double s = std::abs(prob.nl.f(alpha)) / prob.n;
    if (alpha != 0.0 && s > 0.0) {
        // |u(r) - alpha| = s^m r^(m+1) / (m+1),  m = 1/(p-1)
        const double m = 1.0 / (prob.p - 1.0);
        const double budget = kSeriesRelativeDrift * std::abs(alpha) * (m + 1.0);
        const double r_acc = std::pow(budget / std::pow(s, m), 1.0 / (m + 1.0));
        r0 = std::min(r0, r_acc);
    }
    return r0;
}

}  // namespace

Trajectory::Trajectory(const RadialProblem& prob, double alpha, double r0)
    : n_(prob.n), p_(prob.p), alpha_(alpha), f_alpha_(prob.nl.f(alpha)), r0_(r0) {}

RadialState Trajectory::series(double r) const {
    // (r^(n-1) phi_p(u'))' = -r^(n-1) f(u)  =>  phi_p(u') ~ -f(alpha) r / n
    const double s = f_alpha_ / n_;
    const double m = 1.0 / (p_ - 1.0);
    RadialState st;
    st.r = r;
    if (r == 0.0 || s == 0.0) {
        st.u = alpha_;
        return st;
    }
    const double mag = std::pow(std::abs(s), m);
    st.uprime = -std::copysign(mag * std::pow(r, m), s);
    st.u = alpha_ - std::copysign(mag * std::pow(r, m + 1.0) / (m + 1.0), s);
    st.w = -s * std::pow(r, n_);
    return st;
}

RadialState Trajectory::at(double r) const {
    if (r <= r0_ || nodes_.size() < 2) return series(r);
    if (r > r_end()) {
        std::ostringstream os;
        os << "trajectory queried at r = " << r << " beyond r_end = " << r_end();
        throw DomainMismatch(os.str());
    }
    // nodes_[0] is the origin, nodes_[1] the end of the series window
    auto it = std::lower_bound(nodes_.begin() + 1, nodes_.end(), r,
                               [](const Node& a, double x) { return a.r < x; });
    const Node& b = *it;
    if (b.r == r) {
        return {b.r, b.u, phi_p_inv(b.w / std::pow(b.r, n_ - 1.0), p_), b.w};
    }
    const Node& a = *(it - 1);
    const double H = b.r - a.r;
    const double t = (r - a.r) / H;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;

    RadialState st;
    st.r = r;
    st.u = h00 * a.u + h10 * H * a.du + h01 * b.u + h11 * H * b.du;
    st.w = h00 * a.w + h10 * H * a.dw + h01 * b.w + h11 * H * b.dw;
    st.uprime = phi_p_inv(st.w / std::pow(r, n_ - 1.0), p_);
    return st;
}

RadialSolution Trajectory::resample(std::size_t points) const {
    if (points < 2) throw BadGrid("resample: need at least 2 points");
    RadialSolution sol;
    sol.grid.resize(points);
    sol.u.resize(points);
    sol.uprime.resize(points);
    const double end = r_end();
    for (std::size_t i = 0; i < points; ++i) {
        const double r = (i + 1 == points) ? end : end * static_cast<double>(i) / static_cast<double>(points - 1);
        const RadialState st = at(r);
        sol.grid[i] = r;
        sol.u[i] = st.u;
        sol.uprime[i] = st.uprime;
    }
    sol.uprime[0] = 0.0;
    sol.u[0] = alpha_;
    sol.alpha = alpha_;
    sol.radius = end;
    sol.boundary_defect = std::abs(sol.u.back());
    return sol;
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) stepper on (u, w)

namespace {

struct Derivs {
    double du, dw;
};

class RadialSystem {
public:
    explicit RadialSystem(const RadialProblem& prob) : prob_(prob) {}

    Derivs operator()(double r, double u, double w) const {
        const double rn1 = std::pow(r, prob_.n - 1.0);
        return {phi_p_inv(w / rn1, prob_.p), -rn1 * prob_.nl.f(u)};
    }

    double weight_w(double r) const { return std::pow(r, prob_.n - 1.0); }

private:
    const RadialProblem& prob_;
};

namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp

struct DriveOptions {
    std::span<const double> stops;       // abscissae to land on exactly
    std::vector<RadialState>* landed = nullptr;
    bool stop_on_sign_change = false;
};

Trajectory drive(const RadialProblem& prob, double alpha, double r_end, const SolverControls& ctl,
                 const DriveOptions& opt) {
    prob.validate();
    if (!(r_end > 0.0) || !std::isfinite(r_end)) {
        throw PreconditionViolation("integrate: r_end must be positive and finite");
    }
    if (!std::isfinite(alpha)) throw PreconditionViolation("integrate: alpha must be finite");

    const double r0 = std::min(series_window_for(prob, alpha, ctl.series_window), 0.5 * r_end);
    Trajectory traj(prob, alpha, r0);
    const RadialSystem sys(prob);

    traj.push({0.0, alpha, 0.0, 0.0, 0.0});

    std::size_t next_stop = 0;
    auto record_stops_below = [&](double r_limit) {
        while (opt.landed && next_stop < opt.stops.size() && opt.stops[next_stop] <= r_limit) {
            opt.landed->push_back(traj.series(opt.stops[next_stop]));
            ++next_stop;
        }
    };
    record_stops_below(r0);

    const RadialState start = traj.series(r0);
    double r = r0;
    double u = start.u;
    double w = start.w;
    Derivs k1 = sys(r, u, w);
    traj.push({r, u, k1.du, w, k1.dw});

    const double eps = std::numeric_limits<double>::epsilon();
    double h = std::min(0.5 * r0, ctl.max_step);
    std::size_t steps = 0;

    while (r < r_end) {
        double target = r_end;
        bool target_is_stop = false;
        if (next_stop < opt.stops.size() && opt.stops[next_stop] < r_end) {
            target = opt.stops[next_stop];
            target_is_stop = true;
        }
        if (++steps > ctl.max_steps) {
            throw StepFailure("integrate: step budget exhausted at r = " + std::to_string(r));
        }

        h = std::min(h, ctl.max_step);
        bool lands = false;
        double hs = h;
        if (r + h >= target - 4 * eps * target) {
            hs = target - r;
            lands = true;
        }
        const double h_min = 16 * eps * std::max(r, std::numeric_limits<double>::min());
        if (hs < h_min && !lands) {
            throw StepFailure("integrate: step size underflow at r = " + std::to_string(r));
        }

        using namespace dp;
        const Derivs k2 = sys(r + c2 * hs, u + hs * a21 * k1.du, w + hs * a21 * k1.dw);
        const Derivs k3 = sys(r + c3 * hs, u + hs * (a31 * k1.du + a32 * k2.du), w + hs * (a31 * k1.dw + a32 * k2.dw));
        const Derivs k4 = sys(r + c4 * hs, u + hs * (a41 * k1.du + a42 * k2.du + a43 * k3.du),
                              w + hs * (a41 * k1.dw + a42 * k2.dw + a43 * k3.dw));
        const Derivs k5 = sys(r + c5 * hs, u + hs * (a51 * k1.du + a52 * k2.du + a53 * k3.du + a54 * k4.du),
                              w + hs * (a51 * k1.dw + a52 * k2.dw + a53 * k3.dw + a54 * k4.dw));
        const Derivs k6 =
            sys(r + hs, u + hs * (a61 * k1.du + a62 * k2.du + a63 * k3.du + a64 * k4.du + a65 * k5.du),
                w + hs * (a61 * k1.dw + a62 * k2.dw + a63 * k3.dw + a64 * k4.dw + a65 * k5.dw));
        const double r_new = lands ? target : r + hs;
        const double u_new = u + hs * (b1 * k1.du + b3 * k3.du + b4 * k4.du + b5 * k5.du + b6 * k6.du);
        const double w_new = w + hs * (b1 * k1.dw + b3 * k3.dw + b4 * k4.dw + b5 * k5.dw + b6 * k6.dw);
        const Derivs k7 = sys(r_new, u_new, w_new);

        const double err_u = hs * (e1 * k1.du + e3 * k3.du + e4 * k4.du + e5 * k5.du + e6 * k6.du + e7 * k7.du);
        const double err_w = hs * (e1 * k1.dw + e3 * k3.dw + e4 * k4.dw + e5 * k5.dw + e6 * k6.dw + e7 * k7.dw);
        // w carries a factor r^(n-1); its absolute tolerance is scaled to match so that
        // the error in phi_p(u') = w / r^(n-1) is what gets controlled.
        const double sc_u = ctl.atol + ctl.rtol * std::max(std::abs(u), std::abs(u_new));
        const double sc_w = ctl.atol * sys.weight_w(r_new) + ctl.rtol * std::max(std::abs(w), std::abs(w_new));
        const double err = std::max(std::abs(err_u) / sc_u, std::abs(err_w) / sc_w);

        if (!std::isfinite(err)) {
            if (hs < h_min) {
                throw NonFinite("integrate: solution left the floating range near r = " + std::to_string(r));
            }
            h = 0.2 * hs;
            continue;
        }
        if (err > 1.0) {
            h = hs * std::max(0.2, 0.9 * std::pow(err, -0.2));
            if (h < h_min) {
                throw StepFailure("integrate: step size underflow at r = " + std::to_string(r));
            }
            continue;
        }

        if (!std::isfinite(u_new) || !std::isfinite(w_new)) {
            throw NonFinite("integrate: non-finite state at r = " + std::to_string(r_new));
        }

        const double u_old = u;
        r = r_new;
        u = u_new;
        w = w_new;
        k1 = k7;
        traj.push({r, u, k1.du, w, k1.dw});

        if (lands && target_is_stop) {
            if (opt.landed) opt.landed->push_back({r, u, k1.du, w});
            ++next_stop;
        }

        const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
        h = lands ? std::max(h, hs * grow) : hs * grow;

        if (opt.stop_on_sign_change && ((u_old > 0.0 && u <= 0.0) || (u_old < 0.0 && u >= 0.0))) {
            break;
        }
    }
    return traj;
}

}  // namespace

Trajectory integrate_trajectory(const RadialProblem& prob, double alpha, double r_end, const SolverControls& ctl) {
    return drive(prob, alpha, r_end, ctl, {});
}

RadialSolution integrate_ivp(const RadialProblem& prob, double alpha, double r_end, const SolverControls& ctl) {
    const Trajectory traj = integrate_trajectory(prob, alpha, r_end, ctl);
    RadialSolution sol = traj.resample(ctl.grid_points);
    sol.controls = ctl;
    return sol;
}

std::vector<RadialState> sample_exact(const RadialProblem& prob, double alpha, std::span<const double> points,
                                      const SolverControls& ctl) {
    if (points.empty()) return {};
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i] >= 0.0) || (i > 0 && !(points[i] > points[i - 1]))) {
            throw BadGrid("sample_exact: points must be non-negative and strictly increasing");
        }
    }
    std::vector<RadialState> landed;
    landed.reserve(points.size());
    DriveOptions opt;
    opt.stops = points;
    opt.landed = &landed;
    const double r_end = points.back();
    if (r_end == 0.0) {
        return {RadialState{0.0, alpha, 0.0, 0.0}};
    }
    const Trajectory traj = drive(prob, alpha, r_end, ctl, opt);
    if (landed.size() < points.size()) {
        const auto& last = traj.nodes().back();
        landed.push_back({last.r, last.u, last.du, last.w});
    }
    return landed;
}

double shooting_map(const RadialProblem& prob, double alpha, const SolverControls& ctl) {
    return integrate_trajectory(prob, alpha, prob.radius, ctl).nodes().back().u;
}

RadialSolution shoot_bvp(const RadialProblem& prob, double alpha_lo, double alpha_hi, const SolverControls& ctl) {
    prob.validate();
    if (!(alpha_lo < alpha_hi) || !std::isfinite(alpha_lo) || !std::isfinite(alpha_hi)) {
        throw PreconditionViolation("shoot_bvp: need finite alpha_lo < alpha_hi");
    }
    const std::size_t count = std::max<std::size_t>(2, ctl.bracket_scan);
    const bool logarithmic = alpha_lo > 0.0 && alpha_hi / alpha_lo >= 10.0;

    auto scan_point = [&](std::size_t i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        if (i + 1 == count) return alpha_hi;
        if (logarithmic) return alpha_lo * std::pow(alpha_hi / alpha_lo, t);
        return alpha_lo + t * (alpha_hi - alpha_lo);
    };
    auto g = [&](double a) { return shooting_map(prob, a, ctl); };

    auto finish = [&](double alpha) {
        RadialSolution sol = integrate_ivp(prob, alpha, prob.radius, ctl);
        if (!(sol.boundary_defect <= ctl.bvp_tol)) {
            std::ostringstream os;
            os << "shoot_bvp: amplitude converged at " << alpha << " but boundary defect " << sol.boundary_defect
               << " exceeds bvp_tol " << ctl.bvp_tol;
            throw NumericalError(os.str());
        }
        sol.is_bvp = true;
        return sol;
    };

    double a_prev = 0.0;
    double g_prev = 0.0;
    bool have_prev = false;
    for (std::size_t i = 0; i < count; ++i) {
        const double a = scan_point(i);
        if (a == 0.0) continue;  // the trivial solution is not a shooting target
        const double ga = g(a);
        if (std::abs(ga) <= ctl.bvp_tol) return finish(a);
        if (have_prev && (ga > 0.0) != (g_prev > 0.0)) {
            // bisection until the bracket is narrow, then Illinois-safeguarded secant
            double lo = a_prev, glo = g_prev, hi = a, ghi = ga;
            auto converged = [&](double x, double gx, double width) {
                return std::abs(gx) <= ctl.bvp_tol || width <= ctl.alpha_tol * std::max(1.0, std::abs(x));
            };
            double best = std::abs(glo) < std::abs(ghi) ? lo : hi;
            double g_best = std::min(std::abs(glo), std::abs(ghi));
            for (int it = 0; it < 200 && std::abs(hi - lo) > 1e-3 * std::max(1e-300, std::abs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g(mid);
                if (std::abs(gm) < g_best) {
                    best = mid;
                    g_best = std::abs(gm);
                }
                if (converged(mid, gm, hi - lo)) return finish(mid);
                if ((gm > 0.0) == (glo > 0.0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                    ghi = gm;
                }
            }
            int side = 0;
            for (int it = 0; it < 200; ++it) {
                double x = hi - ghi * (hi - lo) / (ghi - glo);
                if (!(x > std::min(lo, hi) && x < std::max(lo, hi))) x = 0.5 * (lo + hi);
                const double gx = g(x);
                if (std::abs(gx) < g_best) {
                    best = x;
                    g_best = std::abs(gx);
                }
                if (converged(x, gx, std::abs(hi - lo))) return finish(x);
                if ((gx > 0.0) == (glo > 0.0)) {
                    lo = x;
                    glo = gx;
                    if (side == -1) ghi *= 0.5;
                    side = -1;
                } else {
                    hi = x;
                    ghi = gx;
                    if (side == 1) glo *= 0.5;
                    side = 1;
                }
                if (std::abs(hi - lo) <= ctl.alpha_tol * std::max(1.0, std::abs(x))) break;
            }
            return finish(best);
        }
        a_prev = a;
        g_prev = ga;
        have_prev = true;
    }
    std::ostringstream os;
    os << "shoot_bvp: u(" << prob.radius << "; alpha) keeps one sign on [" << alpha_lo << ", " << alpha_hi << "]";
    throw NoBracket(os.str());
}

ZeroCrossing first_zero(const RadialProblem& prob, double alpha, const SolverControls& ctl) {
    if (!(alpha > 0.0)) throw PreconditionViolation("first_zero: alpha must be positive");
    DriveOptions opt;
    opt.stop_on_sign_change = true;
    const Trajectory traj = drive(prob, alpha, ctl.r_max, ctl, opt);
    const auto& nodes = traj.nodes();
    const auto& last = nodes.back();
    if (last.u > 0.0) {
        std::ostringstream os;
        os << "first_zero: no sign change of u before r_max = " << ctl.r_max << " (alpha = " << alpha << ")";
        throw NoZero(os.str());
    }
    double lo = nodes[nodes.size() - 2].r;
    double hi = last.r;
    double mid = hi;
    double u_mid = last.u;
    // refine past event_tol down to the floating resolution of r
    const double eps = std::numeric_limits<double>::epsilon();
    for (int it = 0; it < 200 && (std::abs(u_mid) >= ctl.event_tol || hi - lo > 4 * eps * hi); ++it) {
        mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        u_mid = traj.u(mid);
        if (u_mid > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {mid, traj.at(mid).uprime};
}

}  // namespace radlab
