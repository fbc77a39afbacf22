#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "radlab/certificate.hpp"
#include "radlab/curve.hpp"
#include "radlab/identity.hpp"
#include "radlab/nonlinearity.hpp"
#include "radlab/radial_solver.hpp"

namespace radlab {

using json = nlohmann::json;

/// Shortest text form that still round-trips: printf("%.17g").
std::string format_double(double x);

// {"lambda": <real>, "terms": [[c, q], ...]}
void to_json(json& j, const PowerSumNonlinearity& nl);
void from_json(const json& j, PowerSumNonlinearity& nl);

void to_json(json& j, const SolverControls& ctl);
void from_json(const json& j, SolverControls& ctl);

void to_json(json& j, const RadialProblem& prob);
void from_json(const json& j, RadialProblem& prob);

/// Metadata only (alpha, boundary_defect, radius, is_bvp, grid_points, controls);
/// the samples go to CSV.
void to_json(json& j, const RadialSolution& sol);

void to_json(json& j, const IdentityReport& rep);
void to_json(json& j, const CertificateReport& rep);
void to_json(json& j, const SweepReport& rep);
void to_json(json& j, const CurvePoint& pt);
void to_json(json& j, const TurningPoint& tp);

/// Header "r,u,uprime", one row per grid point, 17 significant digits.
void write_solution_csv(std::ostream& os, const RadialSolution& sol);

/// Inverse of write_solution_csv. alpha is u at the first row, radius the last r.
/// Throws BadGrid on malformed input.
RadialSolution read_solution_csv(std::istream& is);

/// Header "a,rho0,lambda,u0".
void write_curve_csv(std::ostream& os, std::span<const CurvePoint> curve);

/// Two whitespace-separated columns "lambda u0" with a '#' comment header.
void write_curve_gnuplot(std::ostream& os, std::span<const CurvePoint> curve);

}  // namespace radlab
