#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "radlab/nonlinearity.hpp"
#include "radlab/radial_solver.hpp"

namespace radlab::cli {

enum class Command { Solve, Identity, Certify, Trace };

/// Parsed command line. Numeric fields mirror the library parameters one to one.
struct RunConfig {
    Command command = Command::Solve;

    // problem
    double n = 3.0;
    double p = 2.0;
    double lambda = 0.0;
    std::vector<PowerTerm> terms;
    double radius = 1.0;

    // solve / identity
    std::optional<double> alpha;
    std::optional<std::pair<double, double>> bracket;
    std::optional<std::string> solution_csv;
    std::vector<std::string> psi;
    std::string identity = "all";

    // certify
    std::vector<double> lambdas;
    std::vector<double> ps;
    std::size_t cert_grid = 1000;
    bool sweep = false;
    double sweep_alpha_min = 0.1;
    double sweep_alpha_max = 1e3;
    std::size_t sweep_points = 60;

    // trace
    double q = 5.0;
    double a_min = 1e-3;
    double a_max = 1e3;
    std::size_t points = 200;
    unsigned threads = 0;

    SolverControls controls;

    std::string format = "json";
    std::optional<std::string> out;
    std::optional<std::string> report;

    /// Throws ValidationError on any parameter outside the library preconditions.
    void validate() const;
    RadialProblem problem() const;
};

/// Dispatch a validated config. Returns the process exit status:
/// 0 success, 1 validation error, 2 numerical failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parse argv and run. Same exit codes; CLI parse errors map to 1.
int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace radlab::cli
