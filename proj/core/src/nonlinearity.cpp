#include "radlab/nonlinearity.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "radlab/errors.hpp"

namespace radlab {

PowerSumNonlinearity::PowerSumNonlinearity(double lambda, std::vector<PowerTerm> terms)
    : lambda_(lambda), terms_(std::move(terms)) {
    if (!std::isfinite(lambda_)) {
        throw PreconditionViolation("nonlinearity: lambda must be finite");
    }
    for (const auto& t : terms_) {
        if (!std::isfinite(t.c) || !std::isfinite(t.q) || !(t.q > 1.0)) {
            throw PreconditionViolation("nonlinearity: every term needs finite c and q > 1, got q = " +
                                        std::to_string(t.q));
        }
    }
}

PowerSumNonlinearity PowerSumNonlinearity::with_lambda(double lambda) const {
    return PowerSumNonlinearity(lambda, terms_);
}

double PowerSumNonlinearity::f(double u) const noexcept {
    const double a = std::abs(u);
    double sum = lambda_ * u;
    for (const auto& t : terms_) {
        sum += t.c * u * std::pow(a, t.q - 1.0);
    }
    return sum;
}

double PowerSumNonlinearity::F(double u) const noexcept {
    const double a = std::abs(u);
    double sum = 0.5 * lambda_ * u * u;
    for (const auto& t : terms_) {
        sum += t.c * std::pow(a, t.q + 1.0) / (t.q + 1.0);
    }
    return sum;
}

double PowerSumNonlinearity::fprime(double u) const noexcept {
    const double a = std::abs(u);
    double sum = lambda_;
    for (const auto& t : terms_) {
        sum += t.c * t.q * std::pow(a, t.q - 1.0);
    }
    return sum;
}

PowerSumNonlinearity brezis_nirenberg(double lambda, double q) {
    return PowerSumNonlinearity(lambda, {PowerTerm{1.0, q}});
}

}  // namespace radlab
