#pragma once

#include <vector>

namespace radlab {

/// One power term c * u|u|^(q-1).
struct PowerTerm {
    double c = 1.0;
    double q = 2.0;

    friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

/**
 * Odd power-sum nonlinearity
 *
 *     f(u) = lambda*u + sum_i c_i * u|u|^(q_i - 1)
 *
 * with its antiderivative F (F(0) = 0) and derivative f' in closed form.
 * Every exponent must satisfy q > 1; the constructor throws
 * PreconditionViolation otherwise.
 */
class PowerSumNonlinearity {
public:
    PowerSumNonlinearity() = default;
    explicit PowerSumNonlinearity(double lambda, std::vector<PowerTerm> terms = {});

    double lambda() const noexcept { return lambda_; }
    const std::vector<PowerTerm>& terms() const noexcept { return terms_; }

    /// Copy with a different linear coefficient.
    PowerSumNonlinearity with_lambda(double lambda) const;

    double f(double u) const noexcept;
    double F(double u) const noexcept;
    double fprime(double u) const noexcept;

    friend bool operator==(const PowerSumNonlinearity&, const PowerSumNonlinearity&) = default;

private:
    double lambda_ = 0.0;
    std::vector<PowerTerm> terms_;
};

// Free-function spellings used throughout the analysis code.
inline double eval_f(const PowerSumNonlinearity& nl, double u) noexcept { return nl.f(u); }
inline double eval_F(const PowerSumNonlinearity& nl, double u) noexcept { return nl.F(u); }
inline double eval_fprime(const PowerSumNonlinearity& nl, double u) noexcept { return nl.fprime(u); }

/// lambda*u + u|u|^(q-1), the family used by the Brezis-Nirenberg type problems.
PowerSumNonlinearity brezis_nirenberg(double lambda, double q);

}  // namespace radlab
