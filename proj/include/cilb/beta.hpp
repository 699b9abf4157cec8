#pragma once

// Beta-distribution kernel: log of the beta function, the regularized
// incomplete beta function I_t(a,b) and its inverse.
//
// All functions are pure and thread-safe.

namespace cilb {

/// Shape parameters of a Beta(a, b) distribution. Both must be positive
/// and finite; the constructor throws DomainError otherwise.
class BetaParams {
public:
    BetaParams(double a, double b);

    static BetaParams uniform() { return {1.0, 1.0}; }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

    double mean() const noexcept { return a_ / (a_ + b_); }
    double variance() const noexcept;

    friend bool operator==(const BetaParams&, const BetaParams&) = default;

private:
    double a_;
    double b_;
};

/// ln B(a, b). Uses lgamma for small arguments and a Stirling-series
/// difference when either argument is large, which avoids cancelling
/// two huge lgamma values.
double log_beta(const BetaParams& p);

/// Density of Beta(a, b) at t. Infinite at an endpoint when the
/// corresponding shape is below one.
double beta_pdf(double t, const BetaParams& p);

/// I_t(a, b), the Beta(a, b) CDF at t. Exactly 0 at t = 0 and 1 at t = 1.
/// Throws DomainError when t is outside [0, 1] and ConvergenceError if the
/// continued fraction does not settle.
double reg_inc_beta(double t, const BetaParams& p);

/// Upper tail 1 - I_t(a, b), computed without subtracting from one.
double reg_inc_beta_complement(double t, const BetaParams& p);

/// Residual bound guaranteed by beta_quantile: |I_t(a,b) - q| <= this.
inline constexpr double kQuantileResidualTolerance = 1e-10;

/// The t in (0, 1) with I_t(a, b) = q, found by a bracketed Newton
/// iteration with bisection fallback. q must lie strictly inside (0, 1).
/// Throws ConvergenceError rather than returning an inaccurate root.
double beta_quantile(const BetaParams& p, double q);

}  // namespace cilb
