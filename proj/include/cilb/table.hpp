#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cilb/beta.hpp"

namespace cilb {

struct EstimatorTableRow {
    std::uint64_t n = 0;
    std::uint64_t x = 0;
    std::optional<double> mle;  // absent only when n = 0
    double laplace = 0.0;
    double lower_bound = 0.0;
};

/// One row per (n, x) with 1 <= n <= n_max and 0 <= x <= n, ascending.
/// The laplace column is the posterior mean under `prior` (the usual
/// Laplace estimate when the prior is uniform). Values are unrounded.
std::vector<EstimatorTableRow> generate_table(std::uint64_t n_max, double alpha,
                                              const BetaParams& prior);

/// Fixed-point text with `decimals` digits, rounding half away from zero
/// on the decimal scale.
std::string format_fixed(double value, int decimals = 5);

/// CSV `n,x,mle,laplace,theta_lb` with LF endings and 5-decimal values.
void write_table_csv(std::ostream& out, const std::vector<EstimatorTableRow>& rows);

}  // namespace cilb
