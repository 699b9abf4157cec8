#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cilb/estimators.hpp"

namespace cilb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// One `--estimator` argument: `kind[:key=val,...]`.
///   kinds: mle, laplace, pmean (posterior_mean), lb (lower_bound),
///          cp (clopper_pearson)
///   keys:  alpha, a, b, minsup, label
struct EstimatorSpec {
    EstimatorConfig config;
    std::string label;
};

/// Throws ParseError on unknown kinds or keys and on bad values.
EstimatorSpec parse_estimator_spec(std::string_view text);

/// Parses a decimal ("0.25") or a fraction ("1/4").
double parse_ratio(std::string_view text);

/// Comma-separated list of parse_ratio values.
std::vector<double> parse_ratio_list(std::string_view text);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cilb::cli
