#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cilb/beta.hpp"

namespace cilb {

/// Observed counts for a conditional probability P(A | B): n is the
/// frequency of B and x the joint frequency of A and B.
struct FrequencyPair {
    std::uint64_t n = 0;
    std::uint64_t x = 0;

    FrequencyPair() = default;
    FrequencyPair(std::uint64_t n_, std::uint64_t x_);

    friend bool operator==(const FrequencyPair&, const FrequencyPair&) = default;
};

enum class EstimatorKind { mle, laplace, posterior_mean, lower_bound, clopper_pearson };

std::string to_string(EstimatorKind kind);

struct EstimatorConfig {
    EstimatorKind kind = EstimatorKind::lower_bound;
    BetaParams prior = BetaParams::uniform();
    double alpha = 0.99;
    std::uint64_t minsup = 1;

    /// Throws DomainError when alpha is outside (0,1) or minsup is zero.
    void validate() const;
};

/// Conjugate update: Beta(a + x, b + n - x).
BetaParams posterior_params(const FrequencyPair& f, const BetaParams& prior);

/// x / n. Throws UndefinedEstimateError when n = 0.
double mle(const FrequencyPair& f);

/// (x + 1) / (n + 2), the posterior mean under the uniform prior.
double laplace_mean(const FrequencyPair& f);

/// (x + a) / (n + a + b).
double posterior_mean(const FrequencyPair& f, const BetaParams& prior);

/// Lower end of the one-sided credible interval [lb, 1] holding posterior
/// mass alpha, i.e. P(theta > lb | n, x) = alpha. Strictly positive for
/// every valid input, including x = 0.
double theta_lower_bound(const FrequencyPair& f, const BetaParams& prior, double alpha);

/// One-sided Clopper-Pearson lower limit at coverage alpha. Zero when x = 0.
double clopper_pearson_lower(const FrequencyPair& f, double alpha);

/// Method-of-moments Beta fit. Throws InfeasibleMomentsError unless
/// 0 < variance < mean (1 - mean).
BetaParams fit_prior_moments(double mean, double variance);

/// The ratios ignored when fitting a prior from observed x/n values:
/// 0, 1/1, 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, 2/5, 3/5, 4/5.
std::vector<double> default_excluded_ratios();

/// Ratios closer than this to an excluded value are dropped.
inline constexpr double kExcludedRatioTolerance = 1e-9;

/// Drops excluded ratios, then fits by moments using the sample mean and
/// the unbiased (n - 1) sample variance. Throws InsufficientDataError if
/// fewer than two values remain or they have zero variance.
BetaParams fit_prior_from_ratios(std::span<const double> ratios,
                                 std::span<const double> excluded);

/// Number of ratios that survive the exclusion list.
std::size_t count_retained_ratios(std::span<const double> ratios,
                                  std::span<const double> excluded);

/// The pair itself when n >= minsup, otherwise nothing.
std::optional<FrequencyPair> apply_minsup(const FrequencyPair& f, std::uint64_t minsup);

/// Applies minsup and then the configured estimator. Returns nothing when
/// the pair is filtered out.
std::optional<double> estimate(const EstimatorConfig& config, const FrequencyPair& f);

}  // namespace cilb
