#include "cilb/estimators.hpp"

#include <cmath>
#include <string>

#include "cilb/errors.hpp"

namespace cilb {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("confidence level must lie strictly inside (0, 1), got " +
                          std::to_string(alpha));
    }
}

bool is_excluded(double ratio, std::span<const double> excluded) {
    for (double e : excluded) {
        if (std::fabs(ratio - e) <= kExcludedRatioTolerance) return true;
    }
    return false;
}

}  // namespace

FrequencyPair::FrequencyPair(std::uint64_t n_, std::uint64_t x_) : n(n_), x(x_) {
    if (x > n) {
        throw DomainError("joint count x=" + std::to_string(x) + " exceeds n=" +
                          std::to_string(n));
    }
}

std::string to_string(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::mle: return "mle";
        case EstimatorKind::laplace: return "laplace";
        case EstimatorKind::posterior_mean: return "posterior_mean";
        case EstimatorKind::lower_bound: return "lower_bound";
        case EstimatorKind::clopper_pearson: return "clopper_pearson";
    }
    return "unknown";
}

void EstimatorConfig::validate() const {
    check_alpha(alpha);
    if (minsup == 0) throw DomainError("minsup must be at least 1");
}

BetaParams posterior_params(const FrequencyPair& f, const BetaParams& prior) {
    return {prior.a() + static_cast<double>(f.x), prior.b() + static_cast<double>(f.n - f.x)};
}

double mle(const FrequencyPair& f) {
    if (f.n == 0) throw UndefinedEstimateError("maximum likelihood estimate undefined at n = 0");
    return static_cast<double>(f.x) / static_cast<double>(f.n);
}

double laplace_mean(const FrequencyPair& f) {
    return posterior_mean(f, BetaParams::uniform());
}

double posterior_mean(const FrequencyPair& f, const BetaParams& prior) {
    return (static_cast<double>(f.x) + prior.a()) /
           (static_cast<double>(f.n) + prior.a() + prior.b());
}

double theta_lower_bound(const FrequencyPair& f, const BetaParams& prior, double alpha) {
    check_alpha(alpha);
    return beta_quantile(posterior_params(f, prior), 1.0 - alpha);
}

double clopper_pearson_lower(const FrequencyPair& f, double alpha) {
    check_alpha(alpha);
    if (f.n == 0) throw UndefinedEstimateError("Clopper-Pearson bound undefined at n = 0");
    if (f.x == 0) return 0.0;
    const BetaParams p(static_cast<double>(f.x), static_cast<double>(f.n - f.x + 1));
    return beta_quantile(p, 1.0 - alpha);
}

BetaParams fit_prior_moments(double mean, double variance) {
    if (!(mean > 0.0 && mean < 1.0)) {
        throw InfeasibleMomentsError("mean must lie strictly inside (0, 1), got " +
                                     std::to_string(mean));
    }
    const double spread = mean * (1.0 - mean);
    if (!(variance > 0.0 && variance < spread)) {
        throw InfeasibleMomentsError("variance " + std::to_string(variance) +
                                     " must lie in (0, mean(1-mean)) = (0, " +
                                     std::to_string(spread) + ")");
    }
    const double k = spread / variance - 1.0;
    return {mean * k, (1.0 - mean) * k};
}

std::vector<double> default_excluded_ratios() {
    return {0.0,       1.0,       1.0 / 2.0, 1.0 / 3.0, 2.0 / 3.0, 1.0 / 4.0,
            3.0 / 4.0, 1.0 / 5.0, 2.0 / 5.0, 3.0 / 5.0, 4.0 / 5.0};
}

std::size_t count_retained_ratios(std::span<const double> ratios,
                                  std::span<const double> excluded) {
    std::size_t kept = 0;
    for (double r : ratios) {
        if (!is_excluded(r, excluded)) ++kept;
    }
    return kept;
}

BetaParams fit_prior_from_ratios(std::span<const double> ratios,
                                 std::span<const double> excluded) {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    // Welford's update.
    for (double r : ratios) {
        if (!(r >= 0.0 && r <= 1.0)) {
            throw DomainError("ratio must lie in [0, 1], got " + std::to_string(r));
        }
        if (is_excluded(r, excluded)) continue;
        ++count;
        const double delta = r - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (r - mean);
    }
    if (count < 2) {
        throw InsufficientDataError("need at least two retained ratios to fit a prior, have " +
                                    std::to_string(count));
    }
    const double variance = m2 / static_cast<double>(count - 1);
    if (!(variance > 0.0)) {
        throw InsufficientDataError("retained ratios have zero variance");
    }
    return fit_prior_moments(mean, variance);
}

std::optional<FrequencyPair> apply_minsup(const FrequencyPair& f, std::uint64_t minsup) {
    if (f.n < minsup) return std::nullopt;
    return f;
}

std::optional<double> estimate(const EstimatorConfig& config, const FrequencyPair& f) {
    const auto kept = apply_minsup(f, config.minsup);
    if (!kept) return std::nullopt;
    switch (config.kind) {
        case EstimatorKind::mle: return mle(*kept);
        case EstimatorKind::laplace: return laplace_mean(*kept);
        case EstimatorKind::posterior_mean: return posterior_mean(*kept, config.prior);
        case EstimatorKind::lower_bound:
            return theta_lower_bound(*kept, config.prior, config.alpha);
        case EstimatorKind::clopper_pearson: return clopper_pearson_lower(*kept, config.alpha);
    }
    throw DomainError("unknown estimator kind");
}

}  // namespace cilb
