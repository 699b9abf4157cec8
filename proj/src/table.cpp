#include "cilb/table.hpp"

#include <cmath>
#include <cstdio>

#include "cilb/errors.hpp"
#include "cilb/estimators.hpp"

namespace cilb {

std::vector<EstimatorTableRow> generate_table(std::uint64_t n_max, double alpha,
                                              const BetaParams& prior) {
    if (n_max < 1) throw DomainError("n_max must be at least 1");
    std::vector<EstimatorTableRow> rows;
    rows.reserve(n_max * (n_max + 3) / 2);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        for (std::uint64_t x = 0; x <= n; ++x) {
            const FrequencyPair f(n, x);
            rows.push_back({n, x, mle(f), posterior_mean(f, prior),
                            theta_lower_bound(f, prior, alpha)});
        }
    }
    return rows;
}

std::string format_fixed(double value, int decimals) {
    if (!std::isfinite(value)) return "NA";
    const double scale = std::pow(10.0, decimals);
    const bool negative = value < 0.0;
    const auto scaled = static_cast<long long>(std::floor(std::fabs(value) * scale + 0.5));
    const long long unit = static_cast<long long>(scale);
    char buf[64];
    if (decimals == 0) {
        std::snprintf(buf, sizeof buf, "%s%lld", negative && scaled ? "-" : "", scaled);
    } else {
        std::snprintf(buf, sizeof buf, "%s%lld.%0*lld", negative && scaled ? "-" : "",
                      scaled / unit, decimals, scaled % unit);
    }
    return buf;
}

void write_table_csv(std::ostream& out, const std::vector<EstimatorTableRow>& rows) {
    out << "n,x,mle,laplace,theta_lb\n";
    for (const auto& row : rows) {
        out << row.n << ',' << row.x << ',' << (row.mle ? format_fixed(*row.mle) : "NA") << ','
            << format_fixed(row.laplace) << ',' << format_fixed(row.lower_bound) << '\n';
    }
}

}  // namespace cilb
