#include "cilb/beta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "cilb/errors.hpp"

namespace cilb {

namespace {

constexpr double kEpsilon = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr double kStirlingCutoff = 10.0;

// lgamma(z) - [(z - 1/2) ln z - z + ln(2 pi)/2] for z >= kStirlingCutoff.
double stirling_correction(double z) {
    const double r = 1.0 / z;
    const double r2 = r * r;
    return r * (1.0 / 12.0 +
                r2 * (-1.0 / 360.0 +
                      r2 * (1.0 / 1260.0 +
                            r2 * (-1.0 / 1680.0 +
                                  r2 * (1.0 / 1188.0 +
                                        r2 * (-691.0 / 360360.0 + r2 * (1.0 / 156.0)))))));
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void check_probability(double t, const char* what) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError(std::string(what) + " must lie in [0, 1], got " + num(t));
    }
}

// Continued fraction for I_t(a,b) (modified Lentz). Converges quickly
// for t < (a + 1) / (a + b + 2).
double incbeta_fraction(double a, double b, double t) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    const int max_iter = 2000 + static_cast<int>(50.0 * std::sqrt(qab));

    double c = 1.0;
    double d = 1.0 - qab * t / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * t / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + m) * (qab + m) * t / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) <= kEpsilon) return h;
    }
    throw ConvergenceError("incomplete beta continued fraction did not converge for a=" +
                           num(a) + ", b=" + num(b) +
                           ", t=" + num(t));
}

// ln[t^a (1-t)^b / B(a,b)]. When both shapes are large the terms are
// re-centred on the mean so the O(a+b) pieces cancel analytically.
double log_front_factor(double a, double b, double t) {
    if (a >= kStirlingCutoff && b >= kStirlingCutoff) {
        const double c = a + b;
        const double mean = a / c;
        const double diff = t - mean;
        return a * std::log1p(diff / mean) + b * std::log1p(-diff / (b / c)) +
               0.5 * std::log(a * b / (2.0 * std::numbers::pi * c)) -
               stirling_correction(a) - stirling_correction(b) + stirling_correction(c);
    }
    return a * std::log(t) + b * std::log1p(-t) - log_beta(BetaParams(a, b));
}

struct Tails {
    double lower;
    double upper;
};

Tails incomplete_beta_tails(double t, const BetaParams& p) {
    check_probability(t, "t");
    if (t == 0.0) return {0.0, 1.0};
    if (t == 1.0) return {1.0, 0.0};

    const double a = p.a();
    const double b = p.b();
    if (t < (a + 1.0) / (a + b + 2.0)) {
        const double lower = std::exp(log_front_factor(a, b, t)) * incbeta_fraction(a, b, t) / a;
        return {lower, 1.0 - lower};
    }
    const double upper =
        std::exp(log_front_factor(b, a, 1.0 - t)) * incbeta_fraction(b, a, 1.0 - t) / b;
    return {1.0 - upper, upper};
}

}  // namespace

BetaParams::BetaParams(double a, double b) : a_(a), b_(b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("beta shape parameters must be positive and finite, got a=" +
                          num(a) + ", b=" + num(b));
    }
}

double BetaParams::variance() const noexcept {
    const double s = a_ + b_;
    return a_ * b_ / (s * s * (s + 1.0));
}

double log_beta(const BetaParams& p) {
    const double a = std::min(p.a(), p.b());
    const double b = std::max(p.a(), p.b());
    const double c = a + b;

    if (b < kStirlingCutoff) {
        return std::lgamma(a) + std::lgamma(b) - std::lgamma(c);
    }
    if (a < kStirlingCutoff) {
        // lgamma(b) - lgamma(c) expanded so the large terms cancel exactly.
        return std::lgamma(a) - (b - 0.5) * std::log1p(a / b) - a * std::log(c) + a +
               stirling_correction(b) - stirling_correction(c);
    }
    return 0.5 * std::log(2.0 * std::numbers::pi) - 0.5 * std::log(c) -
           (a - 0.5) * std::log1p(b / a) - (b - 0.5) * std::log1p(a / b) +
           stirling_correction(a) + stirling_correction(b) - stirling_correction(c);
}

double beta_pdf(double t, const BetaParams& p) {
    check_probability(t, "t");
    const double a = p.a();
    const double b = p.b();
    if (t == 0.0) {
        if (a < 1.0) return std::numeric_limits<double>::infinity();
        return a == 1.0 ? b : 0.0;
    }
    if (t == 1.0) {
        if (b < 1.0) return std::numeric_limits<double>::infinity();
        return b == 1.0 ? a : 0.0;
    }
    return std::exp((a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t) - log_beta(p));
}

double reg_inc_beta(double t, const BetaParams& p) {
    return incomplete_beta_tails(t, p).lower;
}

double reg_inc_beta_complement(double t, const BetaParams& p) {
    return incomplete_beta_tails(t, p).upper;
}

double beta_quantile(const BetaParams& p, double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw DomainError("quantile level must lie strictly inside (0, 1), got " +
                          num(q));
    }
    const double a = p.a();
    const double b = p.b();

    // Work in whichever tail keeps the target away from 1 so that
    // residuals near q = 1 are not swamped by rounding.
    const bool use_upper = q > 0.5;
    const double target = use_upper ? 1.0 - q : q;
    auto residual = [&](double t) {
        const Tails tails = incomplete_beta_tails(t, p);
        return use_upper ? target - tails.upper : tails.lower - target;
    };

    // Leading-order tail approximations as the starting point.
    const double lb = log_beta(p);
    double t;
    if (use_upper) {
        t = 1.0 - std::exp((std::log(target * b) + lb) / b);
    } else {
        t = std::exp((std::log(target * a) + lb) / a);
    }
    if (!(t > 0.0 && t < 1.0)) t = p.mean();

    double lo = 0.0;
    double hi = 1.0;
    constexpr int kMaxIter = 2000;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        const double f = residual(t);
        if (f == 0.0) break;
        if (f < 0.0) {
            lo = t;
        } else {
            hi = t;
        }
        if (hi - lo <= 2.0 * kEpsilon * hi) break;

        double next = t - f / beta_pdf(t, p);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (std::fabs(next - t) <= kEpsilon * next) {
            t = next;
            break;
        }
        t = next;
    }

    // The last iterate need not be the better end of a collapsed bracket.
    double err = std::fabs(residual(t));
    for (const double candidate : {lo, hi}) {
        if (candidate > 0.0 && candidate < 1.0 && candidate != t) {
            const double e = std::fabs(residual(candidate));
            if (e < err) {
                err = e;
                t = candidate;
            }
        }
    }
    if (!(t > 0.0 && t < 1.0) || !(err <= kQuantileResidualTolerance)) {
        throw ConvergenceError("beta quantile did not converge for a=" + num(a) +
                               ", b=" + num(b) + ", q=" + num(q) +
                               " (residual " + num(err) + ")");
    }
    return t;
}

}  // namespace cilb
