#include "clusterlens/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "clusterlens/errors.hpp"

namespace clusterlens {

namespace {

constexpr int kMaxFractionTerms = 200000;
constexpr double kFractionEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Continued fraction for I_x(a, b) (without the x^a (1-x)^b / (a B(a, b)) prefactor).
double beta_fraction(double x, double a, double b) {
    const double qab = a + b;
    const double qap = a + 1;
    const double qam = a - 1;
    double c = 1;
    double d = 1 - qab * x / qap;
    if (std::abs(d) < kTiny) {
        d = kTiny;
    }
    d = 1 / d;
    double h = d;

    for (int k = 1; k <= kMaxFractionTerms; ++k) {
        const double m2 = 2.0 * k;
        double aa = k * (b - k) * x / ((qam + m2) * (a + m2));
        d = 1 + aa * d;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = 1 + aa / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1 / d;
        h *= d * c;

        aa = -(a + k) * (qab + k) * x / ((a + m2) * (qap + m2));
        d = 1 + aa * d;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = 1 + aa / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1) < kFractionEpsilon) {
            break;
        }
    }
    return h;
}

// I_x(a, b) with y = 1 - x supplied separately, so callers that know y exactly avoid cancellation.
double inc_beta(double x, double y, double a, double b) {
    if (x <= 0) {
        return 0;
    }
    if (y <= 0) {
        return 1;
    }
    const double log_front = a * std::log(x) + b * std::log(y) - log_beta(a, b);
    if (x < (a + 1) / (a + b + 2)) {
        return std::exp(log_front) * beta_fraction(x, a, b) / a;
    }
    return 1 - std::exp(log_front) * beta_fraction(y, b, a) / b;
}

// Upper-tail mass P(|T| > |t|), i.e. the two-sided p-value before clamping.
double two_sided_tail(double t, double df) {
    if (t == 0) {
        return 1;
    }
    const double ratio = t / std::sqrt(df);
    const double ratio2 = ratio * ratio;
    if (!std::isfinite(ratio2)) {
        return 0;
    }
    const double x = 1 / (1 + ratio2);
    const double y = ratio2 / (1 + ratio2);
    return inc_beta(x, y, df / 2, 0.5);
}

void check_df(double df) {
    if (!(df > 0) || std::isinf(df)) {
        throw DomainError("degrees of freedom must be positive and finite, got " + std::to_string(df));
    }
}

}

Moments Moments::of(std::span<const double> values) {
    Moments out;
    out.count = values.size();
    if (values.empty()) {
        return out;
    }

    double sum = 0;
    for (double v : values) {
        sum += v;
        out.min = std::min(out.min, v);
        out.max = std::max(out.max, v);
    }
    if (out.min == out.max) {
        out.mean = out.min;
        return out;
    }

    const double n = static_cast<double>(out.count);
    double mean = sum / n;
    double correction = 0;
    double squares = 0;
    for (double v : values) {
        const double delta = v - mean;
        correction += delta;
        squares += delta * delta;
    }
    out.mean = mean + correction / n;
    out.m2 = std::max(0.0, squares - correction * correction / n);
    return out;
}

Moments Moments::merged(const Moments& other) const {
    if (other.count == 0) {
        return *this;
    }
    if (count == 0) {
        return other;
    }
    Moments out;
    out.count = count + other.count;
    out.min = std::min(min, other.min);
    out.max = std::max(max, other.max);
    if (out.min == out.max) {
        out.mean = out.min;
        return out;
    }

    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double n = na + nb;
    const double delta = other.mean - mean;
    out.mean = mean + delta * (nb / n);
    out.m2 = m2 + other.m2 + delta * delta * (na * nb / n);
    return out;
}

SummaryStats Moments::summary() const {
    if (count < 2) {
        throw InsufficientSampleError("need at least 2 values, got " + std::to_string(count));
    }
    return SummaryStats{mean, m2 / static_cast<double>(count - 1), count};
}

SummaryStats summarize(std::span<const double> values) {
    if (values.size() < 2) {
        throw InsufficientSampleError("need at least 2 values, got " + std::to_string(values.size()));
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw DomainError("summarize requires finite values");
        }
    }
    return Moments::of(values).summary();
}

double welch_t(const SummaryStats& a, const SummaryStats& b) {
    const double se2 = a.variance / static_cast<double>(a.count) + b.variance / static_cast<double>(b.count);
    const double diff = a.mean - b.mean;
    if (se2 == 0) {
        if (diff == 0) {
            return 0;
        }
        throw DegenerateVarianceError("both groups have zero variance and different means");
    }
    return diff / std::sqrt(se2);
}

double welch_df(const SummaryStats& a, const SummaryStats& b) {
    const double va = a.variance / static_cast<double>(a.count);
    const double vb = b.variance / static_cast<double>(b.count);
    const double denom = va * va / static_cast<double>(a.count - 1) + vb * vb / static_cast<double>(b.count - 1);
    if (va + vb == 0 || denom == 0) {
        throw DegenerateVarianceError("both groups have zero variance");
    }
    return (va + vb) * (va + vb) / denom;
}

TestResult welch_test(const SummaryStats& a, const SummaryStats& b) {
    TestResult out;
    out.t = welch_t(a, b);
    if (a.variance == 0 && b.variance == 0) {
        out.df = static_cast<double>(a.count + b.count - 2);
        out.p = 1;
        return out;
    }
    out.df = welch_df(a, b);
    out.p = p_two_tailed(out.t, out.df);
    return out;
}

double reg_inc_beta(double x, double a, double b) {
    if (!(x >= 0 && x <= 1) || !(a > 0) || !(b > 0) || std::isinf(a) || std::isinf(b)) {
        throw DomainError("reg_inc_beta requires 0 <= x <= 1 and finite a, b > 0");
    }
    return inc_beta(x, 1 - x, a, b);
}

double t_cdf(double t, double df) {
    check_df(df);
    if (std::isnan(t)) {
        throw DomainError("t must not be NaN");
    }
    const double tail = 0.5 * two_sided_tail(t, df);
    return t > 0 ? 1 - tail : tail;
}

double p_two_tailed(double t, double df) {
    check_df(df);
    if (std::isnan(t)) {
        throw DomainError("t must not be NaN");
    }
    return std::clamp(two_sided_tail(t, df), kMinPValue, 1.0);
}

int decimal_places(double p) {
    if (std::isnan(p) || p > 1) {
        throw DomainError("p-value must lie in (0, 1]");
    }
    if (p <= 0) {
        return kDecimalCap;
    }
    double places = std::floor(-std::log10(p));
    // log10 can land one ulp on the wrong side of an exact power of ten.
    if (p <= std::pow(10.0, -(places + 1))) {
        places += 1;
    } else if (places > 0 && p > std::pow(10.0, -places)) {
        places -= 1;
    }
    return static_cast<int>(std::clamp(places, 0.0, static_cast<double>(kDecimalCap)));
}

}
