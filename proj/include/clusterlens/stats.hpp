#ifndef CLUSTERLENS_STATS_HPP
#define CLUSTERLENS_STATS_HPP

#include <cstddef>
#include <limits>
#include <span>

/**
 * @file stats.hpp
 * @brief Summary statistics, Welch's t-test and the Student-t distribution.
 */

namespace clusterlens {

/// Largest reported number of decimal places; p-values that underflow are reported here.
inline constexpr int kDecimalCap = 320;

/// Magnitude of the t statistic substituted when both groups have zero variance and different means.
inline constexpr double kSentinelT = 1e12;

/// Smallest p-value ever reported.
inline constexpr double kMinPValue = std::numeric_limits<double>::denorm_min();

/**
 * Mean, sample variance (n - 1 denominator) and size of one group.
 */
struct SummaryStats {
    double mean = 0;
    double variance = 0;
    std::size_t count = 0;
};

struct TestResult {
    double t = 0;
    double df = 0;
    double p = 1;
};

/**
 * Mergeable first and second central moments of a group.
 *
 * Per-group moments are computed with a corrected two-pass algorithm and combined with the
 * pairwise update of Chan et al., so complements of a cluster can be assembled from the other clusters
 * without revisiting the data.
 * A group whose values are all identical always reports that exact value as its mean and a zero `m2`.
 */
struct Moments {
    std::size_t count = 0;
    double mean = 0;
    double m2 = 0;
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();

    static Moments of(std::span<const double> values);

    Moments merged(const Moments& other) const;

    /// Throws InsufficientSampleError when `count < 2`.
    SummaryStats summary() const;
};

/**
 * Throws InsufficientSampleError for fewer than 2 values and DomainError for non-finite input.
 */
SummaryStats summarize(std::span<const double> values);

/**
 * Welch's t statistic, `(a.mean - b.mean) / sqrt(a.variance / a.count + b.variance / b.count)`.
 * Returns 0 when both variances are zero and the means are equal;
 * throws DegenerateVarianceError when both variances are zero and the means differ.
 */
double welch_t(const SummaryStats& a, const SummaryStats& b);

/**
 * Welch-Satterthwaite degrees of freedom.
 * Throws DegenerateVarianceError when both variances are zero.
 */
double welch_df(const SummaryStats& a, const SummaryStats& b);

/**
 * Full two-sided Welch test.
 * For two zero-variance groups with equal means this returns `{0, a.count + b.count - 2, 1}`.
 */
TestResult welch_test(const SummaryStats& a, const SummaryStats& b);

/**
 * Regularized incomplete beta function I_x(a, b), evaluated with a modified-Lentz continued fraction.
 * The expansion is applied on whichever side of `(a + 1) / (a + b + 2)` converges quickly,
 * using I_x(a, b) = 1 - I_{1-x}(b, a) for the other side.
 * Throws DomainError unless `0 <= x <= 1`, `a > 0` and `b > 0`.
 */
double reg_inc_beta(double x, double a, double b);

/// P(T <= t) for Student's t with `df` degrees of freedom. Throws DomainError unless `df > 0`.
double t_cdf(double t, double df);

/**
 * Two-tailed p-value `2 * (1 - t_cdf(|t|, df))`, computed directly from the upper tail
 * and clamped to `[kMinPValue, 1]`.
 */
double p_two_tailed(double t, double df);

/**
 * `floor(-log10(p))`, clamped to `[0, kDecimalCap]`.
 * Non-positive p is treated as underflow and mapped to the cap; p > 1 throws DomainError.
 */
int decimal_places(double p);

}

#endif
