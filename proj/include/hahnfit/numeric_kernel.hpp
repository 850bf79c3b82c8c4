#ifndef HAHNFIT_NUMERIC_KERNEL_HPP
#define HAHNFIT_NUMERIC_KERNEL_HPP

#include "hahnfit/errors.hpp"
#include "hahnfit/summation.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hahnfit
{

/// A real number stored as sign and natural log of its magnitude.
/// sign == 0 marks an exact zero; log_magnitude is then meaningless.
struct LogValue
{
    double log_magnitude = 0.0;
    int    sign          = 1;

    static constexpr LogValue one() { return {0.0, 1}; }
    static constexpr LogValue zero() { return {0.0, 0}; }

    static LogValue from(double v)
    {
        if (v == 0.0)
            return zero();
        return {std::log(std::abs(v)), v > 0 ? 1 : -1};
    }

    [[nodiscard]] constexpr bool is_zero() const { return sign == 0; }

    [[nodiscard]] double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }

    friend LogValue operator*(LogValue a, LogValue b)
    {
        if (a.is_zero() || b.is_zero())
            return zero();
        return {a.log_magnitude + b.log_magnitude, a.sign * b.sign};
    }

    friend LogValue operator/(LogValue a, LogValue b)
    {
        if (b.is_zero())
            throw DomainError{"LogValue: division by exact zero"};
        if (a.is_zero())
            return zero();
        return {a.log_magnitude - b.log_magnitude, a.sign * b.sign};
    }

    LogValue& operator*=(LogValue o) { return *this = *this * o; }
    LogValue& operator/=(LogValue o) { return *this = *this / o; }

    /// Integer power; negative exponents allowed for nonzero values.
    [[nodiscard]] LogValue pow(int e) const
    {
        if (is_zero())
        {
            if (e <= 0)
                throw DomainError{"LogValue: nonpositive power of zero"};
            return zero();
        }
        return {e * log_magnitude, (e % 2 == 0) ? 1 : sign};
    }
};

namespace detail
{
inline bool is_integer(double x)
{
    return std::isfinite(x) && std::floor(x) == x;
}

inline bool is_nonpositive_integer(double x)
{
    return x <= 0.0 && is_integer(x);
}

// Stirling tail sum_j B_{2j} / (2j (2j-1) z^{2j-1}), valid for z >= 15.
inline double stirling_tail(double z)
{
    static constexpr std::array< double, 8 > coeff = {1.0 / 12.0,
                                                      -1.0 / 360.0,
                                                      1.0 / 1260.0,
                                                      -1.0 / 1680.0,
                                                      1.0 / 1188.0,
                                                      -691.0 / 360360.0,
                                                      1.0 / 156.0,
                                                      -3617.0 / 122400.0};
    const double inv  = 1.0 / z;
    const double inv2 = inv * inv;
    double       acc  = 0.0;
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it)
        acc = acc * inv2 + *it;
    return acc * inv;
}

inline constexpr double stirling_threshold = 15.0;
} // namespace detail

/// ln Gamma(x) for x > 0. Stirling series above 15, upward shift below;
/// small integers go through the exact factorial.
inline double log_gamma(double x)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError{"log_gamma: argument must be positive and finite, got " + std::to_string(x)};

    if (detail::is_integer(x) && x <= 23.0)
    {
        double f = 1.0;
        for (int i = 2; i < static_cast< int >(x); ++i)
            f *= i;
        return std::log(f);
    }

    double shift_log = 0.0;
    if (x < detail::stirling_threshold)
    {
        double product = 1.0;
        while (x < detail::stirling_threshold)
        {
            product *= x;
            x += 1.0;
        }
        shift_log = std::log(product);
    }
    static const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);
    return (x - 0.5) * std::log(x) - x + half_log_two_pi + detail::stirling_tail(x) - shift_log;
}

/// ln Gamma(x + d) - ln Gamma(x) for x > 0, x + d > 0, without forming the
/// two large log-gammas when that would cancel badly.
inline double log_gamma_ratio(double x, double d)
{
    if (!(x > 0.0) || !(x + d > 0.0))
        throw DomainError{"log_gamma_ratio: arguments must be positive"};
    if (d == 0.0)
        return 0.0;

    if (detail::is_integer(d) && std::abs(d) <= 64.0)
    {
        CompensatedSum acc;
        const int      steps = static_cast< int >(std::abs(d));
        const double   base  = d > 0 ? x : x + d;
        for (int i = 0; i < steps; ++i)
            acc += std::log(base + i);
        return d > 0 ? acc.value() : -acc.value();
    }

    const double y = x + d;
    if (x >= detail::stirling_threshold && y >= detail::stirling_threshold)
    {
        // (y - 1/2) ln y - (x - 1/2) ln x - d, regrouped around log1p(d/x).
        const double main = (x - 0.5) * std::log1p(d / x) + d * std::log(y) - d;
        return main + (detail::stirling_tail(y) - detail::stirling_tail(x));
    }
    return log_gamma(y) - log_gamma(x);
}

/// Rising factorial a (a+1) ... (a+k-1). Nonpositive factors are tracked by sign.
inline LogValue pochhammer(double a, long k)
{
    if (k < 0)
        throw DomainError{"pochhammer: negative count"};
    if (k == 0)
        return LogValue::one();
    if (detail::is_nonpositive_integer(a) && static_cast< double >(k) > -a)
        return LogValue::zero();

    LogValue result = LogValue::one();
    long     negative_count = 0;
    if (a < 0.0)
    {
        // factors a, a+1, ..., a+m-1 are negative
        negative_count = std::min< long >(k, static_cast< long >(std::ceil(-a)));
        if (detail::is_integer(a))
            negative_count = std::min< long >(k, static_cast< long >(-a));
        const double magnitude_top = -a; // |a|, |a|-1, ..., |a|-m+1
        const double low           = magnitude_top - static_cast< double >(negative_count) + 1.0;
        result.log_magnitude       = log_gamma_ratio(low, static_cast< double >(negative_count));
        result.sign                = (negative_count % 2 == 0) ? 1 : -1;
    }
    const long positive_count = k - negative_count;
    if (positive_count > 0)
        result.log_magnitude += log_gamma_ratio(a + static_cast< double >(negative_count),
                                                static_cast< double >(positive_count));
    return result;
}

/// Generalized binomial coefficient binom(top, k) = Gamma(top+1) / (Gamma(k+1) Gamma(top-k+1)).
inline LogValue log_binomial(double top, long k)
{
    if (k < 0)
        throw DomainError{"log_binomial: negative lower index"};
    const double rest = top - static_cast< double >(k); // top - k
    if (detail::is_nonpositive_integer(rest + 1.0))
        throw DomainError{"log_binomial: Gamma pole at top-k+1 = " + std::to_string(rest + 1.0)};
    if (k == 0)
        return LogValue::one();

    if (k <= 64)
    {
        // prod_{i=1}^{k} (rest + i) / i
        CompensatedSum acc;
        int            sign = 1;
        for (long i = 1; i <= k; ++i)
        {
            const double ratio = (rest + static_cast< double >(i)) / static_cast< double >(i);
            if (ratio < 0)
                sign = -sign;
            acc += std::log(std::abs(ratio));
        }
        return {acc.value(), sign};
    }
    if (rest + 1.0 > 0.0)
        return {log_gamma_ratio(static_cast< double >(k) + 1.0, rest) - log_gamma(rest + 1.0), 1};
    return pochhammer(rest + 1.0, k) / LogValue{log_gamma(static_cast< double >(k) + 1.0), 1};
}

/// binom(top, bottom) for real bottom > -1 and top - bottom > -1 via Gamma.
inline double log_binomial_real(double top, double bottom)
{
    if (!(bottom > -1.0) || !(top - bottom > -1.0))
        throw DomainError{"log_binomial_real: arguments outside the positive Gamma range"};
    return log_gamma_ratio(bottom + 1.0, top - bottom) - log_gamma(top - bottom + 1.0);
}

/// Two-term large-N estimate of N^{b-a} Gamma(N+a) / Gamma(N+b).
inline double gamma_ratio_estimate(double N, double a, double b)
{
    return 1.0 + (a - b) * (a + b - 1.0) / (2.0 * N);
}

/// Exact N^{b-a} Gamma(N+a) / Gamma(N+b), evaluated in log space.
inline double gamma_ratio_exact(double N, double a, double b)
{
    return std::exp((b - a) * std::log(N) + log_gamma_ratio(N + b, a - b));
}

} // namespace hahnfit

#endif // HAHNFIT_NUMERIC_KERNEL_HPP
