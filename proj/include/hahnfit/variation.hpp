#ifndef HAHNFIT_VARIATION_HPP
#define HAHNFIT_VARIATION_HPP

#include "hahnfit/errors.hpp"
#include "hahnfit/quadrature.hpp"
#include "hahnfit/summation.hpp"

#include <algorithm>
#include <cmath>

namespace hahnfit
{

struct TVEstimate
{
    double value        = 0.0;
    long   sample_count = 0;
    bool   converged    = false;
};

inline constexpr long   tv_default_samples = 100000;
inline constexpr long   tv_max_samples     = 1L << 23;
inline constexpr double tv_tolerance       = 1e-6;

/// sum |f(x_{i+1}) - f(x_i)| over `intervals` equal panels of [-1, 1].
template < RealFunction F >
double tv_partition_sum(const F& f, long intervals)
{
    if (intervals < 1)
        throw DomainError{"tv_partition_sum: need at least one interval"};
    const double   n    = static_cast< double >(intervals);
    double         prev = f(-1.0);
    CompensatedSum acc;
    for (long i = 1; i <= intervals; ++i)
    {
        const double cur = f(-1.0 + 2.0 * static_cast< double >(i) / n);
        acc += std::abs(cur - prev);
        prev = cur;
    }
    return acc.value();
}

template < RealFunction F >
double grid_max_abs(const F& f, long intervals)
{
    const double n = static_cast< double >(intervals);
    double       m = 0.0;
    for (long i = 0; i <= intervals; ++i)
        m = std::max(m, std::abs(f(-1.0 + 2.0 * static_cast< double >(i) / n)));
    return m;
}

/// Total variation on [-1, 1] from nested equidistant partitions, doubled until
/// the relative change drops below 1e-6. Partitions are nested, so the
/// sequence of estimates never decreases.
template < RealFunction F >
TVEstimate tv_estimate(const F& f, long initial_samples = tv_default_samples)
{
    if (initial_samples < 1)
        throw DomainError{"tv_estimate: initial sample count must be positive"};
    long   samples  = initial_samples;
    double previous = tv_partition_sum(f, samples);
    while (2 * samples <= tv_max_samples)
    {
        samples *= 2;
        const double current = tv_partition_sum(f, samples);
        const bool   settled = std::abs(current - previous) <= tv_tolerance * std::abs(current);
        previous             = current;
        if (settled)
            return {previous, samples, true};
    }
    return {previous, samples, false};
}

struct ProductBound
{
    double measured   = 0.0;
    double bound      = 0.0;
    bool   conclusive = false;
    bool   holds      = false;
};

/// V[fg] against max|f| V[g] + max|g| V[f]; maxima are taken on the finest sampling grid.
template < RealFunction F, RealFunction G >
ProductBound product_bound_check(const F& f, const G& g, long initial_samples = tv_default_samples)
{
    const auto   fg       = [&](double x) { return f(x) * g(x); };
    const auto   tv_fg    = tv_estimate(fg, initial_samples);
    const auto   tv_f     = tv_estimate(f, initial_samples);
    const auto   tv_g     = tv_estimate(g, initial_samples);
    const long   finest   = std::max({tv_fg.sample_count, tv_f.sample_count, tv_g.sample_count});
    const double max_f    = grid_max_abs(f, finest);
    const double max_g    = grid_max_abs(g, finest);
    ProductBound result;
    result.measured   = tv_fg.value;
    result.bound      = max_f * tv_g.value + max_g * tv_f.value;
    result.conclusive = tv_fg.converged && tv_f.converged && tv_g.converged;
    result.holds      = result.measured <= result.bound * (1.0 + 1e-3);
    return result;
}

} // namespace hahnfit

#endif // HAHNFIT_VARIATION_HPP
