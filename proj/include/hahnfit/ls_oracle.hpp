#ifndef HAHNFIT_LS_ORACLE_HPP
#define HAHNFIT_LS_ORACLE_HPP

// Brute-force weighted least squares on the grid, independent of the Hahn
// recurrence and closed-form norms. Used to cross-check the expansion route.

#include "hahnfit/errors.hpp"
#include "hahnfit/expansion.hpp"
#include "hahnfit/hahn.hpp"
#include "hahnfit/summation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace hahnfit
{

/// Weighted design matrix: column j holds sqrt(w_mu) P_j(x_mu) with Legendre P_j.
/// Weights are omega(mu) rescaled by their maximum, which leaves the fit unchanged.
struct DesignMatrix
{
    long                                 rows = 0;
    int                                  degree = 0;
    std::vector< double >                weights;
    std::vector< std::vector< double > > columns;
};

namespace detail
{
// omega(mu) by running products binom(alpha+mu, mu) = prod_{i<=mu} (alpha+i)/i.
inline std::vector< double > oracle_weights(const HahnContext& ctx)
{
    const long            N = ctx.N();
    std::vector< double > left(static_cast< std::size_t >(N + 1));
    std::vector< double > right(static_cast< std::size_t >(N + 1));
    double                lsum = 0.0;
    double                rsum = 0.0;
    left[0]                    = 0.0;
    right[0]                   = 0.0;
    for (long i = 1; i <= N; ++i)
    {
        lsum += std::log((ctx.alpha() + static_cast< double >(i)) / static_cast< double >(i));
        rsum += std::log((ctx.beta() + static_cast< double >(i)) / static_cast< double >(i));
        left[static_cast< std::size_t >(i)]  = lsum;
        right[static_cast< std::size_t >(i)] = rsum;
    }
    std::vector< double > logw(static_cast< std::size_t >(N + 1));
    for (long mu = 0; mu <= N; ++mu)
        logw[static_cast< std::size_t >(mu)] = left[static_cast< std::size_t >(mu)] +
                                               right[static_cast< std::size_t >(N - mu)];
    const double top = *std::max_element(logw.begin(), logw.end());
    for (auto& v : logw)
        v = std::exp(v - top);
    return logw;
}

inline double dot(const std::vector< double >& a, const std::vector< double >& b)
{
    CompensatedSum acc;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return acc.value();
}
} // namespace detail

inline DesignMatrix build_design_matrix(const HahnContext& ctx, int n)
{
    if (n < 0 || n > ctx.N())
        throw FamilyExhausted{"design matrix: degree must lie in [0, N]"};
    const Grid   grid{ctx.N()};
    DesignMatrix m;
    m.rows    = ctx.N() + 1;
    m.degree  = n;
    m.weights = detail::oracle_weights(ctx);
    m.columns.assign(static_cast< std::size_t >(n + 1), std::vector< double >(static_cast< std::size_t >(m.rows)));
    for (long mu = 0; mu < m.rows; ++mu)
    {
        const double x  = grid.node(mu);
        const double sw = std::sqrt(m.weights[static_cast< std::size_t >(mu)]);
        double       p0 = 1.0;
        double       p1 = x;
        for (int j = 0; j <= n; ++j)
        {
            double pj;
            if (j == 0)
                pj = p0;
            else if (j == 1)
                pj = p1;
            else
            {
                pj = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = pj;
            }
            m.columns[static_cast< std::size_t >(j)][static_cast< std::size_t >(mu)] = sw * pj;
        }
    }
    return m;
}

/// Values at the grid nodes of the weighted least-squares polynomial of degree <= n,
/// via modified Gram-Schmidt with one reorthogonalization pass.
inline std::vector< double > oracle_fit(const SampledFunction& f, const HahnContext& ctx, int n)
{
    if (f.N() != ctx.N())
        throw ShapeError{"oracle_fit: sample count does not match grid"};
    auto                                 design = build_design_matrix(ctx, n);
    std::vector< std::vector< double > > basis;
    basis.reserve(design.columns.size());
    for (auto& column : design.columns)
    {
        const double original = std::sqrt(detail::dot(column, column));
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis)
            {
                const double r = detail::dot(q, column);
                for (std::size_t i = 0; i < column.size(); ++i)
                    column[i] -= r * q[i];
            }
        const double norm = std::sqrt(detail::dot(column, column));
        if (!(norm > 1e-12 * original))
            throw ConditioningError{"oracle_fit: design matrix is numerically rank deficient at column " +
                                    std::to_string(basis.size())};
        for (auto& v : column)
            v /= norm;
        basis.push_back(std::move(column));
    }

    std::vector< double > rhs(static_cast< std::size_t >(design.rows));
    for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] = std::sqrt(design.weights[i]) * f.values[i];

    std::vector< CompensatedSum > projection(rhs.size());
    for (const auto& q : basis)
    {
        const double r = detail::dot(q, rhs);
        for (std::size_t i = 0; i < rhs.size(); ++i)
            projection[i] += r * q[i];
    }
    std::vector< double > fitted(rhs.size());
    for (std::size_t i = 0; i < rhs.size(); ++i)
        fitted[i] = projection[i].value() / std::sqrt(design.weights[i]);
    return fitted;
}

/// sqrt(sum_mu omega(mu) (f - fitted)^2) with the unscaled Hahn weight.
inline double residual_norm(const SampledFunction& f, const std::vector< double >& fitted, const HahnContext& ctx)
{
    if (f.N() != ctx.N() || fitted.size() != f.values.size())
        throw ShapeError{"residual_norm: sample counts do not match"};
    CompensatedSum acc;
    for (long mu = 0; mu <= ctx.N(); ++mu)
    {
        const auto   i = static_cast< std::size_t >(mu);
        const double r = f.values[i] - fitted[i];
        acc += hahn_weight(ctx, mu).value() * r * r;
    }
    return std::sqrt(acc.value());
}

} // namespace hahnfit

#endif // HAHNFIT_LS_ORACLE_HPP
