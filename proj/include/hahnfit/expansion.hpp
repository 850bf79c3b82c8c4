#ifndef HAHNFIT_EXPANSION_HPP
#define HAHNFIT_EXPANSION_HPP

#include "hahnfit/errors.hpp"
#include "hahnfit/hahn.hpp"
#include "hahnfit/jacobi.hpp"
#include "hahnfit/quadrature.hpp"
#include "hahnfit/summation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hahnfit
{

/// Equidistant nodes x_mu = -1 + 2 mu / N, mu = 0..N, each computed directly.
class Grid
{
public:
    explicit Grid(long N) : N_{N}
    {
        if (N < 1)
            throw DomainError{"Grid: N must be positive"};
    }

    [[nodiscard]] long   N() const { return N_; }
    [[nodiscard]] long   size() const { return N_ + 1; }
    [[nodiscard]] double node(long mu) const
    {
        return -1.0 + 2.0 * static_cast< double >(mu) / static_cast< double >(N_);
    }

    [[nodiscard]] std::vector< double > nodes() const
    {
        std::vector< double > out(static_cast< std::size_t >(size()));
        for (long mu = 0; mu <= N_; ++mu)
            out[static_cast< std::size_t >(mu)] = node(mu);
        return out;
    }

private:
    long N_;
};

/// Point values f(x_mu), mu = 0..N.
struct SampledFunction
{
    std::vector< double > values;
    std::string           source_label;

    [[nodiscard]] long N() const { return static_cast< long >(values.size()) - 1; }
};

template < RealFunction F >
SampledFunction sample(const F& f, const Grid& grid, std::string label = {})
{
    SampledFunction s{std::vector< double >(static_cast< std::size_t >(grid.size())), std::move(label)};
    for (long mu = 0; mu <= grid.N(); ++mu)
    {
        const double v = f(grid.node(mu));
        if (!std::isfinite(v))
            throw DomainError{"sample: non-finite value at x = " + std::to_string(grid.node(mu))};
        s.values[static_cast< std::size_t >(mu)] = v;
    }
    return s;
}

enum class Family
{
    hahn,
    jacobi
};

/// Expansion coefficients c_0..c_n of a truncated Hahn or Jacobi series.
struct CoefficientVector
{
    Family                family = Family::hahn;
    double                alpha  = 0.0;
    double                beta   = 0.0;
    long                  N      = 0; // Hahn only
    std::vector< double > coefficients;
    bool                  accuracy_warning = false;

    [[nodiscard]] int degree() const { return static_cast< int >(coefficients.size()) - 1; }
};

enum class Admissibility
{
    strict,
    lenient
};

namespace detail
{
inline void check_shape(const SampledFunction& f, const HahnContext& ctx)
{
    if (f.N() != ctx.N())
        throw ShapeError{"sampled function '" + f.source_label + "' has " + std::to_string(f.values.size()) +
                         " values, grid has " + std::to_string(ctx.N() + 1)};
}

inline void check_admissible(const HahnContext& ctx, int n, Admissibility mode)
{
    if (mode == Admissibility::lenient)
        return;
    if (!(ctx.alpha() > -0.5))
        throw AdmissibilityError{"strict mode: no admissible degree bound for alpha <= -1/2"};
    const double bound = admissible_degree(ctx.alpha(), ctx.N());
    if (static_cast< double >(n) > bound)
        throw AdmissibilityError{"degree " + std::to_string(n) + " exceeds n(alpha, N) = " + std::to_string(bound)};
}
} // namespace detail

/// <f, g>_omega = sum_mu f(mu) g(mu) omega(mu).
inline double discrete_inner_product(const SampledFunction& f, const SampledFunction& g, const HahnContext& ctx)
{
    detail::check_shape(f, ctx);
    detail::check_shape(g, ctx);
    CompensatedSum acc;
    for (long mu = 0; mu <= ctx.N(); ++mu)
    {
        const auto i = static_cast< std::size_t >(mu);
        acc += f.values[i] * g.values[i] * hahn_weight(ctx, mu).value();
    }
    return acc.value();
}

/// Samples of Q_k at the integer abscissae, as a SampledFunction on ctx's grid.
inline SampledFunction sample_hahn(const HahnContext& ctx, int k)
{
    SampledFunction s{std::vector< double >(static_cast< std::size_t >(ctx.N() + 1)), "Q_" + std::to_string(k)};
    for (long mu = 0; mu <= ctx.N(); ++mu)
        s.values[static_cast< std::size_t >(mu)] = hahn_eval(ctx, k, static_cast< double >(mu));
    return s;
}

/// c_k = <f, Q_k>_omega / <Q_k, Q_k>_omega for k = 0..n.
inline CoefficientVector hahn_coefficients(const SampledFunction& f,
                                           const HahnContext&     ctx,
                                           int                    n,
                                           Admissibility          mode = Admissibility::strict)
{
    detail::check_shape(f, ctx);
    if (n < 0)
        throw DomainError{"hahn_coefficients: negative degree"};
    if (n > ctx.N())
        throw FamilyExhausted{"hahn_coefficients: degree " + std::to_string(n) + " exceeds grid N = " +
                              std::to_string(ctx.N())};
    detail::check_admissible(ctx, n, mode);

    const HahnRecurrence          recurrence{ctx, n};
    const auto                    count = static_cast< std::size_t >(n + 1);
    std::vector< double >         q(count);
    std::vector< CompensatedSum > acc(count);
    for (long mu = 0; mu <= ctx.N(); ++mu)
    {
        recurrence.eval_all(static_cast< double >(mu), q);
        const double fw = f.values[static_cast< std::size_t >(mu)] * hahn_weight(ctx, mu).value();
        for (std::size_t k = 0; k < count; ++k)
            acc[k] += fw * q[k];
    }
    CoefficientVector out{Family::hahn, ctx.alpha(), ctx.beta(), ctx.N(), std::vector< double >(count), false};
    for (std::size_t k = 0; k < count; ++k)
        out.coefficients[k] = acc[k].value() / hahn_norm(ctx, static_cast< int >(k));
    return out;
}

namespace detail
{
inline void check_hahn_coefficients(const CoefficientVector& c, const HahnContext& ctx)
{
    if (c.family != Family::hahn || c.N != ctx.N() || c.alpha != ctx.alpha() || c.beta != ctx.beta())
        throw ShapeError{"coefficient vector was not built on this Hahn context"};
}
} // namespace detail

/// LS_n^N[f](x) = sum_k c_k Q_k(N(1+x)/2).
inline double ls_evaluate(const CoefficientVector& coeffs, const HahnContext& ctx, double x)
{
    detail::check_hahn_coefficients(coeffs, ctx);
    const HahnRecurrence  recurrence{ctx, coeffs.degree()};
    std::vector< double > q(coeffs.coefficients.size());
    recurrence.eval_all(ctx.to_abscissa(x), q);
    CompensatedSum acc;
    for (std::size_t k = 0; k < q.size(); ++k)
        acc += coeffs.coefficients[k] * q[k];
    return acc.value();
}

/// LS_n^N[f] at every grid node, reusing one recurrence table.
inline std::vector< double > ls_evaluate_nodes(const CoefficientVector& coeffs, const HahnContext& ctx)
{
    detail::check_hahn_coefficients(coeffs, ctx);
    const HahnRecurrence  recurrence{ctx, coeffs.degree()};
    std::vector< double > q(coeffs.coefficients.size());
    std::vector< double > out(static_cast< std::size_t >(ctx.N() + 1));
    for (long mu = 0; mu <= ctx.N(); ++mu)
    {
        recurrence.eval_all(static_cast< double >(mu), q);
        CompensatedSum acc;
        for (std::size_t k = 0; k < q.size(); ++k)
            acc += coeffs.coefficients[k] * q[k];
        out[static_cast< std::size_t >(mu)] = acc.value();
    }
    return out;
}

/// Continuous Jacobi coefficients (u, P_k)_rho / (P_k, P_k)_rho, k = 0..n.
template < RealFunction F >
CoefficientVector jacobi_coefficients(const F& u, const JacobiParams& params, int n)
{
    auto projection = jacobi_projection(u, params, n);
    return {Family::jacobi, params.alpha, params.beta, 0, std::move(projection.coefficients), !projection.converged};
}

inline double jacobi_series_evaluate(const CoefficientVector& coeffs, double x)
{
    if (coeffs.family != Family::jacobi)
        throw ShapeError{"jacobi_series_evaluate: not a Jacobi coefficient vector"};
    const JacobiRecurrence recurrence{{coeffs.alpha, coeffs.beta}, coeffs.degree()};
    std::vector< double >  p(coeffs.coefficients.size());
    recurrence.eval_all(x, p);
    CompensatedSum acc;
    for (std::size_t k = 0; k < p.size(); ++k)
        acc += coeffs.coefficients[k] * p[k];
    return acc.value();
}

struct SeriesValue
{
    double value            = 0.0;
    bool   accuracy_warning = false;
};

/// Truncated Jacobi series sum_{k <= n} (u, P_k) / (P_k, P_k) P_k(x).
template < RealFunction F >
SeriesValue jacobi_partial_sum(const F& u, const JacobiParams& params, int n, double x)
{
    detail::check_jacobi_abscissa(x, DomainCheck::strict);
    const auto coeffs = jacobi_coefficients(u, params, n);
    return {jacobi_series_evaluate(coeffs, x), coeffs.accuracy_warning};
}

/// n^{3 + alpha + max(1, alpha)} / N.
inline double bound_term(double alpha, int n, long N)
{
    return std::pow(static_cast< double >(n), 3.0 + alpha + std::max(1.0, alpha)) / static_cast< double >(N);
}

struct ErrorPair
{
    double sup_hahn_err     = 0.0;
    double sup_jacobi_err   = 0.0;
    double bound_term       = 0.0;
    bool   accuracy_warning = false;
};

struct ErrorPairOptions
{
    Admissibility admissibility  = Admissibility::strict;
    int           offgrid_points = 100;
    std::uint64_t seed           = 20240601;
};

/// Sup errors of the least-squares fit and of the Jacobi partial sum over the
/// grid nodes plus a seeded set of off-grid points in (-1, 1).
template < RealFunction F >
ErrorPair pointwise_error_pair(const F& u, const HahnContext& ctx, int n, const ErrorPairOptions& options = {})
{
    const Grid grid{ctx.N()};
    const auto samples = sample(u, grid, "u");
    const auto hahn    = hahn_coefficients(samples, ctx, n, options.admissibility);
    const auto jacobi  = jacobi_coefficients(u, ctx.limit_params(), n);

    const HahnRecurrence   hahn_rec{ctx, n};
    const JacobiRecurrence jacobi_rec{ctx.limit_params(), n};
    std::vector< double >  q(static_cast< std::size_t >(n + 1));
    std::vector< double >  p(q.size());

    double sup_hahn   = 0.0;
    double sup_jacobi = 0.0;
    auto   visit      = [&](double x, double abscissa, double ux) {
        hahn_rec.eval_all(abscissa, q);
        jacobi_rec.eval_all(x, p);
        CompensatedSum ls;
        CompensatedSum js;
        for (std::size_t k = 0; k < q.size(); ++k)
        {
            ls += hahn.coefficients[k] * q[k];
            js += jacobi.coefficients[k] * p[k];
        }
        sup_hahn   = std::max(sup_hahn, std::abs(ux - ls.value()));
        sup_jacobi = std::max(sup_jacobi, std::abs(ux - js.value()));
    };

    for (long mu = 0; mu <= ctx.N(); ++mu)
        visit(grid.node(mu), static_cast< double >(mu), samples.values[static_cast< std::size_t >(mu)]);

    std::mt19937_64                          rng{options.seed};
    std::uniform_real_distribution< double > dist{-1.0, 1.0};
    for (int i = 0; i < options.offgrid_points; ++i)
    {
        const double x = dist(rng);
        visit(x, ctx.to_abscissa(x), u(x));
    }
    return {sup_hahn, sup_jacobi, bound_term(ctx.alpha(), n, ctx.N()), jacobi.accuracy_warning};
}

} // namespace hahnfit

#endif // HAHNFIT_EXPANSION_HPP
