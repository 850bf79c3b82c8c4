#ifndef HAHNFIT_QUADRATURE_HPP
#define HAHNFIT_QUADRATURE_HPP

#include "hahnfit/errors.hpp"
#include "hahnfit/jacobi.hpp"
#include "hahnfit/summation.hpp"

#include <cmath>
#include <concepts>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

namespace hahnfit
{

template < typename F >
concept RealFunction = std::invocable< const F&, double > &&
                       std::convertible_to< std::invoke_result_t< const F&, double >, double >;

struct GaussRule
{
    std::vector< double > nodes;
    std::vector< double > weights;
};

namespace detail
{
inline GaussRule build_gauss_legendre(int m)
{
    GaussRule rule;
    rule.nodes.resize(static_cast< std::size_t >(m));
    rule.weights.resize(static_cast< std::size_t >(m));
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i)
    {
        double z  = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p1 = 1.0;
            double p0 = 0.0;
            for (int j = 1; j <= m; ++j)
            {
                const double p2 = p0;
                p0              = p1;
                p1              = ((2.0 * j - 1.0) * z * p0 - (j - 1.0) * p2) / j;
            }
            dp               = m * (z * p1 - p0) / (z * z - 1.0);
            const double dz  = p1 / dp;
            z               -= dz;
            if (std::abs(dz) <= 1e-14)
            {
                // refresh the derivative at the converged node
                p1 = 1.0;
                p0 = 0.0;
                for (int j = 1; j <= m; ++j)
                {
                    const double p2 = p0;
                    p0              = p1;
                    p1              = ((2.0 * j - 1.0) * z * p0 - (j - 1.0) * p2) / j;
                }
                dp = m * (z * p1 - p0) / (z * z - 1.0);
                break;
            }
        }
        const double w                             = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[static_cast< std::size_t >(i)]         = -z;
        rule.nodes[static_cast< std::size_t >(m - 1 - i)] = z;
        rule.weights[static_cast< std::size_t >(i)]         = w;
        rule.weights[static_cast< std::size_t >(m - 1 - i)] = w;
    }
    if (m % 2 == 1)
        rule.nodes[static_cast< std::size_t >(m / 2)] = 0.0;
    return rule;
}
} // namespace detail

/// Gauss-Legendre nodes and weights on [-1, 1]; tables are built once and shared.
inline std::shared_ptr< const GaussRule > gauss_legendre_rule(int node_count)
{
    if (node_count < 1)
        throw DomainError{"gauss_legendre_rule: node count must be positive"};
    static std::mutex                                         mutex;
    static std::map< int, std::shared_ptr< const GaussRule > > cache;
    std::lock_guard lock{mutex};
    auto&           slot = cache[node_count];
    if (!slot)
        slot = std::make_shared< const GaussRule >(detail::build_gauss_legendre(node_count));
    return slot;
}

template < RealFunction F >
double gauss_legendre_integrate(const F& f, int node_count)
{
    const auto     rule = gauss_legendre_rule(node_count);
    CompensatedSum acc;
    for (std::size_t i = 0; i < rule->nodes.size(); ++i)
        acc += rule->weights[i] * f(rule->nodes[i]);
    return acc.value();
}

/// Two-panel Gauss-Legendre rule on [-1, 0] and [0, 1], m nodes per panel.
/// Functions with a kink at the origin keep spectral convergence.
inline GaussRule split_gauss_rule(int m)
{
    const auto panel = gauss_legendre_rule(m);
    GaussRule  rule;
    rule.nodes.reserve(2 * panel->nodes.size());
    rule.weights.reserve(2 * panel->nodes.size());
    for (double shift : {-0.5, 0.5})
        for (std::size_t i = 0; i < panel->nodes.size(); ++i)
        {
            rule.nodes.push_back(0.5 * panel->nodes[i] + shift);
            rule.weights.push_back(0.5 * panel->weights[i]);
        }
    return rule;
}

template < RealFunction F >
double split_gauss_integrate(const F& f, int nodes_per_panel)
{
    const auto     rule = split_gauss_rule(nodes_per_panel);
    CompensatedSum acc;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(rule.nodes[i]);
    return acc.value();
}

/// Composite trapezoid rule on N equal panels of [-1, 1].
template < RealFunction F >
double trapezoid_integrate(const F& f, long N)
{
    if (N < 1)
        throw DomainError{"trapezoid_integrate: N must be positive"};
    const double   n = static_cast< double >(N);
    CompensatedSum interior;
    for (long i = 1; i < N; ++i)
        interior += f(-1.0 + 2.0 * static_cast< double >(i) / n);
    return (2.0 / n) * interior.value() + (1.0 / n) * f(-1.0) + (1.0 / n) * f(1.0);
}

enum class QuadratureMethod
{
    gauss_legendre,
    trapezoid
};

struct QuadratureSpec
{
    QuadratureMethod method               = QuadratureMethod::gauss_legendre;
    long             node_count           = 64;
    double           refinement_tolerance = 1e-12;
};

template < RealFunction F >
double integrate(const QuadratureSpec& spec, const F& f)
{
    if (spec.method == QuadratureMethod::gauss_legendre)
    {
        if (spec.node_count < 2)
            throw DomainError{"integrate: Gauss-Legendre needs at least 2 nodes"};
        return gauss_legendre_integrate(f, static_cast< int >(spec.node_count));
    }
    return trapezoid_integrate(f, spec.node_count);
}

/// Coefficients (u, P_k) / (P_k, P_k) for k = 0..n with node doubling.
struct JacobiProjection
{
    std::vector< double > coefficients;
    bool                  converged  = false;
    int                   node_count = 0; // per panel
};

inline constexpr int    projection_initial_nodes = 32;
inline constexpr int    projection_max_nodes     = 1 << 14;
inline constexpr double projection_tolerance     = 1e-12;

/// Doubling stops when every coefficient's integral changes by less than the
/// tolerance relative to the integral of |u P_k rho| (a pure relative test
/// never settles for coefficients that vanish by symmetry).
template < RealFunction F >
JacobiProjection jacobi_projection(const F& u, const JacobiParams& params, int n)
{
    if (n < 0)
        throw DomainError{"jacobi_projection: negative degree"};
    const JacobiRecurrence recurrence{params, n};
    const auto             count = static_cast< std::size_t >(n + 1);
    std::vector< double >  basis(count);

    auto integrals = [&](int m, std::vector< double >& value, std::vector< double >& magnitude) {
        const auto                    rule = split_gauss_rule(m);
        std::vector< CompensatedSum > acc(count);
        std::vector< CompensatedSum > abs_acc(count);
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        {
            const double x = rule.nodes[i];
            recurrence.eval_all(x, basis);
            const double common = rule.weights[i] * u(x) * params.weight(x);
            for (std::size_t k = 0; k < count; ++k)
            {
                acc[k] += common * basis[k];
                abs_acc[k] += std::abs(common * basis[k]);
            }
        }
        value.resize(count);
        magnitude.resize(count);
        for (std::size_t k = 0; k < count; ++k)
        {
            value[k]     = acc[k].value();
            magnitude[k] = abs_acc[k].value();
        }
    };

    JacobiProjection      result;
    std::vector< double > previous;
    std::vector< double > current;
    std::vector< double > magnitude;
    int                   m = projection_initial_nodes;
    while (2 * m < n + 2)
        m *= 2;
    integrals(m, previous, magnitude);
    while (true)
    {
        const int next = 2 * m;
        if (next > projection_max_nodes)
            break;
        integrals(next, current, magnitude);
        m             = next;
        bool settled  = true;
        for (std::size_t k = 0; k < count; ++k)
            if (std::abs(current[k] - previous[k]) > projection_tolerance * magnitude[k])
                settled = false;
        previous.swap(current);
        if (settled)
        {
            result.converged = true;
            break;
        }
    }
    result.node_count = m;
    result.coefficients.resize(count);
    for (int k = 0; k <= n; ++k)
        result.coefficients[static_cast< std::size_t >(k)] = previous[static_cast< std::size_t >(k)] /
                                                              jacobi_norm(params, k);
    return result;
}

struct CoefficientResult
{
    double value      = 0.0;
    bool   converged  = false;
    int    node_count = 0;
};

/// Single continuous Jacobi coefficient (u, P_k) / (P_k, P_k).
template < RealFunction F >
CoefficientResult jacobi_coefficient_continuous(const F& u, const JacobiParams& params, int k)
{
    if (k < 0)
        throw DomainError{"jacobi_coefficient_continuous: negative degree"};
    const auto P = [&](double x) { return jacobi_eval(params, k, x); };
    const auto g = [&](double x) { return u(x) * P(x) * params.weight(x); };

    int    m        = projection_initial_nodes;
    double previous = split_gauss_integrate(g, m);
    bool   settled  = false;
    while (2 * m <= projection_max_nodes)
    {
        m *= 2;
        const double current   = split_gauss_integrate(g, m);
        const double magnitude = split_gauss_integrate([&](double x) { return std::abs(g(x)); }, m);
        settled                = std::abs(current - previous) <= projection_tolerance * magnitude;
        previous               = current;
        if (settled)
            break;
    }
    return {previous / jacobi_norm(params, k), settled, m};
}

} // namespace hahnfit

#endif // HAHNFIT_QUADRATURE_HPP
