#ifndef HAHNFIT_JACOBI_HPP
#define HAHNFIT_JACOBI_HPP

#include "hahnfit/errors.hpp"
#include "hahnfit/numeric_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace hahnfit
{

/// Exponents of the weight (1-x)^alpha (1+x)^beta on [-1, 1].
struct JacobiParams
{
    double alpha = 0.0;
    double beta  = 0.0;

    JacobiParams() = default;
    JacobiParams(double a, double b) : alpha{a}, beta{b}
    {
        if (!(alpha > -1.0) || !(beta > -1.0))
            throw DomainError{"JacobiParams: alpha and beta must exceed -1"};
    }

    [[nodiscard]] bool symmetric() const { return alpha == beta; }

    [[nodiscard]] double weight(double x) const
    {
        return std::pow(1.0 - x, alpha) * std::pow(1.0 + x, beta);
    }
};

/// Coefficients of x P_k = alpha_k P_{k+1} + beta_k P_k + gamma_k P_{k-1}.
struct JacobiRecurrenceRow
{
    int    k       = 0;
    double alpha_k = 0.0;
    double beta_k  = 0.0;
    double gamma_k = 0.0;
};

enum class DomainCheck
{
    strict,
    lenient
};

inline JacobiRecurrenceRow jacobi_recurrence_row(const JacobiParams& p, int k)
{
    const double a = p.alpha;
    const double b = p.beta;
    const double s = a + b;
    JacobiRecurrenceRow row{k, 0.0, 0.0, 0.0};
    if (k == 0)
    {
        // k = 0 row with the removable (s+1)/(s+1) and s/s factors cancelled
        row.alpha_k = 2.0 / (s + 2.0);
        row.beta_k  = (b - a) / (s + 2.0);
        row.gamma_k = 0.0;
        return row;
    }
    const double kk = k;
    row.alpha_k     = 2.0 * (kk + 1.0) * (kk + s + 1.0) / ((2.0 * kk + s + 1.0) * (2.0 * kk + s + 2.0));
    row.beta_k      = (b * b - a * a) / ((2.0 * kk + s) * (2.0 * kk + s + 2.0));
    row.gamma_k     = 2.0 * (kk + a) * (kk + b) / ((2.0 * kk + s) * (2.0 * kk + s + 1.0));
    return row;
}

/// Immutable table of recurrence rows 0..max_degree-1 for one parameter pair.
class JacobiRecurrence
{
public:
    JacobiRecurrence(const JacobiParams& params, int max_degree) : params_{params}
    {
        rows_.reserve(static_cast< std::size_t >(std::max(max_degree, 0)));
        for (int k = 0; k < max_degree; ++k)
            rows_.push_back(jacobi_recurrence_row(params, k));
    }

    [[nodiscard]] const JacobiParams& params() const { return params_; }
    [[nodiscard]] int                 max_degree() const { return static_cast< int >(rows_.size()); }
    [[nodiscard]] const JacobiRecurrenceRow& row(int k) const { return rows_[static_cast< std::size_t >(k)]; }

    /// Writes P_0(x) .. P_{out.size()-1}(x).
    void eval_all(double x, std::span< double > out) const
    {
        if (out.empty())
            return;
        if (static_cast< int >(out.size()) > max_degree() + 1)
            throw FamilyExhausted{"JacobiRecurrence: table too short for requested degree"};
        double prev = 0.0;
        double cur  = 1.0;
        out[0]      = cur;
        for (std::size_t k = 0; k + 1 < out.size(); ++k)
        {
            const auto&  r    = rows_[k];
            const double next = ((x - r.beta_k) * cur - r.gamma_k * prev) / r.alpha_k;
            prev              = cur;
            cur               = next;
            out[k + 1]        = cur;
        }
    }

private:
    JacobiParams                       params_;
    std::vector< JacobiRecurrenceRow > rows_;
};

namespace detail
{
inline void check_jacobi_abscissa(double x, DomainCheck mode)
{
    if (mode == DomainCheck::strict && !(std::abs(x) <= 1.0))
        throw DomainError{"jacobi_eval: x = " + std::to_string(x) + " outside [-1, 1]"};
}

inline void require_symmetric(const JacobiParams& p, const char* what)
{
    if (!p.symmetric())
        throw UnsupportedParameters{std::string{what} + ": requires alpha == beta"};
}
} // namespace detail

/// P_k^{alpha,beta}(x) by forward three-term recurrence.
inline double jacobi_eval(const JacobiParams& params, int k, double x, DomainCheck mode = DomainCheck::strict)
{
    if (k < 0)
        throw DomainError{"jacobi_eval: negative degree"};
    detail::check_jacobi_abscissa(x, mode);
    double prev = 0.0;
    double cur  = 1.0;
    for (int j = 0; j < k; ++j)
    {
        const auto   r    = jacobi_recurrence_row(params, j);
        const double next = ((x - r.beta_k) * cur - r.gamma_k * prev) / r.alpha_k;
        prev              = cur;
        cur               = next;
    }
    return cur;
}

/// (P_k, P_k) with respect to (1-x)^alpha (1+x)^beta.
inline double jacobi_norm(const JacobiParams& params, int k)
{
    if (k < 0)
        throw DomainError{"jacobi_norm: negative degree"};
    const double a   = params.alpha;
    const double b   = params.beta;
    const double s   = a + b;
    const double kk  = k;
    double       log = (s + 1.0) * std::numbers::ln2 + log_gamma(kk + a + 1.0) + log_gamma(kk + b + 1.0);
    if (k == 0)
        log -= log_gamma(s + 2.0); // (s+1) Gamma(s+1) = Gamma(s+2)
    else
        log -= std::log(2.0 * kk + s + 1.0) + log_gamma(kk + 1.0) + log_gamma(kk + s + 1.0);
    return std::exp(log);
}

/// max |P_k^{alpha,alpha}| on [-1, 1], attained at x = 1.
inline double jacobi_max_bound(const JacobiParams& params, int k)
{
    detail::require_symmetric(params, "jacobi_max_bound");
    if (!(params.alpha > -0.5))
        throw UnsupportedParameters{"jacobi_max_bound: requires alpha > -1/2"};
    return log_binomial(k + params.alpha, k).value();
}

/// Upper bound 2n binom(n+alpha, n) on the total variation of P_n^{alpha,alpha}.
inline double jacobi_tv_bound(const JacobiParams& params, int n)
{
    detail::require_symmetric(params, "jacobi_tv_bound");
    if (!(params.alpha >= 0.0))
        throw UnsupportedParameters{"jacobi_tv_bound: requires alpha >= 0"};
    return 2.0 * n * log_binomial(n + params.alpha, n).value();
}

/// Gegenbauer-based bound on max |P_n^{alpha,alpha}(x) (1-x^2)^alpha|, alpha > 0.
inline double weighted_envelope_bound(const JacobiParams& params, int n)
{
    detail::require_symmetric(params, "weighted_envelope_bound");
    const double a = params.alpha;
    if (!(a > 0.0))
        throw UnsupportedParameters{"weighted_envelope_bound: requires alpha > 0"};
    const double nn  = n;
    double       log = log_gamma(2.0 * a + 1.0) + log_gamma(nn + a + 1.0) - log_gamma(a + 1.0) -
                 log_gamma(a + 0.5) - log_gamma(nn + 2.0 * a + 1.0);
    if (a >= 0.5)
        log += log_gamma(nn / 2.0 + a + 0.5) - log_gamma(nn / 2.0 + 1.0);
    else
        log += log_gamma(a) - 0.5 * std::log(std::numbers::pi);
    return std::exp(log);
}

/// Bound 2(n+1) max|P_n rho| on the total variation of P_n^{alpha,alpha} rho,
/// with the maximum replaced by weighted_envelope_bound.
inline double weighted_tv_bound(const JacobiParams& params, int n)
{
    return 2.0 * (n + 1) * weighted_envelope_bound(params, n);
}

} // namespace hahnfit

#endif // HAHNFIT_JACOBI_HPP
