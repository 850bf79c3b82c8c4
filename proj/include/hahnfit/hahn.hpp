#ifndef HAHNFIT_HAHN_HPP
#define HAHNFIT_HAHN_HPP

#include "hahnfit/errors.hpp"
#include "hahnfit/jacobi.hpp"
#include "hahnfit/numeric_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace hahnfit
{

/// Parameters (alpha, beta, N) of the Hahn family Q_k(x; alpha, beta, N) on {0, ..., N}.
class HahnContext
{
public:
    HahnContext(double alpha, double beta, long N) : alpha_{alpha}, beta_{beta}, N_{N}
    {
        if (!(alpha > -1.0) || !(beta > -1.0))
            throw DomainError{"HahnContext: alpha and beta must exceed -1"};
        if (N < 1)
            throw DomainError{"HahnContext: N must be positive"};
    }

    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] double beta() const { return beta_; }
    [[nodiscard]] long   N() const { return N_; }
    [[nodiscard]] bool   symmetric() const { return alpha_ == beta_; }

    /// Abscissa N(1+t)/2 that corresponds to t in [-1, 1].
    [[nodiscard]] double to_abscissa(double t) const { return 0.5 * static_cast< double >(N_) * (1.0 + t); }

    /// Continuous counterpart of the family: Q_k(N(1+t)/2) tends to P_k^{beta,alpha}(t).
    [[nodiscard]] JacobiParams limit_params() const { return {beta_, alpha_}; }

private:
    double alpha_;
    double beta_;
    long   N_;
};

/// Coefficients of -x Q_k = A_k Q_{k+1} - (A_k + C_k) Q_k + C_k Q_{k-1}.
struct HahnRecurrenceRow
{
    int    k   = 0;
    double A_k = 0.0;
    double C_k = 0.0;
};

inline HahnRecurrenceRow hahn_recurrence_row(const HahnContext& ctx, int k)
{
    const double a  = ctx.alpha();
    const double b  = ctx.beta();
    const double s  = a + b;
    const double N  = static_cast< double >(ctx.N());
    const double kk = k;
    HahnRecurrenceRow row{k, 0.0, 0.0};
    if (k == 0)
    {
        row.A_k = (a + 1.0) * N / (s + 2.0);
        return row;
    }
    row.A_k = (kk + s + 1.0) * (kk + a + 1.0) * (N - kk) / ((2.0 * kk + s + 1.0) * (2.0 * kk + s + 2.0));
    row.C_k = kk * (kk + s + N + 1.0) * (kk + b) / ((2.0 * kk + s) * (2.0 * kk + s + 1.0));
    return row;
}

/// Recurrence rows 0..max_degree-1, enough to evaluate Q_0..Q_max_degree.
class HahnRecurrence
{
public:
    HahnRecurrence(const HahnContext& ctx, int max_degree) : ctx_{ctx}
    {
        if (max_degree < 0)
            throw DomainError{"HahnRecurrence: negative degree"};
        if (max_degree > ctx.N())
            throw FamilyExhausted{"Hahn degree " + std::to_string(max_degree) + " exceeds N = " +
                                  std::to_string(ctx.N())};
        rows_.reserve(static_cast< std::size_t >(max_degree));
        for (int k = 0; k < max_degree; ++k)
        {
            rows_.push_back(hahn_recurrence_row(ctx, k));
            if (rows_.back().A_k == 0.0)
                throw DegenerateRecurrence{"Hahn recurrence: A_" + std::to_string(k) + " vanishes"};
        }
    }

    [[nodiscard]] const HahnContext&       context() const { return ctx_; }
    [[nodiscard]] int                      max_degree() const { return static_cast< int >(rows_.size()); }
    [[nodiscard]] const HahnRecurrenceRow& row(int k) const { return rows_[static_cast< std::size_t >(k)]; }

    /// Writes Q_0(x) .. Q_{out.size()-1}(x).
    void eval_all(double x, std::span< double > out) const
    {
        if (out.empty())
            return;
        if (static_cast< int >(out.size()) > max_degree() + 1)
            throw FamilyExhausted{"HahnRecurrence: table too short for requested degree"};
        double prev = 0.0;
        double cur  = 1.0;
        out[0]      = cur;
        for (std::size_t k = 0; k + 1 < out.size(); ++k)
        {
            const auto&  r    = rows_[k];
            const double next = ((r.A_k + r.C_k - x) * cur - r.C_k * prev) / r.A_k;
            prev              = cur;
            cur               = next;
            out[k + 1]        = cur;
        }
    }

private:
    HahnContext                      ctx_;
    std::vector< HahnRecurrenceRow > rows_;
};

/// Q_k(x; alpha, beta, N) at real x by forward recurrence.
inline double hahn_eval(const HahnContext& ctx, int k, double x)
{
    if (k < 0)
        throw DomainError{"hahn_eval: negative degree"};
    if (k > ctx.N())
        throw FamilyExhausted{"hahn_eval: degree " + std::to_string(k) + " exceeds N = " + std::to_string(ctx.N())};
    double prev = 0.0;
    double cur  = 1.0;
    for (int j = 0; j < k; ++j)
    {
        const auto r = hahn_recurrence_row(ctx, j);
        if (r.A_k == 0.0)
            throw DegenerateRecurrence{"hahn_eval: A_" + std::to_string(j) + " vanishes"};
        const double next = ((r.A_k + r.C_k - x) * cur - r.C_k * prev) / r.A_k;
        prev              = cur;
        cur               = next;
    }
    return cur;
}

/// omega(x) = binom(alpha+x, x) binom(beta+N-x, N-x) at an integer abscissa.
inline LogValue hahn_weight(const HahnContext& ctx, long x)
{
    if (x < 0 || x > ctx.N())
        throw DomainError{"hahn_weight: abscissa " + std::to_string(x) + " outside [0, N]"};
    return log_binomial(ctx.alpha() + static_cast< double >(x), x) *
           log_binomial(ctx.beta() + static_cast< double >(ctx.N() - x), ctx.N() - x);
}

/// omega at a real abscissa in [0, N], via Gamma functions.
inline LogValue hahn_weight_real(const HahnContext& ctx, double x)
{
    const double N = static_cast< double >(ctx.N());
    if (!(x >= 0.0) || !(x <= N))
        throw DomainError{"hahn_weight_real: abscissa outside [0, N]"};
    return {log_binomial_real(ctx.alpha() + x, x) + log_binomial_real(ctx.beta() + N - x, N - x), 1};
}

/// omega(0), ..., omega(N) as plain doubles.
inline std::vector< double > hahn_weights(const HahnContext& ctx)
{
    std::vector< double > w(static_cast< std::size_t >(ctx.N() + 1));
    for (long x = 0; x <= ctx.N(); ++x)
        w[static_cast< std::size_t >(x)] = hahn_weight(ctx, x).value();
    return w;
}

/// Real-valued degree bound n(alpha, N) under which max |Q_n(.; alpha, alpha, N)| = 1.
inline double admissible_degree(double alpha, long N)
{
    if (!(alpha > -0.5))
        throw DomainError{"admissible_degree: requires alpha > -1/2"};
    const double a = alpha;
    return 0.5 - a + 0.5 * std::sqrt((2.0 * a + 1.0) * (2.0 * a + 2.0 * static_cast< double >(N) + 1.0));
}

/// <Q_k, Q_k>_omega from the closed form. (-1)^k / (-N)_k is folded into
/// (N-k)!/N! and the large Gamma quotients are taken as ratios.
inline double hahn_norm(const HahnContext& ctx, int k)
{
    if (k < 0 || k > ctx.N())
        throw FamilyExhausted{"hahn_norm: degree outside [0, N]"};
    const double a  = ctx.alpha();
    const double b  = ctx.beta();
    const double s  = a + b;
    const double N  = static_cast< double >(ctx.N());
    const double kk = k;

    double log = log_gamma_ratio(N + 1.0, kk + s + 1.0)   // Gamma(N+k+s+2) / N!
                 - log_gamma_ratio(N - kk + 1.0, kk)       // (N-k)! / N!
                 + log_gamma_ratio(b + 1.0, kk)            // (beta+1)_k
                 + log_gamma(kk + 1.0)                     // k!
                 - log_gamma_ratio(a + 1.0, kk);           // (alpha+1)_k
    if (k == 0)
        log -= log_gamma(s + 2.0);
    else
        log -= std::log(2.0 * kk + s + 1.0) + log_gamma(kk + s + 1.0);
    return std::exp(log);
}

/// Jacobi-normalized Hahn polynomial (-1)^k binom(k+alpha, k) Q_k(N(1+t)/2; alpha, alpha, N).
inline double normalized_hahn_eval(const HahnContext& ctx, int k, double t)
{
    if (!ctx.symmetric())
        throw UnsupportedParameters{"normalized_hahn_eval: requires alpha == beta"};
    const double scale = log_binomial(k + ctx.alpha(), k).value();
    const double sign  = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * scale * hahn_eval(ctx, k, ctx.to_abscissa(t));
}

/// Relative gap between hahn_norm and the Gamma-factor ratio times the Jacobi norm.
inline double norm_ratio_identity_check(const HahnContext& ctx, int k)
{
    if (k < 0 || k > std::min< long >(20, ctx.N()))
        throw DomainError{"norm_ratio_identity_check: degree outside [0, min(20, N)]"};
    const double a  = ctx.alpha();
    const double b  = ctx.beta();
    const double s  = a + b;
    const double N  = static_cast< double >(ctx.N());
    const double kk = k;

    const double log_ratio = 2.0 * log_gamma(kk + 1.0) + log_gamma(kk + s + 2.0 + N) + log_gamma(a + 1.0) +
                             log_gamma(N - kk + 1.0) - log_gamma(b + 1.0) - 2.0 * log_gamma(1.0 + a + kk) -
                             2.0 * log_gamma(N + 1.0) - (s + 1.0) * std::numbers::ln2;
    const double rhs = std::exp(log_ratio) * jacobi_norm({a, b}, k);
    const double lhs = hahn_norm(ctx, k);
    return std::abs(lhs - rhs) / std::abs(rhs);
}

/// omega(N(1+t)/2) 2^{2 alpha} Gamma(alpha+1)^2 / (N^{2 alpha} rho(t)); tends to 1 as N grows.
inline double weight_ratio_check(const HahnContext& ctx, double t)
{
    if (!ctx.symmetric() || !(ctx.alpha() > 0.0))
        throw UnsupportedParameters{"weight_ratio_check: requires alpha == beta > 0"};
    if (!(std::abs(t) < 1.0))
        throw DomainError{"weight_ratio_check: t must lie strictly inside (-1, 1)"};
    const double a   = ctx.alpha();
    const double N   = static_cast< double >(ctx.N());
    const double log = hahn_weight_real(ctx, ctx.to_abscissa(t)).log_magnitude +
                       2.0 * a * std::numbers::ln2 + 2.0 * log_gamma(a + 1.0) - 2.0 * a * std::log(N) -
                       a * std::log1p(-t * t);
    return std::exp(log);
}

} // namespace hahnfit

#endif // HAHNFIT_HAHN_HPP
