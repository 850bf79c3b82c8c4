#include "hahnfit/hahn.hpp"
#include "hahnfit/summation.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <utility>
#include <vector>

using namespace hahnfit;
using Rational = boost::multiprecision::cpp_rational;

namespace
{
const std::vector< std::pair< double, double > > pairs = {{0.0, 0.0}, {1.0, 1.0}, {0.5, 0.5}, {1.0, 2.0}};

// Terminating 3F2(-k, k+a+b+1, -x; a+1, -N; 1) in exact arithmetic (integer a, b, x).
Rational exact_hahn(int k, int a, int b, int N, int x)
{
    Rational sum  = 0;
    Rational term = 1;
    for (int j = 0; j <= k; ++j)
    {
        sum += term;
        term *= Rational(j - k) * Rational(k + a + b + 1 + j) * Rational(j - x) /
                (Rational(a + 1 + j) * Rational(j - N) * Rational(j + 1));
    }
    return sum;
}

Rational exact_binomial(int top, int k)
{
    Rational r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (top - k + i) / i;
    return r;
}

double brute_norm(const HahnContext& ctx, int k)
{
    CompensatedSum acc;
    for (long x = 0; x <= ctx.N(); ++x)
        acc += hahn_weight(ctx, x).value() * std::pow(hahn_eval(ctx, k, static_cast< double >(x)), 2);
    return acc.value();
}
} // namespace

TEST(HahnContext, Validation)
{
    EXPECT_THROW((HahnContext{-1.0, 0.0, 10}), DomainError);
    EXPECT_THROW((HahnContext{0.0, 0.0, 0}), DomainError);
    const HahnContext ctx{1.0, 2.0, 10};
    EXPECT_EQ(ctx.limit_params().alpha, 2.0);
    EXPECT_EQ(ctx.limit_params().beta, 1.0);
    EXPECT_EQ(ctx.to_abscissa(-1.0), 0.0);
    EXPECT_EQ(ctx.to_abscissa(1.0), 10.0);
}

TEST(HahnWeight, Examples)
{
    for (long N : {1L, 7L, 50L})
        for (long x = 0; x <= N; ++x)
            EXPECT_NEAR(hahn_weight({0.0, 0.0, N}, x).value(), 1.0, 1e-15);
    EXPECT_NEAR(hahn_weight({1.0, 1.0, 4}, 2).value(), 9.0, 1e-13);
    EXPECT_NEAR(hahn_weight({1.0, 1.0, 4}, 0).value(), 5.0, 1e-13);
    EXPECT_THROW(hahn_weight({1.0, 1.0, 4}, 5), DomainError);
    EXPECT_NEAR(hahn_weight_real({1.0, 1.0, 4}, 2.0).value(), 9.0, 1e-12);
}

TEST(HahnEval, Examples)
{
    EXPECT_EQ(hahn_eval({0.3, 1.2, 17}, 0, 4.4), 1.0);
    EXPECT_NEAR(hahn_eval({0.0, 0.0, 10}, 1, 5.0), 0.0, 1e-15);
    for (int x = 0; x <= 10; ++x)
        EXPECT_NEAR(hahn_eval({0.0, 0.0, 10}, 1, x), 1.0 - 2.0 * x / 10.0, 1e-15);
    EXPECT_THROW(hahn_eval({0.0, 0.0, 10}, 11, 1.0), FamilyExhausted);
}

TEST(HahnEval, AgreesWithExactHypergeometricSum)
{
    for (auto [a, b] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{1, 2}, std::pair{3, 0}})
        for (int N : {12, 40})
            for (int k = 0; k <= 10; ++k)
                for (int x = 0; x <= N; x += 3)
                {
                    const double exact = exact_hahn(k, a, b, N, x).convert_to< double >();
                    EXPECT_NEAR(hahn_eval({double(a), double(b), N}, k, x), exact, 1e-11 * std::max(1.0, std::abs(exact)))
                        << a << ' ' << b << ' ' << N << ' ' << k << ' ' << x;
                }
}

TEST(HahnEval, RecurrenceTableMatchesSingleEvaluation)
{
    const HahnContext    ctx{0.5, 1.5, 30};
    const HahnRecurrence rec{ctx, 12};
    std::vector< double > q(13);
    rec.eval_all(7.25, q);
    for (int k = 0; k <= 12; ++k)
        EXPECT_DOUBLE_EQ(q[static_cast< std::size_t >(k)], hahn_eval(ctx, k, 7.25));
    EXPECT_THROW((HahnRecurrence{ctx, 31}), FamilyExhausted);
}

TEST(HahnRecurrence, RowClosedForms)
{
    const HahnContext ctx{1.0, 2.0, 20};
    EXPECT_EQ(hahn_recurrence_row(ctx, 0).C_k, 0.0);
    EXPECT_NEAR(hahn_recurrence_row(ctx, 0).A_k, 2.0 * 20 / 5.0, 1e-15);
    for (int k = 0; k < 20; ++k)
        EXPECT_GT(hahn_recurrence_row(ctx, k).A_k, 0.0);
    EXPECT_EQ(hahn_recurrence_row(ctx, 20).A_k, 0.0);
}

TEST(HahnEval, Symmetry)
{
    for (double a : {0.0, 0.5, 1.0, 2.0})
    {
        const HahnContext ctx{a, a, 37};
        for (int n = 0; n <= 12; ++n)
            for (long x = 0; x <= 37; ++x)
            {
                const double sign = n % 2 == 0 ? 1.0 : -1.0;
                ASSERT_NEAR(hahn_eval(ctx, n, 37.0 - x), sign * hahn_eval(ctx, n, x), 1e-11);
            }
    }
}

TEST(HahnEval, AdmissibleDegreesStayBounded)
{
    const HahnContext ctx{0.0, 0.0, 40};
    for (int k = 0; k <= 5; ++k)
    {
        double m = 0.0;
        for (long x = 0; x <= 40; ++x)
            m = std::max(m, std::abs(hahn_eval(ctx, k, x)));
        EXPECT_NEAR(m, 1.0, 1e-12) << k;
    }
}

TEST(AdmissibleDegree, Examples)
{
    EXPECT_NEAR(admissible_degree(0.0, 40), 5.0, 1e-14);
    EXPECT_NEAR(admissible_degree(0.0, 4), 2.0, 1e-14);
    EXPECT_NEAR(admissible_degree(1.0, 112), -0.5 + 0.5 * std::sqrt(3.0 * 227.0), 1e-13);
    EXPECT_NEAR(admissible_degree(1.0, 112), 12.55, 0.01);
    EXPECT_THROW(admissible_degree(-0.5, 10), DomainError);
}

TEST(HahnNorm, Examples)
{
    for (long N : {1L, 10L, 333L})
        EXPECT_NEAR(hahn_norm({0.0, 0.0, N}, 0), N + 1.0, 1e-12 * N);
    // sum over x = 0..10 of (1 - 2x/10)^2: 2 (1 + 0.64 + 0.36 + 0.16 + 0.04)
    EXPECT_NEAR(hahn_norm({0.0, 0.0, 10}, 1), 4.4, 1e-14);
    EXPECT_THROW(hahn_norm({0.0, 0.0, 10}, 11), FamilyExhausted);
}

TEST(HahnNorm, MatchesBruteForceSummation)
{
    for (const auto& [a, b] : pairs)
        for (long N : {12L, 60L, 200L})
        {
            const HahnContext ctx{a, b, N};
            for (int k = 0; k <= 12; ++k)
            {
                const double brute = brute_norm(ctx, k);
                EXPECT_NEAR(hahn_norm(ctx, k), brute, 1e-9 * brute) << a << ' ' << b << ' ' << N << ' ' << k;
            }
        }
}

TEST(HahnNorm, MatchesExactRationalNorm)
{
    for (auto [a, b] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{1, 2}})
    {
        const int N = 20;
        for (int k = 0; k <= 8; ++k)
        {
            Rational norm = 0;
            for (int x = 0; x <= N; ++x)
            {
                const Rational q = exact_hahn(k, a, b, N, x);
                norm += exact_binomial(a + x, x) * exact_binomial(b + N - x, N - x) * q * q;
            }
            const double exact = norm.convert_to< double >();
            EXPECT_NEAR(hahn_norm({double(a), double(b), N}, k), exact, 1e-12 * exact) << a << ' ' << b << ' ' << k;
        }
    }
}

TEST(HahnNorm, OrthogonalityAtN60)
{
    for (const auto& [a, b] : pairs)
    {
        const HahnContext ctx{a, b, 60};
        for (int j = 0; j <= 12; ++j)
            for (int k = j + 1; k <= 12; ++k)
            {
                CompensatedSum acc;
                for (long x = 0; x <= 60; ++x)
                    acc += hahn_weight(ctx, x).value() * hahn_eval(ctx, j, x) * hahn_eval(ctx, k, x);
                EXPECT_LE(std::abs(acc.value()), 1e-9 * std::sqrt(hahn_norm(ctx, j) * hahn_norm(ctx, k)));
            }
    }
}

TEST(NormalizedHahn, LowDegrees)
{
    for (long N : {3L, 10L, 1000L})
    {
        const HahnContext ctx{0.0, 0.0, N};
        for (double t : {-1.0, -0.3, 0.0, 0.71, 1.0})
        {
            EXPECT_EQ(normalized_hahn_eval(ctx, 0, t), 1.0);
            EXPECT_NEAR(normalized_hahn_eval(ctx, 1, t), t, 1e-15);
        }
    }
    EXPECT_THROW(normalized_hahn_eval({0.0, 1.0, 10}, 1, 0.0), UnsupportedParameters);
}

TEST(NormalizedHahn, GapShrinksLikeOneOverN)
{
    const double t = 0.5;
    const double p3 = jacobi_eval({0.0, 0.0}, 3, t);
    std::vector< double > scaled;
    for (long N : {200L, 400L, 800L, 1600L})
        scaled.push_back(std::abs(normalized_hahn_eval({0.0, 0.0, N}, 3, t) - p3) * N / 9.0);
    for (double s : scaled)
    {
        EXPECT_GT(s, 0.5 * scaled.back());
        EXPECT_LT(s, 2.0 * scaled.back());
    }
}

TEST(NormalizedHahn, TransformedRecurrence)
{
    for (double a : {0.0, 0.5, 1.0, 2.0})
    {
        const long        N = 50;
        const HahnContext ctx{a, a, N};
        for (long mu = 0; mu <= N; ++mu)
        {
            const double t = -1.0 + 2.0 * mu / N;
            for (int k = 1; k <= 10; ++k)
            {
                const auto   r        = jacobi_recurrence_row({a, a}, k);
                const double lhs      = t * normalized_hahn_eval(ctx, k, t);
                const double rhs      = r.alpha_k * (1.0 - double(k) / N) * normalized_hahn_eval(ctx, k + 1, t) +
                                   r.gamma_k * (1.0 + (k + 2 * a + 1) / N) * normalized_hahn_eval(ctx, k - 1, t);
                ASSERT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(lhs))) << a << ' ' << k << ' ' << t;
            }
        }
    }
}

TEST(NormRatioIdentity, Examples)
{
    EXPECT_LE(norm_ratio_identity_check({0.0, 0.0, 10}, 0), 1e-14);
    EXPECT_LE(norm_ratio_identity_check({0.0, 0.0, 10}, 1), 1e-10);
    EXPECT_LE(norm_ratio_identity_check({1.0, 1.0, 30}, 5), 1e-9);
    for (const auto& [a, b] : pairs)
        for (int k = 0; k <= 12; ++k)
            EXPECT_LE(norm_ratio_identity_check({a, b, 60}, k), 1e-9);
    EXPECT_THROW(norm_ratio_identity_check({0.0, 0.0, 10}, 11), DomainError);
}

TEST(NormRatioIdentity, ZeroDegreeFactorsByHand)
{
    // ratio (N+1)/2 times (P_0, P_0) = 2 gives <1, 1> = N + 1
    const long N = 10;
    EXPECT_NEAR(hahn_norm({0.0, 0.0, N}, 0) / jacobi_norm({0.0, 0.0}, 0), (N + 1) / 2.0, 1e-14);
}

TEST(WeightRatio, Examples)
{
    EXPECT_NEAR(weight_ratio_check({1.0, 1.0, 100}, 0.0), 1.0, 0.05);
    EXPECT_NEAR(weight_ratio_check({1.0, 1.0, 1000}, 0.0), 1.0, 0.005);
    EXPECT_NEAR(weight_ratio_check({1e-9, 1e-9, 1000}, 0.3), 1.0, 1e-7);
    const double g100  = std::abs(weight_ratio_check({1.0, 1.0, 100}, 0.4) - 1.0);
    const double g1000 = std::abs(weight_ratio_check({1.0, 1.0, 1000}, 0.4) - 1.0);
    EXPECT_NEAR(g100 / g1000, 10.0, 1.5);
    EXPECT_THROW(weight_ratio_check({0.0, 0.0, 100}, 0.0), UnsupportedParameters);
    EXPECT_THROW(weight_ratio_check({1.0, 1.0, 100}, 1.0), DomainError);
}
