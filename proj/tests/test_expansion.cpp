#include "hahnfit/expansion.hpp"
#include "hahnfit/ls_oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <utility>
#include <vector>

using namespace hahnfit;

namespace
{
const std::vector< std::pair< double, double > > pairs = {{0.0, 0.0}, {1.0, 1.0}, {0.5, 0.5}, {1.0, 2.0}};

SampledFunction constant(long N, double c)
{
    return {std::vector< double >(static_cast< std::size_t >(N + 1), c), "const"};
}
} // namespace

TEST(Grid, NodesAreExactAndUniform)
{
    const Grid g{7};
    EXPECT_EQ(g.size(), 8);
    EXPECT_EQ(g.node(0), -1.0);
    EXPECT_EQ(g.node(7), 1.0);
    const auto nodes = g.nodes();
    for (long mu = 0; mu <= 7; ++mu)
        EXPECT_EQ(nodes[static_cast< std::size_t >(mu)], -1.0 + 2.0 * mu / 7.0);
    EXPECT_EQ(Grid{10}.node(5), 0.0);
    EXPECT_THROW(Grid{0}, DomainError);
}

TEST(Sample, RejectsNonFiniteValues)
{
    EXPECT_THROW(sample([](double x) { return 1.0 / x; }, Grid{4}), DomainError);
    EXPECT_EQ(sample([](double x) { return x; }, Grid{4}, "id").source_label, "id");
}

TEST(DiscreteInnerProduct, Examples)
{
    const HahnContext ctx{0.0, 0.0, 10};
    EXPECT_NEAR(discrete_inner_product(constant(10, 1.0), constant(10, 1.0), ctx), 11.0, 1e-14);
    const auto q1 = sample_hahn(ctx, 1);
    const auto q2 = sample_hahn(ctx, 2);
    EXPECT_NEAR(discrete_inner_product(q1, q1, ctx), 4.4, 1e-14);
    EXPECT_LE(std::abs(discrete_inner_product(q1, q2, ctx)),
              1e-12 * std::sqrt(discrete_inner_product(q1, q1, ctx) * discrete_inner_product(q2, q2, ctx)));
    EXPECT_THROW(discrete_inner_product(constant(9, 1.0), q1, ctx), ShapeError);
}

TEST(HahnCoefficients, Examples)
{
    const HahnContext ctx{0.0, 0.0, 30};
    const auto        c2 = hahn_coefficients(sample_hahn(ctx, 2), ctx, 4);
    for (int k = 0; k <= 4; ++k)
        EXPECT_NEAR(c2.coefficients[static_cast< std::size_t >(k)], k == 2 ? 1.0 : 0.0, 1e-12);
    const auto cc = hahn_coefficients(constant(30, -2.5), ctx, 5, Admissibility::lenient);
    EXPECT_NEAR(cc.coefficients[0], -2.5, 1e-14);
    for (int k = 1; k <= 5; ++k)
        EXPECT_NEAR(cc.coefficients[static_cast< std::size_t >(k)], 0.0, 1e-13);
    EXPECT_EQ(cc.degree(), 5);
    EXPECT_EQ(cc.N, 30);
}

TEST(HahnCoefficients, LinearFunctionByDirectSums)
{
    const HahnContext ctx{0.0, 0.0, 10};
    const auto        f = sample([](double x) { return x; }, Grid{10});
    double            num = 0.0;
    double            den = 0.0;
    for (int mu = 0; mu <= 10; ++mu)
    {
        const double q1 = 1.0 - 2.0 * mu / 10.0;
        num += (-1.0 + 2.0 * mu / 10.0) * q1;
        den += q1 * q1;
    }
    const auto c = hahn_coefficients(f, ctx, 1);
    EXPECT_NEAR(c.coefficients[1], num / den, 1e-15);
    EXPECT_NEAR(c.coefficients[1], -1.0, 1e-15);
    EXPECT_NEAR(c.coefficients[0], 0.0, 1e-15);
}

TEST(HahnCoefficients, Errors)
{
    const HahnContext ctx{0.0, 0.0, 10};
    EXPECT_THROW(hahn_coefficients(constant(10, 1.0), ctx, 11, Admissibility::lenient), FamilyExhausted);
    EXPECT_THROW(hahn_coefficients(constant(10, 1.0), ctx, 3), AdmissibilityError); // n(0, 10) ~ 2.79
    EXPECT_NO_THROW(hahn_coefficients(constant(10, 1.0), ctx, 3, Admissibility::lenient));
    EXPECT_THROW(hahn_coefficients(constant(12, 1.0), ctx, 1), ShapeError);
    EXPECT_THROW(hahn_coefficients(constant(10, 1.0), ctx, -1), DomainError);
}

TEST(LsEvaluate, ConstantCoefficients)
{
    const HahnContext ctx{1.0, 1.0, 40};
    const auto        c = hahn_coefficients(constant(40, 3.25), ctx, 4);
    for (double x : {-1.0, -0.33, 0.0, 0.5, 1.0})
        EXPECT_NEAR(ls_evaluate(c, ctx, x), 3.25, 1e-13);
    EXPECT_THROW(ls_evaluate(c, HahnContext{1.0, 1.0, 41}, 0.0), ShapeError);
}

TEST(LsEvaluate, ReproducesPolynomials)
{
    const auto poly = [](double x) { return 0.3 - x + 2.0 * x * x * x - 0.7 * std::pow(x, 5); };
    for (const auto& [a, b] : pairs)
    {
        const long        N = 120;
        const HahnContext ctx{a, b, N};
        const auto        f = sample(poly, Grid{N});
        const auto        c = hahn_coefficients(f, ctx, 5);
        const auto        v = ls_evaluate_nodes(c, ctx);
        for (std::size_t i = 0; i < v.size(); ++i)
            ASSERT_NEAR(v[i], f.values[i], 1e-9 * std::max(1.0, std::abs(f.values[i]))) << a << ' ' << b;
        for (double x : {-0.91, 0.123, 0.77})
            EXPECT_NEAR(ls_evaluate(c, ctx, x), poly(x), 1e-9);
    }
}

TEST(LsEvaluate, ProjectionIsIdempotent)
{
    const auto u = [](double x) { return std::exp(std::sin(3.0 * x)); };
    for (const auto& [a, b] : pairs)
    {
        const HahnContext ctx{a, b, 90};
        const auto        c1 = hahn_coefficients(sample(u, Grid{90}), ctx, 6);
        const SampledFunction resampled{ls_evaluate_nodes(c1, ctx), "ls"};
        const auto        c2 = hahn_coefficients(resampled, ctx, 6);
        for (std::size_t k = 0; k < c1.coefficients.size(); ++k)
            EXPECT_NEAR(c2.coefficients[k], c1.coefficients[k], 1e-9);
    }
}

TEST(LsEvaluate, ResidualIsOrthogonalToFamily)
{
    const auto u = [](double x) { return std::abs(x - 0.2); };
    for (const auto& [a, b] : pairs)
    {
        const long        N = 80;
        const HahnContext ctx{a, b, N};
        const auto        f = sample(u, Grid{N});
        const auto        c = hahn_coefficients(f, ctx, 6);
        const auto        v = ls_evaluate_nodes(c, ctx);
        SampledFunction   residual{f.values, "residual"};
        for (std::size_t i = 0; i < v.size(); ++i)
            residual.values[i] -= v[i];
        const double fnorm = std::sqrt(discrete_inner_product(f, f, ctx));
        for (int k = 0; k <= 6; ++k)
        {
            const auto q = sample_hahn(ctx, k);
            EXPECT_LE(std::abs(discrete_inner_product(residual, q, ctx)),
                      1e-9 * fnorm * std::sqrt(hahn_norm(ctx, k)));
        }
    }
}

TEST(LsEvaluate, MinimizesWeightedResidual)
{
    const long        N = 60;
    const HahnContext ctx{1.0, 2.0, N};
    const auto        f = sample([](double x) { return std::cos(4 * x); }, Grid{N});
    const auto        c = hahn_coefficients(f, ctx, 5);
    const double      best = residual_norm(f, ls_evaluate_nodes(c, ctx), ctx);
    std::mt19937_64   rng{5};
    std::normal_distribution< double > noise{0.0, 1e-3};
    for (int trial = 0; trial < 20; ++trial)
    {
        auto perturbed = c;
        for (auto& v : perturbed.coefficients)
            v += noise(rng);
        EXPECT_GT(residual_norm(f, ls_evaluate_nodes(perturbed, ctx), ctx), best);
    }
}

TEST(JacobiPartialSum, Examples)
{
    const JacobiParams legendre{0.0, 0.0};
    const auto         p3 = [&](double x) { return jacobi_eval(legendre, 3, x); };
    for (double x : {-1.0, -0.4, 0.25, 0.9})
    {
        EXPECT_NEAR(jacobi_partial_sum(p3, legendre, 5, x).value, p3(x), 1e-10);
        EXPECT_NEAR(jacobi_partial_sum([](double y) { return y * y; }, legendre, 2, x).value, x * x, 1e-10);
    }
    const auto absx = jacobi_partial_sum([](double y) { return std::abs(y); }, legendre, 1, 0.0);
    EXPECT_NEAR(absx.value, 0.5, 1e-10);
    EXPECT_FALSE(absx.accuracy_warning);
    EXPECT_THROW(jacobi_partial_sum(p3, legendre, 3, 1.5), DomainError);
}

TEST(PointwiseErrorPair, PolynomialIsReproduced)
{
    const auto cube = [](double x) { return x * x * x - 0.5 * x; };
    const auto err  = pointwise_error_pair(cube, HahnContext{0.0, 0.0, 100}, 3);
    EXPECT_LE(err.sup_hahn_err, 1e-8);
    EXPECT_LE(err.sup_jacobi_err, 1e-8);
    const auto err2 = pointwise_error_pair(cube, HahnContext{1.0, 1.0, 100}, 4);
    EXPECT_LE(err2.sup_hahn_err, 1e-8);
    EXPECT_LE(err2.sup_jacobi_err, 1e-8);
}

TEST(PointwiseErrorPair, BoundTerm)
{
    EXPECT_NEAR(bound_term(0.0, 3, 81), 1.0, 1e-15);
    EXPECT_NEAR(bound_term(2.0, 2, 128), 1.0, 1e-15); // 2^{3+2+2} / 128
    EXPECT_NEAR(bound_term(0.5, 4, 1000), std::pow(4.0, 4.5) / 1000.0, 1e-15);
    EXPECT_NEAR(pointwise_error_pair([](double x) { return x; }, HahnContext{0.0, 0.0, 81}, 3).bound_term, 1.0,
                1e-12);
}

TEST(PointwiseErrorPair, DecompositionGapIsSmallAtQuinticGrid)
{
    const auto u   = [](double x) { return x * std::abs(x); };
    const auto err = pointwise_error_pair(u, HahnContext{0.0, 0.0, 1024}, 4);
    EXPECT_LE(err.sup_hahn_err, err.sup_jacobi_err + 0.1 * 256.0 / 1024.0);
    EXPECT_GT(err.sup_jacobi_err, 1e-3);
}

TEST(PointwiseErrorPair, Reproducible)
{
    const auto             u = [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
    const ErrorPairOptions opts{Admissibility::strict, 50, 99};
    const auto             a = pointwise_error_pair(u, HahnContext{0.0, 0.0, 500}, 6, opts);
    const auto             b = pointwise_error_pair(u, HahnContext{0.0, 0.0, 500}, 6, opts);
    EXPECT_EQ(a.sup_hahn_err, b.sup_hahn_err);
    EXPECT_EQ(a.sup_jacobi_err, b.sup_jacobi_err);
}
