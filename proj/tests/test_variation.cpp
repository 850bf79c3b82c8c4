#include "hahnfit/jacobi.hpp"
#include "hahnfit/registry.hpp"
#include "hahnfit/variation.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hahnfit;

TEST(TvEstimate, Examples)
{
    EXPECT_EQ(tv_estimate([](double) { return 4.2; }).value, 0.0);
    EXPECT_NEAR(tv_estimate([](double x) { return x * x; }).value, 2.0, 1e-9);
    const auto p2 = tv_estimate([](double x) { return 1.5 * x * x - 0.5; });
    EXPECT_NEAR(p2.value, 3.0, 1e-9);
    EXPECT_TRUE(p2.converged);
}

TEST(TvEstimate, RegistryClosedForms)
{
    for (const auto& f : named_test_functions())
    {
        const auto tv = tv_estimate(f);
        EXPECT_TRUE(tv.converged) << f.name;
        EXPECT_NEAR(tv.value, *f.known_tv, 1e-4 * (1.0 + *f.known_tv)) << f.name;
    }
    // derivative of x|x| is 2|x|, variation 4
    EXPECT_NEAR(tv_estimate([](double x) { return 2.0 * std::abs(x); }).value, 4.0, 1e-9);
}

TEST(TvEstimate, NestedPartitionsNeverDecrease)
{
    const auto f    = [](double x) { return std::sin(12.0 * x) + std::abs(x - 0.3); };
    double     prev = 0.0;
    for (long n = 1; n <= (1L << 16); n *= 2)
    {
        const double s = tv_partition_sum(f, n);
        EXPECT_GE(s, prev - 1e-12);
        prev = s;
    }
}

TEST(TvEstimate, Errors)
{
    EXPECT_THROW(tv_partition_sum([](double x) { return x; }, 0), DomainError);
    EXPECT_THROW(tv_estimate([](double x) { return x; }, 0), DomainError);
}

TEST(ProductBound, Examples)
{
    const auto x  = [](double t) { return t; };
    const auto x2 = [](double t) { return t * t; };
    const auto r  = product_bound_check(x, x2);
    EXPECT_NEAR(r.measured, 2.0, 1e-9);
    EXPECT_NEAR(r.bound, 4.0, 1e-9);
    EXPECT_TRUE(r.holds && r.conclusive);

    const auto one = product_bound_check([](double) { return 1.0; }, x2);
    EXPECT_NEAR(one.measured, 2.0, 1e-9);
    EXPECT_NEAR(one.bound, one.measured, 1e-12);
    EXPECT_TRUE(one.holds);

    const auto xx = product_bound_check(x, x);
    EXPECT_NEAR(xx.measured, 2.0, 1e-9);
    EXPECT_NEAR(xx.bound, 4.0, 1e-9);
}

TEST(ProductBound, HoldsForAllFamilyPairs)
{
    const std::vector< std::function< double(double) > > family = {
        [](double x) { return x; }, [](double x) { return x * x; }, [](double x) { return 1.5 * x * x - 0.5; },
        [](double x) { return std::abs(x); }};
    for (const auto& f : family)
        for (const auto& g : family)
        {
            const auto r = product_bound_check(f, g);
            EXPECT_TRUE(r.conclusive);
            EXPECT_TRUE(r.holds) << r.measured << " vs " << r.bound;
        }
}

TEST(GridMaxAbs, FindsEndpointMaximum)
{
    EXPECT_EQ(grid_max_abs([](double x) { return -3.0 * x; }, 10), 3.0);
}
