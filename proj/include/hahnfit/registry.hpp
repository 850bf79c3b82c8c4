#ifndef HAHNFIT_REGISTRY_HPP
#define HAHNFIT_REGISTRY_HPP

#include "hahnfit/errors.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hahnfit
{

enum class SmoothnessClass
{
    analytic,
    c1_bv_derivative, // f in C^1 with f' of bounded variation
    bv_only
};

inline std::string_view to_string(SmoothnessClass c)
{
    switch (c)
    {
    case SmoothnessClass::analytic: return "analytic";
    case SmoothnessClass::c1_bv_derivative: return "c1_bv_derivative";
    case SmoothnessClass::bv_only: return "bv_only";
    }
    return "unknown";
}

struct TestFunction
{
    std::string                     name;
    std::function< double(double) > closure;
    SmoothnessClass                 smoothness_class = SmoothnessClass::analytic;
    std::optional< double >         known_tv;
    std::optional< double >         known_integral;

    double operator()(double x) const { return closure(x); }
};

class UnknownFunction : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail
{
inline std::vector< double > parse_number_list(std::string_view text, std::string_view what)
{
    std::vector< double > out;
    std::string           item;
    std::istringstream    in{std::string{text}};
    while (std::getline(in, item, ','))
    {
        try
        {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument{"trailing characters"};
        }
        catch (const std::exception&)
        {
            throw UnknownFunction{"malformed number '" + item + "' in " + std::string{what}};
        }
    }
    if (out.empty())
        throw UnknownFunction{"empty number list in " + std::string{what}};
    return out;
}
} // namespace detail

/// Polynomial sum_j c_j x^j. Its integral over [-1, 1] is known; its variation is not tabulated.
inline TestFunction make_polynomial(std::vector< double > coefficients, std::string name)
{
    double integral = 0.0;
    for (std::size_t j = 0; j < coefficients.size(); j += 2)
        integral += 2.0 * coefficients[j] / static_cast< double >(j + 1);
    auto closure = [c = std::move(coefficients)](double x) {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    };
    return {std::move(name), std::move(closure), SmoothnessClass::analytic, std::nullopt, integral};
}

/// Looks up runge, absx, xabsx, expx, poly:<c0,c1,...> or const:<c>.
inline TestFunction find_test_function(std::string_view spec)
{
    const std::string name{spec};
    if (spec == "runge")
        return {name,
                [](double x) { return 1.0 / (1.0 + 25.0 * x * x); },
                SmoothnessClass::analytic,
                2.0 * (1.0 - 1.0 / 26.0),
                0.4 * std::atan(5.0)};
    if (spec == "absx")
        return {name, [](double x) { return std::abs(x); }, SmoothnessClass::bv_only, 2.0, 1.0};
    if (spec == "xabsx") // derivative 2|x| has variation 4
        return {name, [](double x) { return x * std::abs(x); }, SmoothnessClass::c1_bv_derivative, 2.0, 0.0};
    if (spec == "expx")
    {
        const double span = std::numbers::e - 1.0 / std::numbers::e;
        return {name, [](double x) { return std::exp(x); }, SmoothnessClass::analytic, span, span};
    }
    if (spec.starts_with("poly:"))
        return make_polynomial(detail::parse_number_list(spec.substr(5), "poly"), name);
    if (spec.starts_with("const:"))
    {
        const auto values = detail::parse_number_list(spec.substr(6), "const");
        if (values.size() != 1)
            throw UnknownFunction{"const: expects exactly one value"};
        const double c = values.front();
        return {name, [c](double) { return c; }, SmoothnessClass::analytic, 0.0, 2.0 * c};
    }
    throw UnknownFunction{"unknown function '" + name + "' (expected runge, absx, xabsx, expx, poly:..., const:...)"};
}

/// The fixed (non-parametric) registry entries.
inline std::vector< TestFunction > named_test_functions()
{
    return {find_test_function("runge"),
            find_test_function("absx"),
            find_test_function("xabsx"),
            find_test_function("expx")};
}

} // namespace hahnfit

#endif // HAHNFIT_REGISTRY_HPP
