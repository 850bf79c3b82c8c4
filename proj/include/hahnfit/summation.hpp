#ifndef HAHNFIT_SUMMATION_HPP
#define HAHNFIT_SUMMATION_HPP

#include <cmath>
#include <span>

namespace hahnfit
{

/// Neumaier's variant of Kahan summation; the running compensation also
/// survives addends larger than the partial sum.
class CompensatedSum
{
public:
    constexpr CompensatedSum() = default;
    constexpr explicit CompensatedSum(double initial) : sum_{initial} {}

    constexpr CompensatedSum& operator+=(double value)
    {
        const double t = sum_ + value;
        if ((sum_ >= 0 ? sum_ : -sum_) >= (value >= 0 ? value : -value))
            compensation_ += (sum_ - t) + value;
        else
            compensation_ += (value - t) + sum_;
        sum_ = t;
        return *this;
    }

    [[nodiscard]] constexpr double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

inline double compensated_sum(std::span< const double > values)
{
    CompensatedSum acc;
    for (double v : values)
        acc += v;
    return acc.value();
}

} // namespace hahnfit

#endif // HAHNFIT_SUMMATION_HPP
