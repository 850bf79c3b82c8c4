#ifndef HAHNFIT_EXPERIMENTS_HPP
#define HAHNFIT_EXPERIMENTS_HPP

#include "hahnfit/expansion.hpp"
#include "hahnfit/hahn.hpp"
#include "hahnfit/registry.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace hahnfit
{

class UsageError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Rule assigning a grid size N to each degree n of a sweep.
class Schedule
{
public:
    enum class Kind
    {
        power,       // N = round(n^p)
        fixed_ratio, // N = round(r n)
        explicit_list
    };

    /// Parses "pow:p", "fixed_ratio:r" or "list:N1,N2,...".
    static Schedule parse(std::string_view text)
    {
        Schedule s;
        auto     number = [&](std::string_view body) {
            try
            {
                std::size_t used  = 0;
                const auto  value = std::stod(std::string{body}, &used);
                if (used != body.size() || !(value > 0.0))
                    throw std::invalid_argument{"bad"};
                return value;
            }
            catch (const std::exception&)
            {
                throw UsageError{"malformed schedule '" + std::string{text} + "'"};
            }
        };
        if (text.starts_with("pow:"))
        {
            s.kind_  = Kind::power;
            s.param_ = number(text.substr(4));
        }
        else if (text.starts_with("fixed_ratio:"))
        {
            s.kind_  = Kind::fixed_ratio;
            s.param_ = number(text.substr(12));
        }
        else if (text.starts_with("list:"))
        {
            s.kind_ = Kind::explicit_list;
            std::string_view rest = text.substr(5);
            while (!rest.empty())
            {
                const auto comma = rest.find(',');
                const auto item  = rest.substr(0, comma);
                s.list_.push_back(std::lround(number(item)));
                rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            }
            if (s.list_.empty())
                throw UsageError{"schedule list is empty"};
        }
        else
            throw UsageError{"unknown schedule '" + std::string{text} + "' (expected pow:p, fixed_ratio:r, list:...)"};
        return s;
    }

    static Schedule power(double p)
    {
        Schedule s;
        s.kind_  = Kind::power;
        s.param_ = p;
        return s;
    }

    [[nodiscard]] Kind kind() const { return kind_; }

    /// True when n^4 / N_n -> 0, the growth the alpha = 0 convergence result asks for.
    [[nodiscard]] bool satisfies_quartic_condition() const { return kind_ == Kind::power && param_ > 4.0; }

    /// Grid size for the index-th degree n of the sweep.
    [[nodiscard]] long grid_size(int n, std::size_t index) const
    {
        long N = 0;
        switch (kind_)
        {
        case Kind::power: N = std::lround(std::pow(static_cast< double >(n), param_)); break;
        case Kind::fixed_ratio: N = std::lround(param_ * n); break;
        case Kind::explicit_list:
            if (index >= list_.size())
                throw UsageError{"schedule list has fewer entries than degrees"};
            N = list_[index];
            break;
        }
        if (N < std::max(n, 1))
            throw UsageError{"schedule gives N = " + std::to_string(N) + " below degree n = " + std::to_string(n)};
        return N;
    }

private:
    Kind                kind_  = Kind::power;
    double              param_ = 5.0;
    std::vector< long > list_;
};

/// One (n, N) cell of a convergence sweep.
struct ConvergenceRecord
{
    int    n              = 0;
    long   N              = 0;
    double alpha          = 0.0;
    double sup_err_hahn   = 0.0;
    double sup_err_jacobi = 0.0;
    double bound_term     = 0.0;
    double wall_time_ms   = 0.0;
    bool   admissible       = true;
    bool   accuracy_warning = false;
};

struct SweepOptions
{
    unsigned jobs          = 1;
    bool     record_timing = true;
};

/// Runs each degree with alpha = beta on the schedule's grid; rows sorted by (n, N).
inline std::vector< ConvergenceRecord > run_convergence(const TestFunction&      func,
                                                        double                   alpha,
                                                        const std::vector< int >& degrees,
                                                        const Schedule&          schedule,
                                                        const SweepOptions&      options = {})
{
    std::vector< ConvergenceRecord > records(degrees.size());
    for (std::size_t i = 0; i < degrees.size(); ++i)
    {
        records[i].n     = degrees[i];
        records[i].N     = schedule.grid_size(degrees[i], i);
        records[i].alpha = alpha;
    }

    std::atomic< std::size_t > next{0};
    std::exception_ptr         failure;
    std::mutex                 failure_mutex;
    auto                       worker = [&] {
        for (std::size_t i = next++; i < records.size(); i = next++)
        {
            try
            {
                auto&             rec = records[i];
                const auto        t0  = std::chrono::steady_clock::now();
                const HahnContext ctx{alpha, alpha, rec.N};
                ErrorPairOptions  opts;
                opts.admissibility = Admissibility::lenient;
                const auto err     = pointwise_error_pair(func, ctx, rec.n, opts);
                const auto t1      = std::chrono::steady_clock::now();
                rec.sup_err_hahn   = err.sup_hahn_err;
                rec.sup_err_jacobi = err.sup_jacobi_err;
                rec.bound_term     = err.bound_term;
                rec.accuracy_warning = err.accuracy_warning;
                rec.admissible       = alpha > -0.5 && rec.n <= admissible_degree(alpha, rec.N);
                rec.wall_time_ms     = options.record_timing
                                           ? std::chrono::duration< double, std::milli >(t1 - t0).count()
                                           : 0.0;
            }
            catch (...)
            {
                std::lock_guard lock{failure_mutex};
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };

    const unsigned jobs = std::max(1u, std::min< unsigned >(options.jobs, static_cast< unsigned >(records.size())));
    if (jobs == 1)
        worker();
    else
    {
        std::vector< std::jthread > pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);

    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return a.n != b.n ? a.n < b.n : a.N < b.N;
    });
    return records;
}

/// %.17g, the CSV float format.
inline std::string format_real(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline constexpr std::string_view convergence_csv_header =
    "n,N,alpha,sup_err_hahn,sup_err_jacobi,bound_term,wall_time_ms";

inline void write_convergence_csv(std::ostream& out, const std::vector< ConvergenceRecord >& records)
{
    out << convergence_csv_header << '\n';
    for (const auto& r : records)
        out << r.n << ',' << r.N << ',' << format_real(r.alpha) << ',' << format_real(r.sup_err_hahn) << ','
            << format_real(r.sup_err_jacobi) << ',' << format_real(r.bound_term) << ','
            << format_real(r.wall_time_ms) << '\n';
}

/// Coefficients of both expansions plus the least-squares fit and Jacobi partial
/// sum tabulated on a 401-point plot grid.
struct ExpansionTable
{
    struct Row
    {
        double x;
        double f;
        double ls;
        double jacobi_partial;
    };

    CoefficientVector  hahn;
    CoefficientVector  jacobi;
    double             admissible_bound = 0.0;
    bool               admissible       = true;
    std::vector< Row > rows;
};

inline constexpr int plot_points = 401;

inline ExpansionTable run_expansion(const TestFunction& func, double alpha, long N, int n)
{
    if (n < 0 || n > N)
        throw UsageError{"expand: need 0 <= n <= N"};
    const HahnContext ctx{alpha, alpha, N};
    const Grid        grid{N};
    ExpansionTable    table;
    table.hahn             = hahn_coefficients(sample(func, grid, func.name), ctx, n, Admissibility::lenient);
    table.jacobi           = jacobi_coefficients(func, ctx.limit_params(), n);
    table.admissible_bound = alpha > -0.5 ? admissible_degree(alpha, N) : 0.0;
    table.admissible       = alpha > -0.5 && n <= table.admissible_bound;
    table.rows.reserve(plot_points);
    for (int i = 0; i < plot_points; ++i)
    {
        const double x = -1.0 + 2.0 * i / (plot_points - 1);
        table.rows.push_back({x, func(x), ls_evaluate(table.hahn, ctx, x), jacobi_series_evaluate(table.jacobi, x)});
    }
    return table;
}

inline void write_expansion_table_csv(std::ostream& out, const ExpansionTable& table)
{
    out << "x,f,ls,jacobi_partial\n";
    for (const auto& r : table.rows)
        out << format_real(r.x) << ',' << format_real(r.f) << ',' << format_real(r.ls) << ','
            << format_real(r.jacobi_partial) << '\n';
}

inline void write_expansion_coefficients_csv(std::ostream& out, const ExpansionTable& table)
{
    out << "k,hahn_coefficient,jacobi_coefficient\n";
    for (std::size_t k = 0; k < table.hahn.coefficients.size(); ++k)
        out << k << ',' << format_real(table.hahn.coefficients[k]) << ','
            << format_real(table.jacobi.coefficients[k]) << '\n';
}

/// One (n, N) cell of the alpha = 0 error-decomposition sweep.
struct DecompositionCell
{
    int    n              = 0;
    long   N              = 0;
    double sup_err_hahn   = 0.0;
    double sup_err_jacobi = 0.0;

    /// (sup_hahn - sup_jacobi) N / n^4, signed.
    [[nodiscard]] double scaled_gap() const
    {
        return (sup_err_hahn - sup_err_jacobi) * static_cast< double >(N) / std::pow(n, 4.0);
    }
};

template < RealFunction F >
DecompositionCell decomposition_cell(const F& u, int n, long N)
{
    const HahnContext ctx{0.0, 0.0, N};
    const auto        err = pointwise_error_pair(u, ctx, n);
    return {n, N, err.sup_hahn_err, err.sup_jacobi_err};
}

} // namespace hahnfit

#endif // HAHNFIT_EXPERIMENTS_HPP
