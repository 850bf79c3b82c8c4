// hahnfit command-line driver: verify, converge, expand, eval.

#include "hahnfit/hahnfit.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace
{

constexpr int exit_pass    = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage   = 2;

nlohmann::json to_json(const hahnfit::SuiteReport& report)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks)
    {
        nlohmann::json fields = nlohmann::json::object();
        for (const auto& [key, value] : c.fields)
            fields[key] = value;
        nlohmann::json entry = {{"name", c.name},
                                {"passed", c.passed},
                                {"value", c.value},
                                {"threshold", c.threshold},
                                {"fields", fields}};
        if (!c.note.empty())
            entry["note"] = c.note;
        checks.push_back(std::move(entry));
    }
    return {{"suite", report.suite}, {"seed", report.seed}, {"passed", report.passed()}, {"checks", checks}};
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream out{path, std::ios::binary};
    if (!out)
        throw hahnfit::UsageError{"cannot open '" + path + "' for writing"};
    return out;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, const std::string& json_path)
{
    const auto report = hahnfit::run_suite(suite, seed);
    for (const auto& c : report.checks)
        if (!c.passed)
            std::cerr << "FAIL " << c.name << ": value " << hahnfit::format_real(c.value) << " threshold "
                      << hahnfit::format_real(c.threshold) << '\n';
    const auto passed_count =
        std::count_if(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.passed; });
    std::cout << suite << ": " << passed_count << '/' << report.checks.size() << " checks passed\n";
    if (!json_path.empty())
        open_output(json_path) << to_json(report).dump(2) << '\n';
    return report.passed() ? exit_pass : exit_failure;
}

struct ConvergeArgs
{
    std::string        func;
    double             alpha = 0.0;
    std::string        schedule;
    int                n_min = 1;
    int                n_max = 0;
    std::vector< int > n_values;
    unsigned           jobs      = 1;
    bool               no_timing = false;
    std::string        out;
};

int cmd_converge(const ConvergeArgs& args)
{
    const auto func     = hahnfit::find_test_function(args.func);
    const auto schedule = hahnfit::Schedule::parse(args.schedule);

    std::vector< int > degrees = args.n_values;
    if (degrees.empty())
    {
        if (args.n_max < args.n_min || args.n_min < 0)
            throw hahnfit::UsageError{"converge: need 0 <= --n-min <= --n-max"};
        for (int n = args.n_min; n <= args.n_max; ++n)
            degrees.push_back(n);
    }

    std::cerr << "function " << func.name << " (" << hahnfit::to_string(func.smoothness_class) << ")\n";
    if (func.smoothness_class == hahnfit::SmoothnessClass::bv_only)
        std::cerr << "note: pointwise convergence of the least-squares fit is not covered for bv_only functions\n";
    else if (args.alpha != 0.0)
        std::cerr << "note: the n^4/N convergence condition is stated for alpha = 0\n";
    else if (!schedule.satisfies_quartic_condition())
        std::cerr << "note: schedule does not make n^4/N vanish; convergence is not guaranteed\n";
    else if (func.smoothness_class == hahnfit::SmoothnessClass::analytic)
        std::cerr << "note: analytic function; Jacobi and least-squares errors are expected to decay together\n";
    else
        std::cerr << "note: f' has bounded variation; least-squares errors are expected to converge\n";

    hahnfit::SweepOptions options;
    options.jobs          = args.jobs;
    options.record_timing = !args.no_timing;
    const auto records    = hahnfit::run_convergence(func, args.alpha, degrees, schedule, options);
    for (const auto& r : records)
    {
        if (!r.admissible)
            std::cerr << "warning: n = " << r.n << " exceeds the admissible degree for N = " << r.N << '\n';
        if (r.accuracy_warning)
            std::cerr << "warning: Jacobi coefficients for n = " << r.n << " did not converge\n";
    }
    auto out = open_output(args.out);
    hahnfit::write_convergence_csv(out, records);
    return exit_pass;
}

std::string coefficients_path(const std::string& out)
{
    const std::filesystem::path p{out};
    auto                        name = p.stem().string() + "_coeffs" + p.extension().string();
    return (p.parent_path() / name).string();
}

int cmd_expand(const std::string& func_name, double alpha, long N, int n, const std::string& out_path)
{
    const auto func  = hahnfit::find_test_function(func_name);
    const auto table = hahnfit::run_expansion(func, alpha, N, n);
    if (!table.admissible)
        std::cerr << "warning: n = " << n << " exceeds the admissible degree "
                  << hahnfit::format_real(table.admissible_bound) << " for N = " << N << '\n';
    if (table.jacobi.accuracy_warning)
        std::cerr << "warning: Jacobi coefficients did not converge\n";
    auto out = open_output(out_path);
    hahnfit::write_expansion_table_csv(out, table);
    const auto coeff_path = coefficients_path(out_path);
    auto       coeff_out  = open_output(coeff_path);
    hahnfit::write_expansion_coefficients_csv(coeff_out, table);
    std::cout << "wrote " << out_path << " and " << coeff_path << '\n';
    return exit_pass;
}

int cmd_eval(const std::string& family, double alpha, double beta, std::optional< long > N, int k, double x)
{
    double value = 0.0;
    if (family == "hahn")
    {
        if (!N)
            throw hahnfit::UsageError{"eval: --N is required for the hahn family"};
        value = hahnfit::hahn_eval(hahnfit::HahnContext{alpha, beta, *N}, k, x);
    }
    else
        value = hahnfit::jacobi_eval(hahnfit::JacobiParams{alpha, beta}, k, x);
    std::cout << hahnfit::format_real(value) << '\n';
    return exit_pass;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hahn and Jacobi polynomial expansions on equidistant grids"};
    app.require_subcommand(1);

    std::string   suite;
    std::uint64_t seed = 1;
    std::string   json_path;
    auto*         verify = app.add_subcommand("verify", "run an invariant suite");
    verify->add_option("suite", suite, "suite name")->required();
    verify->add_option("--seed", seed, "seed for randomized suites");
    verify->add_option("--json", json_path, "write the JSON report here");

    ConvergeArgs conv;
    auto*        converge = app.add_subcommand("converge", "error sweep over a degree schedule");
    converge->add_option("--func", conv.func)->required();
    converge->add_option("--alpha", conv.alpha)->required();
    converge->add_option("--schedule", conv.schedule)->required();
    converge->add_option("--n-min", conv.n_min);
    converge->add_option("--n-max", conv.n_max);
    converge->add_option("--n-values", conv.n_values, "explicit degrees, overrides the range")->delimiter(',');
    converge->add_option("--jobs", conv.jobs)->check(CLI::PositiveNumber);
    converge->add_flag("--no-timing", conv.no_timing, "write wall_time_ms = 0");
    converge->add_option("--out", conv.out)->required();

    std::string exp_func;
    double      exp_alpha = 0.0;
    long        exp_N     = 0;
    int         exp_n     = 0;
    std::string exp_out;
    auto*       expand = app.add_subcommand("expand", "coefficients and plot table for one fit");
    expand->add_option("--func", exp_func)->required();
    expand->add_option("--alpha", exp_alpha)->required();
    expand->add_option("--N", exp_N)->required();
    expand->add_option("--n", exp_n)->required();
    expand->add_option("--out", exp_out)->required();

    std::string           family;
    double                ev_alpha = 0.0;
    double                ev_beta  = 0.0;
    std::optional< long > ev_N;
    int                   ev_k = 0;
    double                ev_x = 0.0;
    auto*                 eval = app.add_subcommand("eval", "evaluate one polynomial");
    eval->add_option("--family", family)->required()->check(CLI::IsMember({"hahn", "jacobi"}));
    eval->add_option("--alpha", ev_alpha)->required();
    eval->add_option("--beta", ev_beta)->required();
    eval->add_option("--N", ev_N);
    eval->add_option("--k", ev_k)->required();
    eval->add_option("--x", ev_x)->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_usage;
    }

    try
    {
        if (*verify)
            return cmd_verify(suite, seed, json_path);
        if (*converge)
            return cmd_converge(conv);
        if (*expand)
            return cmd_expand(exp_func, exp_alpha, exp_N, exp_n, exp_out);
        return cmd_eval(family, ev_alpha, ev_beta, ev_N, ev_k, ev_x);
    }
    catch (const std::invalid_argument& e) // usage, unknown function, bad parameters
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::logic_error& e) // domain violations, degree beyond N
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
}
