// SPDX-License-Identifier: MIT
#pragma once

/// \file cli.hpp
///
/// Command-line front end: flag parsing into a RunConfig, validation, and
/// execution with JSON/CSV output. Exit codes: 0 success, 2 invalid
/// configuration, 3 computational failure (error name on stderr).

#include <algorithm>
#include <charconv>
#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "whfact/whfact.hpp"

namespace whfact::cli {

enum class Command { None, Approx, Factor, Bound, Compare, ListKernels };

struct RunConfig {
    Command command = Command::None;
    std::string kernel = "example1";
    std::vector<std::string> params;
    std::string map = "even";
    std::string interval;
    std::string degrees = "5,5";
    double scale = 1.0;
    double shift = 0.0;
    std::size_t grid = 0;  // oracle size for the factor cross-check; 0 skips it
    double tol = 1e-14;
    std::string output;
    std::string poles_output;
    std::string format;  // empty: csv for approx and compare, json otherwise
    double p = 2.0;
    double eps = 0.0;
    double m_lower = 0.0;
    double M_upper = 0.0;
    bool real = false;
};

/// Configuration problems; reported with exit status 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void configure(CLI::App& app, RunConfig& cfg) {
    app.require_subcommand(1);
    auto kernel_opts = [&cfg](CLI::App* sub) {
        sub->add_option("--kernel", cfg.kernel, "Built-in kernel name");
        sub->add_option("--param", cfg.params, "Kernel parameter as name=value (repeatable)");
        sub->add_option("--degrees", cfg.degrees, "Type (m,n) of the approximation in x, as m,n");
        sub->add_option("--tol", cfg.tol, "Chebyshev resolution tolerance");
        sub->add_option("--output", cfg.output, "Output file (default: standard output)");
        sub->add_option("--format", cfg.format, "json or csv (default: csv for approx/compare, json for factor)");
    };
    auto map_opts = [&cfg](CLI::App* sub) {
        sub->add_option("--map", cfg.map, "even, general or truncate");
        sub->add_option("--interval", cfg.interval, "Truncation interval a,b");
        sub->add_option("--scale", cfg.scale, "Preconditioning scale");
        sub->add_option("--shift", cfg.shift, "Preconditioning shift");
    };

    auto* approx = app.add_subcommand("approx", "CF approximation and its error curve");
    kernel_opts(approx);
    map_opts(approx);
    approx->add_option("--poles-output", cfg.poles_output, "Zeros/poles CSV file");
    approx->callback([&cfg] { cfg.command = Command::Approx; });

    auto* factor = app.add_subcommand("factor", "Certified Wiener-Hopf factorization");
    kernel_opts(factor);
    map_opts(factor);
    factor->add_option("--grid", cfg.grid, "FFT oracle size for a cross-check (power of two)");
    factor->add_option("--p", cfg.p, "Norm exponent for the certificate");
    factor->add_option("--poles-output", cfg.poles_output, "Zeros/poles CSV file");
    factor->callback([&cfg] { cfg.command = Command::Factor; });

    auto* compare = app.add_subcommand("compare", "Domain truncation against the whole-line map");
    kernel_opts(compare);
    compare->add_option("--interval", cfg.interval, "Truncation interval a,b")->required();
    compare->add_option("--poles-output", cfg.poles_output, "Zeros/poles CSV file");
    compare->callback([&cfg] {
        cfg.command = Command::Compare;
        cfg.map = "truncate";
    });

    auto* bound = app.add_subcommand("bound", "Evaluate the multiplicative factor bound");
    bound->add_option("--p", cfg.p, "Norm exponent")->required();
    bound->add_option("--eps", cfg.eps, "Kernel residual norm")->required();
    bound->add_option("--m", cfg.m_lower, "Lower bracket of |K|")->required();
    bound->add_option("--M", cfg.M_upper, "Upper bracket of |K|")->required();
    bound->add_flag("--real", cfg.real, "Real kernel (drops the exp(c pi / 2) factor)");
    bound->add_option("--format", cfg.format, "json (default) or csv");
    bound->add_option("--output", cfg.output, "Output file (default: standard output)");
    bound->callback([&cfg] { cfg.command = Command::Bound; });

    auto* list = app.add_subcommand("list-kernels", "List built-in kernels");
    list->add_option("--output", cfg.output, "Output file (default: standard output)");
    list->callback([&cfg] { cfg.command = Command::ListKernels; });
}

namespace detail {

inline std::string output_format(const RunConfig& cfg) {
    if (!cfg.format.empty()) return cfg.format;
    return cfg.command == Command::Approx || cfg.command == Command::Compare ? "csv" : "json";
}

inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s, const std::string& what) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end) throw ValidationError("invalid number for " + what + ": '" + s + "'");
    return v;
}

inline std::pair<std::string, std::string> split_pair(const std::string& s, char sep, const std::string& what) {
    const auto pos = s.find(sep);
    if (pos == std::string::npos) throw ValidationError(what + " must look like a" + sep + "b, got '" + s + "'");
    return {s.substr(0, pos), s.substr(pos + 1)};
}

inline std::size_t parse_count(const std::string& s, const std::string& what) {
    std::size_t v = 0;
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end || s.empty()) {
        throw ValidationError("invalid nonnegative integer for " + what + ": '" + s + "'");
    }
    return v;
}

inline nlohmann::json complex_json(std::complex<double> z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline nlohmann::json roots_json(const std::vector<std::complex<double>>& roots) {
    auto a = nlohmann::json::array();
    for (const auto& r : roots) a.push_back(complex_json(r));
    return a;
}

inline nlohmann::json rational_json(const RationalFunction& r) {
    return {{"zeros", roots_json(r.zeros())}, {"poles", roots_json(r.poles())}, {"gain", complex_json(r.gain())}};
}

inline nlohmann::json map_json(const RealLineMap& m) {
    nlohmann::json j = {{"kind", map_name(m.kind)}, {"scale", m.scale}, {"shift", m.shift}};
    if (m.kind == MapKind::LinearTruncation) j["interval"] = {m.a, m.b};
    return j;
}

inline nlohmann::json kernel_json(const KernelSpec& k) {
    return {{"name", k.name}, {"parameters", k.parameters}};
}

inline nlohmann::json bound_json(const BoundReport& b) {
    return {{"p", b.p},           {"epsilon_p", b.epsilon_p},       {"m_lower", b.m_lower},
            {"M_upper", b.M_upper}, {"factor_bound", b.factor_bound}, {"real_kernel", b.real_kernel}};
}

inline std::string parity_name(Parity p) {
    switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::None: return "none";
    }
    return "none";
}

struct Resolved {
    KernelSpec kernel;
    RealLineMap map;
    std::size_t m = 0, n = 0;
};

inline Resolved resolve(const RunConfig& cfg) {
    Resolved r;
    std::map<std::string, double> params;
    for (const auto& p : cfg.params) {
        auto [key, value] = split_pair(p, '=', "--param");
        if (key.empty()) throw ValidationError("--param needs a name");
        params[key] = parse_double(value, "--param " + key);
    }
    try {
        r.kernel = make_kernel(cfg.kernel, params);
    } catch (const Error& e) {
        throw ValidationError(e.what());
    }
    const auto [ms, ns] = split_pair(cfg.degrees, ',', "--degrees");
    r.m = parse_count(ms, "--degrees m");
    r.n = parse_count(ns, "--degrees n");
    if (r.n > r.m) throw ValidationError("--degrees needs m >= n");
    if (!(cfg.tol > 0.0)) throw ValidationError("--tol must be positive");
    if (output_format(cfg) != "json" && output_format(cfg) != "csv") throw ValidationError("--format must be json or csv");
    if (!(cfg.scale > 0.0) || !std::isfinite(cfg.scale) || !std::isfinite(cfg.shift)) {
        throw ValidationError("--scale must be positive and --shift finite");
    }

    if (cfg.map == "even") {
        r.map = RealLineMap::even(cfg.scale, cfg.shift);
    } else if (cfg.map == "general") {
        r.map = RealLineMap::general(cfg.scale, cfg.shift);
    } else if (cfg.map == "truncate") {
        if (cfg.interval.empty()) throw ValidationError("--map truncate needs --interval a,b");
        const auto [as, bs] = split_pair(cfg.interval, ',', "--interval");
        const double a = parse_double(as, "--interval a");
        const double b = parse_double(bs, "--interval b");
        if (!(a < b)) throw ValidationError("--interval needs a < b");
        r.map = RealLineMap::truncation(a, b);
    } else {
        throw ValidationError("--map must be even, general or truncate");
    }
    if (cfg.command == Command::Factor) {
        if (r.map.kind == MapKind::LinearTruncation) throw ValidationError("factor needs --map even or general");
        if (cfg.grid != 0 && (cfg.grid < 4 || (cfg.grid & (cfg.grid - 1)) != 0)) {
            throw ValidationError("--grid must be a power of two >= 4");
        }
        if (!(cfg.p > 1.0) || !std::isfinite(cfg.p)) throw ValidationError("--p must satisfy 1 < p < infinity");
    }
    return r;
}

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            out_ = &fallback;
        } else {
            file_.open(path);
            if (!file_) throw ValidationError("cannot open output file '" + path + "'");
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }

private:
    std::ofstream file_;
    std::ostream* out_ = nullptr;
};

inline void write_roots_csv(std::ostream& os, const std::vector<std::pair<std::string, const RationalFunction*>>& parts) {
    os << "part,kind,re,im\n";
    for (const auto& [name, r] : parts) {
        for (const auto& z : r->zeros()) {
            os << name << ",zero," << format_double(z.real()) << ',' << format_double(z.imag()) << '\n';
        }
        for (const auto& p : r->poles()) {
            os << name << ",pole," << format_double(p.real()) << ',' << format_double(p.imag()) << '\n';
        }
    }
}

template <typename K, typename R>
void write_curve_csv(std::ostream& os, const std::vector<double>& grid, K&& k, R&& r) {
    os << "y,F,F_approx,abs_error\n";
    for (double y : grid) {
        const double f = k(y);
        const double a = r(y);
        os << format_double(y) << ',' << format_double(f) << ',' << format_double(a) << ','
           << format_double(std::abs(f - a)) << '\n';
    }
}

template <typename K, typename R>
nlohmann::json curve_json(const std::vector<double>& grid, K&& k, R&& r) {
    nlohmann::json c = {{"y", nlohmann::json::array()},
                        {"F", nlohmann::json::array()},
                        {"F_approx", nlohmann::json::array()},
                        {"abs_error", nlohmann::json::array()}};
    for (double y : grid) {
        const double f = k(y);
        const double a = r(y);
        c["y"].push_back(y);
        c["F"].push_back(f);
        c["F_approx"].push_back(a);
        c["abs_error"].push_back(std::abs(f - a));
    }
    return c;
}

inline PipelineOptions pipeline_options(const RunConfig& cfg) {
    PipelineOptions o;
    o.cheb.tol = cfg.tol;
    o.p = cfg.p;
    return o;
}

inline int do_factor(const RunConfig& cfg, const Resolved& r, std::ostream& out) {
    const auto opts = pipeline_options(cfg);
    const auto f = factorize_kernel(r.kernel, r.map, r.m, r.n, opts);
    const auto& rep = f.report;
    nlohmann::json j;
    j["command"] = "factor";
    j["kernel"] = kernel_json(r.kernel);
    j["map"] = map_json(r.map);
    j["degrees"] = {{"m_x", rep.m_x}, {"n_x", rep.n_x}, {"m_y", rep.m_y}, {"n_y", rep.n_y}};
    j["approximant"] = rational_json(f.approximant);
    j["plus"] = rational_json(f.factors.plus);
    j["minus"] = rational_json(f.factors.minus);
    j["index_balanced"] = f.factors.index_balanced;
    j["report"] = {
        {"sup_residual_grid", rep.sup_residual_grid},
        {"sup_residual_pinned", rep.sup_residual_pinned},
        {"sup_certified", false},
        {"l2_residual", rep.l2_residual},
        {"cf_predicted", rep.cf_predicted},
        {"factor_bound_l2", rep.factor_bound_l2},
        {"measured_factor_error_l2",
         rep.measured_factor_error_l2 ? nlohmann::json(*rep.measured_factor_error_l2) : nlohmann::json(nullptr)},
        {"bound", bound_json(rep.bound)},
        {"approximant_at_infinity", complex_json(rep.approximant_at_infinity)},
        {"cheb_degree", rep.cheb_degree},
        {"degenerate_spectrum", rep.degenerate_spectrum},
        {"symmetry_reduced", rep.symmetry_reduced},
    };
    if (cfg.grid != 0) {
        const auto oracle = mult_factorize_oracle(r.kernel, cfg.grid);
        double sup = 0.0;
        for (std::size_t i = 0; i < oracle.y.size(); ++i) {
            sup = std::max(sup, std::abs(oracle.k_plus[i] - f.factors.plus(oracle.y[i])));
        }
        LpOptions lp = opts.lp;
        lp.abs_tol = std::max(opts.lp_abs_fraction * rep.cf_predicted, opts.lp_abs_floor);
        const double l2 = lp_norm(
            [&](double y) { return oracle.plus(std::complex<double>(y)) - f.factors.plus(std::complex<double>(y)); },
            2.0, lp);
        j["oracle"] = {{"grid", cfg.grid}, {"sup_difference_plus", sup}, {"l2_difference_plus", l2}};
    }

    Sink sink(cfg.output, out);
    if (output_format(cfg) == "json") {
        sink.stream() << j.dump(2) << '\n';
    } else {
        write_roots_csv(sink.stream(), {{"plus", &f.factors.plus}, {"minus", &f.factors.minus}});
    }
    if (!cfg.poles_output.empty()) {
        Sink poles(cfg.poles_output, out);
        write_roots_csv(poles.stream(), {{"approximant", &f.approximant}});
    }
    return 0;
}

inline int do_approx(const RunConfig& cfg, const Resolved& r, std::ostream& out) {
    const auto opts = pipeline_options(cfg);
    nlohmann::json summary;
    std::vector<double> grid;
    RationalFunction approx;
    if (cfg.command == Command::Compare) {
        const auto t = compare_truncation(r.kernel, r.map.a, r.map.b, r.m, r.n, opts);
        approx = t.approximant;
        summary = {{"command", "compare"},
                   {"kernel", kernel_json(r.kernel)},
                   {"map", map_json(r.map)},
                   {"degrees", {{"m", r.m}, {"n", r.n}}},
                   {"sup_in", t.sup_in},
                   {"sup_out", t.sup_out},
                   {"residual_at_2b", t.residual_at_2b},
                   {"cf_predicted", t.cf_predicted},
                   {"cheb_degree", t.cheb_degree}};
        grid = working_grid(r.map, opts.grid_points);
        const double w = r.map.b - r.map.a;
        for (std::size_t j = 1; j <= 1000; ++j) {
            const double s = w * static_cast<double>(j) / 1000.0;
            grid.push_back(r.map.b + s);
            grid.push_back(r.map.a - s);
        }
        std::sort(grid.begin(), grid.end());
    } else {
        const auto st = approximate_kernel(r.kernel, r.map, r.m, r.n, opts);
        approx = st.rk;
        grid = working_grid(r.map, opts.grid_points);
        double sup = 0.0;
        for (double y : grid) sup = std::max(sup, std::abs(r.kernel(y) - st.rk(std::complex<double>(y))));
        summary = {{"command", "approx"},
                   {"kernel", kernel_json(r.kernel)},
                   {"map", map_json(r.map)},
                   {"degrees", {{"m", r.m}, {"n", r.n}}},
                   {"sup_residual_grid", sup},
                   {"cf_predicted", st.cf.predicted_error},
                   {"cheb_degree", st.cheb_degree},
                   {"degenerate_spectrum", st.cf.degenerate},
                   {"symmetry_reduced", st.cf.symmetry_reduced}};
    }
    summary["approximant"] = rational_json(approx);

    auto k = [&](double y) { return r.kernel(y).real(); };
    auto a = [&](double y) { return approx(std::complex<double>(y)).real(); };
    if (output_format(cfg) == "json") {
        summary["curve"] = curve_json(grid, k, a);
        Sink sink(cfg.output, out);
        sink.stream() << summary.dump(2) << '\n';
    } else {
        Sink sink(cfg.output, out);
        write_curve_csv(sink.stream(), grid, k, a);
        if (!cfg.output.empty()) out << summary.dump(2) << '\n';
    }
    if (!cfg.poles_output.empty()) {
        Sink poles(cfg.poles_output, out);
        write_roots_csv(poles.stream(), {{"approximant", &approx}});
    }
    return 0;
}

inline int do_bound(const RunConfig& cfg, std::ostream& out) {
    if (output_format(cfg) != "json" && output_format(cfg) != "csv") throw ValidationError("--format must be json or csv");
    const auto b = multiplicative_bound(cfg.eps, cfg.p, cfg.m_lower, cfg.M_upper, cfg.real);
    Sink sink(cfg.output, out);
    if (output_format(cfg) == "json") {
        auto j = bound_json(b);
        j["command"] = "bound";
        sink.stream() << j.dump(2) << '\n';
    } else {
        sink.stream() << "p,epsilon_p,m_lower,M_upper,factor_bound,real_kernel\n"
                      << format_double(b.p) << ',' << format_double(b.epsilon_p) << ',' << format_double(b.m_lower)
                      << ',' << format_double(b.M_upper) << ',' << format_double(b.factor_bound) << ','
                      << (b.real_kernel ? "true" : "false") << '\n';
    }
    return 0;
}

inline int do_list(const RunConfig& cfg, std::ostream& out) {
    nlohmann::json j = {{"command", "list-kernels"}, {"kernels", nlohmann::json::array()}};
    for (const auto& k : builtin_kernels()) {
        j["kernels"].push_back({{"name", k.name},
                                {"parameters", k.parameters},
                                {"parity", parity_name(k.parity)},
                                {"value_at_infinity", complex_json(k.value_at_infinity)},
                                {"exact_factors", k.exact_factors.has_value()},
                                {"oracle_grid", k.oracle_grid}});
    }
    Sink sink(cfg.output, out);
    sink.stream() << j.dump(2) << '\n';
    return 0;
}

}  // namespace detail

/// Validates and executes one command.
inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        switch (cfg.command) {
        case Command::Bound: return detail::do_bound(cfg, out);
        case Command::ListKernels: return detail::do_list(cfg, out);
        case Command::None: throw ValidationError("no command given");
        default: break;
        }
        const auto resolved = detail::resolve(cfg);
        if (cfg.command == Command::Factor) return detail::do_factor(cfg, resolved, out);
        return detail::do_approx(cfg, resolved, out);
    } catch (const ValidationError& e) {
        err << "ValidationError: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << e.name() << '\n' << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "InternalError\n" << e.what() << '\n';
        return 3;
    }
}

/// Parses argv and runs. CLI11 parse failures map to exit status 2.
inline int main_entry(int argc, const char* const* argv, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
    CLI::App app{"Certified approximate Wiener-Hopf factorization"};
    app.name("whfact");
    RunConfig cfg;
    configure(app, cfg);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "ValidationError: " << e.what() << '\n';
        return 2;
    }
    return run(cfg, out, err);
}

}  // namespace whfact::cli
