#pragma once

// Command implementations behind the `hankel` executable. Each command writes
// to a stream and returns an exit status; tools/hankel_cli.cpp only parses flags.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "hankel/approx.hpp"
#include "hankel/bounds.hpp"
#include "hankel/cpswf.hpp"
#include "hankel/errors.hpp"
#include "hankel/io.hpp"

namespace hankel::cli {

enum class Command { eigvals, eigfun, verify, decay, approx };
enum class Format { csv, json };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verification_failed = 1;
inline constexpr int usage = 2;
inline constexpr int nonconvergence = 3;
inline constexpr int io = 4;
} // namespace exit_code

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Command command = Command::eigvals;
    std::vector<double> alphas;
    std::vector<double> cs;
    int n_max = 40;
    int N = 11;
    FunctionId function = FunctionId::f1;
    std::string output = "-";
    Format format = Format::csv;
    std::string suite = "default";
    int grid = 201;
    std::string gnuplot; // optional script path
    int threads = 0;     // 0: HP_THREADS or hardware concurrency
    double perturb_lambda = 1.0; // test hook: scales lambda of the last alpha in verify
};

/// "31.4159", "pi", "10pi", "2.5pi", "10*pi". Multiples of pi are formed as k * pi
/// from the exact token k, so "10pi" is the double nearest 10 * pi.
inline double parse_bandwidth(std::string_view token) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    auto number = [&](std::string_view s) {
        s = trim(s);
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
            throw UsageError("not a number: '" + std::string(s) + "'");
        return v;
    };
    token = trim(token);
    if (token.size() >= 2 && token.substr(token.size() - 2) == "pi") {
        std::string_view k = trim(token.substr(0, token.size() - 2));
        if (!k.empty() && k.back() == '*') k = k.substr(0, k.size() - 1);
        return (trim(k).empty() ? 1.0 : number(k)) * std::numbers::pi;
    }
    return number(token);
}

/// Comma separated list; an empty list is a usage error.
inline std::vector<double> parse_list(std::string_view text, std::string_view what) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const std::string_view item = text.substr(start, end - start);
        if (item.find_first_not_of(" \t") != std::string_view::npos) out.push_back(parse_bandwidth(item));
        start = end + 1;
    }
    if (out.empty()) throw UsageError("empty " + std::string(what) + " list");
    return out;
}

inline void validate(const RunConfig& cfg) {
    if (cfg.alphas.empty()) throw UsageError("empty alpha list");
    if (cfg.cs.empty()) throw UsageError("empty c list");
    for (double a : cfg.alphas)
        if (!(a > -0.5) || !std::isfinite(a)) throw UsageError("alpha must exceed -1/2");
    for (double c : cfg.cs)
        if (!(c > 0.0) || !std::isfinite(c)) throw UsageError("c must be positive");
    if (cfg.n_max < 0) throw UsageError("--n-max must be non-negative");
    if (cfg.N < 0) throw UsageError("--N must be non-negative");
    if (cfg.grid < 2) throw UsageError("--grid must be at least 2");
    if (cfg.suite != "default" && cfg.suite != "extended") throw UsageError("--suite must be default or extended");
}

/// Worker count: explicit value, else HP_THREADS, else hardware concurrency.
inline unsigned thread_count(int requested = 0) {
    if (requested > 0) return static_cast<unsigned>(requested);
    if (const char* env = std::getenv("HP_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// results[i] = f(i), computed by a small pool; the first exception (by index) is rethrown.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F&& f, unsigned threads) {
    std::vector<T> results(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i] = f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

namespace detail {

struct Tuple {
    double alpha;
    double c;
};

inline std::vector<Tuple> tuples(const RunConfig& cfg) {
    std::vector<Tuple> out;
    for (double a : cfg.alphas)
        for (double c : cfg.cs) out.push_back({a, c});
    return out;
}

inline std::vector<std::vector<Cpswf>> solve_all(const RunConfig& cfg, const std::vector<Tuple>& ts) {
    return parallel_map<std::vector<Cpswf>>(
        ts.size(), [&](std::size_t i) { return solve(ts[i].alpha, ts[i].c, cfg.n_max); }, thread_count(cfg.threads));
}

inline std::string csv_or_empty(double v) { return std::isfinite(v) ? format_double(v) : std::string(); }

inline nlohmann::json json_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

// JSON numbers are printed through %.15e as well, so files are byte-stable.
inline std::string json_line(const std::vector<std::pair<std::string, double>>& fields) {
    std::string s = "{";
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) s += ",";
        s += "\"" + fields[i].first + "\":";
        s += std::isfinite(fields[i].second) ? format_double(fields[i].second) : "null";
    }
    return s + "}";
}

} // namespace detail

/// n, alpha, c, chi, mu, lambda, log_lambda for every (alpha, c) and n <= n_max.
inline int cmd_eigvals(const RunConfig& cfg, std::ostream& out) {
    const auto ts = detail::tuples(cfg);
    const auto families = detail::solve_all(cfg, ts);
    if (cfg.format == Format::csv) out << "n,alpha,c,chi,mu,lambda,log_lambda\n";
    for (const auto& fam : families) {
        for (const Cpswf& f : fam) {
            if (cfg.format == Format::csv) {
                out << f.n << ',' << format_double(f.alpha) << ',' << format_double(f.c) << ',' << format_double(f.chi) << ','
                    << format_double(f.mu) << ',' << format_double(f.lambda) << ',' << format_double(f.log_lambda) << '\n';
            } else {
                out << detail::json_line({{"n", f.n},
                                          {"alpha", f.alpha},
                                          {"c", f.c},
                                          {"chi", f.chi},
                                          {"mu", f.mu},
                                          {"lambda", f.lambda},
                                          {"log_lambda", f.log_lambda}})
                    << '\n';
            }
        }
    }
    return exit_code::ok;
}

/// CSV: n, alpha, c, x, phi on a uniform grid of [0, 1]. JSON: one Cpswf record per line.
inline int cmd_eigfun(const RunConfig& cfg, std::ostream& out) {
    const auto ts = detail::tuples(cfg);
    const auto families = detail::solve_all(cfg, ts);
    if (cfg.format == Format::csv) out << "n,alpha,c,x,phi\n";
    for (const auto& fam : families) {
        for (const Cpswf& f : fam) {
            if (cfg.format == Format::json) {
                out << to_json(f).dump() << '\n';
                continue;
            }
            for (int j = 0; j < cfg.grid; ++j) {
                const double x = static_cast<double>(j) / (cfg.grid - 1);
                out << f.n << ',' << format_double(f.alpha) << ',' << format_double(f.c) << ',' << format_double(x) << ','
                    << format_double(eval_inside(f, x)) << '\n';
            }
        }
    }
    return exit_code::ok;
}

/// All reports for one solved family.
inline std::vector<BoundReport> verify_family(const std::vector<Cpswf>& fam, bool extended) {
    std::vector<BoundReport> out;
    for (const Cpswf& f : fam) {
        out.push_back(check_lemma1(f));
        out.push_back(check_lemma2(f));
        for (auto& r : check_prop1_thm1(f)) out.push_back(std::move(r));
        out.push_back(check_prop2(f));
    }
    for (auto& r : check_thm2(std::span<const Cpswf>(fam))) out.push_back(std::move(r));
    const double alpha = fam.front().alpha;
    const double c = fam.front().c;
    const int n_max = fam.back().n;
    const int n_first = static_cast<int>(std::ceil(plunge_index(alpha, c))) + 3;
    if (alpha >= 0.5 && n_first <= n_max)
        out.push_back(check_decay_upper(std::span<const Cpswf>(fam), 8.0 / std::numbers::e, n_first, n_max));
    if (extended) {
        const LowerEnvelopeFit fit = fit_decay_lower(std::span<const Cpswf>(fam), 0, n_max, 1.0, 0);
        out.push_back(check_decay_lower(std::span<const Cpswf>(fam), 0, n_max, std::isfinite(fit.A) ? fit.A : 1.0, 1.0, 0));
        if (n_max >= 10) out.push_back(check_decay_lower_stability(std::span<const Cpswf>(fam), 0, n_max - 5));
        const double A = std::isfinite(fit.A) ? fit.A : 2.0;
        for (const Cpswf& f : fam) out.push_back(check_coeff_decay(f, A));
        if (n_max >= 10) out.push_back(check_coeff_decay_stability(std::span<const Cpswf>(fam), A, 0, n_max - 5));
    }
    return out;
}

/// JSON lines of BoundReport; exit 1 iff some report with met hypotheses fails.
inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    RunConfig run = cfg;
    if (run.suite == "extended") {
        std::set<double> cs(run.cs.begin(), run.cs.end());
        cs.insert(15.0 * std::numbers::pi);
        run.cs.assign(cs.begin(), cs.end());
    }
    std::vector<double> alphas(run.alphas);
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    run.alphas = alphas;

    const auto ts = detail::tuples(run);
    auto families = detail::solve_all(run, ts);
    if (run.perturb_lambda != 1.0) {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (ts[i].alpha != alphas.back()) continue;
            for (Cpswf& f : families[i]) {
                f.log_lambda += std::log(run.perturb_lambda);
                f.lambda *= run.perturb_lambda;
            }
        }
    }
    const bool extended = run.suite == "extended";
    auto reports = parallel_map<std::vector<BoundReport>>(
        families.size(), [&](std::size_t i) { return verify_family(families[i], extended); }, thread_count(run.threads));

    // monotonicity in alpha, one report per c
    for (double c : run.cs) {
        std::vector<std::vector<double>> logs;
        for (std::size_t i = 0; i < ts.size(); ++i)
            if (ts[i].c == c) logs.push_back(log_lambdas_of(std::span<const Cpswf>(families[i])));
        reports.push_back({check_monotonicity_alpha(c, std::span<const double>(alphas), std::span<const std::vector<double>>(logs))});
    }

    bool failed = false;
    for (const auto& group : reports) {
        for (const BoundReport& r : group) {
            nlohmann::json j = to_json(r);
            out << j.dump() << '\n';
            if (r.hypotheses_met && !r.pass) failed = true;
        }
    }
    return failed ? exit_code::verification_failed : exit_code::ok;
}

/// alpha, c, n, log_lambda, envelope_upper = -4n log(8n/(ec)), envelope_lower = -A(2n+alpha+1) log(pi n/c)
/// with A fitted per (alpha, c). Envelopes are empty (null) where their logarithm is not positive.
inline int cmd_decay(const RunConfig& cfg, std::ostream& out) {
    const auto ts = detail::tuples(cfg);
    const auto families = detail::solve_all(cfg, ts);
    if (cfg.format == Format::csv) out << "alpha,c,n,log_lambda,envelope_upper,envelope_lower\n";
    for (const auto& fam : families) {
        const LowerEnvelopeFit fit = fit_decay_lower(std::span<const Cpswf>(fam), 0, cfg.n_max, 1.0, 0);
        for (const Cpswf& f : fam) {
            const double n = f.n;
            const double ru = 8.0 * n / (std::numbers::e * f.c);
            const double upper = ru > 1.0 ? -4.0 * n * std::log(ru) : std::numeric_limits<double>::quiet_NaN();
            const double rl = std::numbers::pi * n / f.c;
            const double lower = (rl > 1.0 && std::isfinite(fit.A)) ? -fit.A * (2.0 * n + f.alpha + 1.0) * std::log(rl)
                                                                     : std::numeric_limits<double>::quiet_NaN();
            if (cfg.format == Format::csv) {
                out << format_double(f.alpha) << ',' << format_double(f.c) << ',' << f.n << ',' << format_double(f.log_lambda) << ','
                    << detail::csv_or_empty(upper) << ',' << detail::csv_or_empty(lower) << '\n';
            } else {
                out << detail::json_line({{"alpha", f.alpha},
                                          {"c", f.c},
                                          {"n", n},
                                          {"log_lambda", f.log_lambda},
                                          {"envelope_upper", upper},
                                          {"envelope_lower", lower}})
                    << '\n';
            }
        }
    }
    return exit_code::ok;
}

/// x, f, S_N f, error on a grid of [0, 1], then a summary. In CSV the summary
/// is a trailing comment line (gnuplot and most readers skip it).
inline int cmd_approx(const RunConfig& cfg, std::ostream& out) {
    const double c = cfg.cs.front();
    const bool default_alpha = cfg.alphas.empty();
    TestFunction f = (cfg.function == FunctionId::f1) ? make_f1(default_alpha ? 1.5 : cfg.alphas.front())
                                                       : make_f2(default_alpha ? 1.0 : cfg.alphas.front());
    const auto basis = solve(f.alpha, c, cfg.N);
    const ApproxResult r = project(f, std::span<const Cpswf>(basis), cfg.N, cfg.grid);
    if (cfg.format == Format::csv) {
        out << "x,f,S_N_f,error\n";
        for (const ErrorSample& e : r.error_grid)
            out << format_double(e.x) << ',' << format_double(e.f) << ',' << format_double(e.partial) << ','
                << format_double(e.error) << '\n';
        out << "# summary N=" << r.N << " alpha=" << format_double(f.alpha) << " c=" << format_double(c)
            << " error_l2=" << format_double(r.error_l2) << " budget=" << format_double(r.budget)
            << " bound=" << format_double(r.bound()) << " bound_abs_eps=" << format_double(r.bound_absolute_eps())
            << " eps_omega=" << format_double(r.eps_omega) << " sqrt_lambda=" << format_double(r.sqrt_lambda)
            << " norm_l2=" << format_double(r.norm_l2) << '\n';
    } else {
        for (const ErrorSample& e : r.error_grid)
            out << detail::json_line({{"x", e.x}, {"f", e.f}, {"S_N_f", e.partial}, {"error", e.error}}) << '\n';
        out << detail::json_line({{"N", r.N},
                                  {"alpha", f.alpha},
                                  {"c", c},
                                  {"error_l2", r.error_l2},
                                  {"budget", r.budget},
                                  {"bound", r.bound()},
                                  {"bound_abs_eps", r.bound_absolute_eps()},
                                  {"eps_omega", r.eps_omega},
                                  {"sqrt_lambda", r.sqrt_lambda},
                                  {"norm_l2", r.norm_l2}})
            << '\n';
    }
    return r.error_l2 <= r.bound() * (1.0 + 1e-6) ? exit_code::ok : exit_code::verification_failed;
}

/// Plot script for the data file written by the command, or empty when there is none.
inline std::string gnuplot_script(const RunConfig& cfg) {
    const std::string data = cfg.output == "-" ? "data.csv" : cfg.output;
    std::ostringstream s;
    s << "set datafile separator ','\nset key autotitle columnhead\n";
    switch (cfg.command) {
    case Command::eigvals:
        s << "set xlabel 'n'\nset ylabel 'log lambda'\nplot '" << data << "' using 1:7 with linespoints\n";
        break;
    case Command::decay:
        s << "set xlabel 'n'\nplot '" << data << "' using 3:4 with points title 'log lambda', '' using 3:5 with lines title 'upper', "
          << "'' using 3:6 with lines title 'lower'\n";
        break;
    case Command::approx:
        s << "set xlabel 'x'\nplot '" << data << "' using 1:4 with lines title 'f - S_N f'\n";
        break;
    case Command::eigfun:
        s << "set xlabel 'x'\nplot '" << data << "' using 4:5 with lines\n";
        break;
    case Command::verify:
        return {};
    }
    return s.str();
}

inline int dispatch(const RunConfig& cfg, std::ostream& out) {
    switch (cfg.command) {
    case Command::eigvals:
        return cmd_eigvals(cfg, out);
    case Command::eigfun:
        return cmd_eigfun(cfg, out);
    case Command::verify:
        return cmd_verify(cfg, out);
    case Command::decay:
        return cmd_decay(cfg, out);
    case Command::approx:
        return cmd_approx(cfg, out);
    }
    return exit_code::usage;
}

/// Validates, runs into a buffer, then writes the output file in one go.
/// Library errors are mapped to exit statuses and reported on `err`.
inline int run(const RunConfig& cfg, std::ostream& stdout_stream, std::ostream& err) {
    try {
        RunConfig checked = cfg;
        if (checked.command == Command::approx) {
            if (checked.cs.empty()) throw UsageError("empty c list");
            if (checked.alphas.empty()) checked.alphas = {checked.function == FunctionId::f1 ? 1.5 : 1.0};
            validate(checked);
            checked.alphas = cfg.alphas; // keep "unset" so the function's own alpha is used
        } else {
            validate(checked);
        }
        std::ostringstream buffer;
        const int status = dispatch(checked, buffer);
        if (checked.output == "-") {
            stdout_stream << buffer.str();
        } else {
            std::ofstream file(checked.output, std::ios::binary);
            if (!file) throw IoError("cannot open output file '" + checked.output + "'");
            file << buffer.str();
            if (!file) throw IoError("write failed for '" + checked.output + "'");
        }
        if (!checked.gnuplot.empty()) {
            std::ofstream script(checked.gnuplot, std::ios::binary);
            if (!script) throw IoError("cannot open gnuplot script '" + checked.gnuplot + "'");
            script << gnuplot_script(checked);
        }
        return status;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return exit_code::io;
    } catch (const ResourceError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_code::nonconvergence;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_code::nonconvergence;
    }
}

} // namespace hankel::cli
