// hankel: eigenpairs, verification suites and figure data for the finite
// Hankel transform. See README.md for the commands.

#include <iostream>
#include <numbers>
#include <string>

#include <CLI11.hpp>

#include "hankel/cli.hpp"

namespace {

using hankel::cli::Command;
using hankel::cli::Format;
using hankel::cli::RunConfig;

struct Flags {
    std::string alpha;
    std::string c;
    std::string format = "csv";
    std::string function = "f1";
};

void add_common(CLI::App* sub, RunConfig& cfg, Flags& flags, bool lists) {
    sub->add_option("--alpha", flags.alpha, lists ? "Hankel order(s), comma separated" : "Hankel order");
    sub->add_option("--c", flags.c, lists ? "bandwidth(s), comma separated; accepts 10pi" : "bandwidth; accepts 10pi");
    sub->add_option("--out", cfg.output, "output file, - for stdout");
    sub->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--gnuplot", cfg.gnuplot, "also write a gnuplot script here");
    sub->add_option("--threads", cfg.threads, "worker threads (default: HP_THREADS or all cores)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite Hankel transform: CPSWF eigenpairs and numerical verification"};
    app.require_subcommand(1);
    RunConfig cfg;
    Flags flags;

    auto* eigvals = app.add_subcommand("eigvals", "chi, mu, lambda for n <= n-max");
    add_common(eigvals, cfg, flags, true);
    eigvals->add_option("--n-max", cfg.n_max, "largest order");

    auto* eigfun = app.add_subcommand("eigfun", "eigenfunction samples (csv) or coefficient records (json)");
    add_common(eigfun, cfg, flags, true);
    eigfun->add_option("--n-max", cfg.n_max, "largest order");
    eigfun->add_option("--grid", cfg.grid, "number of x samples in [0,1]");

    auto* verify = app.add_subcommand("verify", "run the bound checks, JSON lines out");
    add_common(verify, cfg, flags, true);
    verify->add_option("--n-max", cfg.n_max, "largest order");
    verify->add_option("--suite", cfg.suite, "default or extended")->check(CLI::IsMember({"default", "extended"}));
    verify->add_option("--perturb-lambda", cfg.perturb_lambda, "scale lambda of the largest alpha (testing)")->group("");

    auto* decay = app.add_subcommand("decay", "log lambda against the decay envelopes");
    add_common(decay, cfg, flags, true);
    decay->add_option("--n-max", cfg.n_max, "largest order");

    auto* approx = app.add_subcommand("approx", "partial-sum approximation of f1 or f2");
    add_common(approx, cfg, flags, false);
    approx->add_option("--N", cfg.N, "last order of the partial sum");
    approx->add_option("--function", flags.function, "f1 or f2")->check(CLI::IsMember({"f1", "f2"}));
    approx->add_option("--grid", cfg.grid, "number of x samples in [0,1]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : hankel::cli::exit_code::usage;
    }

    try {
        if (*eigvals) cfg.command = Command::eigvals;
        else if (*eigfun) cfg.command = Command::eigfun;
        else if (*verify) cfg.command = Command::verify;
        else if (*decay) cfg.command = Command::decay;
        else cfg.command = Command::approx;
        cfg.format = flags.format == "json" ? Format::json : Format::csv;
        cfg.function = flags.function == "f2" ? hankel::FunctionId::f2 : hankel::FunctionId::f1;

        const bool defaults = cfg.command == Command::verify;
        const bool alpha_given = !(*app.get_subcommands().front()).get_option("--alpha")->empty();
        const bool c_given = !(*app.get_subcommands().front()).get_option("--c")->empty();
        if (alpha_given) cfg.alphas = hankel::cli::parse_list(flags.alpha, "alpha");
        else if (defaults) cfg.alphas = {0.0, 0.5, 1.0, 2.0, 3.0};
        else if (cfg.command != Command::approx) cfg.alphas = {1.0};
        if (c_given) cfg.cs = hankel::cli::parse_list(flags.c, "c");
        else if (defaults) cfg.cs = {5 * std::numbers::pi, 10 * std::numbers::pi};
        else cfg.cs = {10 * std::numbers::pi};
        if (cfg.command == Command::approx && (cfg.cs.size() > 1 || cfg.alphas.size() > 1))
            throw hankel::cli::UsageError("approx takes a single alpha and c");
    } catch (const hankel::cli::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return hankel::cli::exit_code::usage;
    }
    return hankel::cli::run(cfg, std::cout, std::cerr);
}
