// maxsmooth: command-line front end for the smoothing library.
//
//   maxsmooth gamma   --dims 2,3,10000 [--method auto|exhaustive|pruned]
//   maxsmooth verify  --kind lse --dim 4 [--seed S] [--tol T] [--count N]
//   maxsmooth gap     --kind quad --dim 3
//   maxsmooth solve   --problem data/affine20.json --eps 1e-3 --kind clse [--out trace.csv]
//   maxsmooth regret  --dim 16 --horizon 10000 --seeds 20 --reg entropy [--out trace.csv]
//   maxsmooth instance --components 20 --n 10 --seed S
//
// Every subcommand accepts --format csv|json. Exit codes: 0 ok, 1 failure, 2 usage error.

#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "maxsmooth/cli.hpp"

int main(int argc, char** argv) {
    using namespace maxsmooth;
    cli::RunConfig cfg;
    std::int64_t components = 20;
    std::int64_t instance_n = 10;

    CLI::App app{"Smoothings of the coordinate-wise max: bounds, certificates, minimax and regret"};
    app.require_subcommand(1);

    const std::map<std::string, cli::Format> formats{{"csv", cli::Format::csv}, {"json", cli::Format::json}};
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")->transform(CLI::CheckedTransformer(formats));
        sub->add_option("--seed", cfg.seed, "Random seed");
    };

    auto* gamma = app.add_subcommand("gamma", "Maximal partition sums and their asymptotic bracket");
    gamma->add_option("--dims", cfg.dims, "Comma-separated dimensions")->delimiter(',')->required();
    gamma->add_option("--method", cfg.method, "auto, exhaustive or pruned");
    add_common(gamma);

    auto* verify = app.add_subcommand("verify", "Run the certificate suite for one smoothing");
    verify->add_option("--kind", cfg.kind, "lse | clse | quad | quadc:<c>");
    verify->add_option("--dim", cfg.dim, "Dimension d");
    verify->add_option("--tol", cfg.tol, "Smoothness tolerance");
    verify->add_option("--count", cfg.count, "Samples per certificate");
    add_common(verify);

    auto* gap = app.add_subcommand("gap", "Theoretical and measured gap to the max");
    gap->add_option("--kind", cfg.kind, "lse | clse | quad | quadc:<c>");
    gap->add_option("--dim", cfg.dim, "Dimension d");
    gap->add_option("--count", cfg.count, "Random probe points");
    add_common(gap);

    auto* solve = app.add_subcommand("solve", "Smoothed accelerated minimization of a max of smooth functions");
    solve->add_option("--problem", cfg.problem, "Problem instance JSON")->required();
    solve->add_option("--eps", cfg.eps, "Target accuracy");
    solve->add_option("--kind", cfg.kind, "lse | clse | quad | quadc:<c>");
    solve->add_option("--out", cfg.out, "Trace destination (default stdout)");
    add_common(solve);

    auto* regret = app.add_subcommand("regret", "FTRL in the fair-coin experts game");
    regret->add_option("--dim", cfg.dim, "Number of experts");
    regret->add_option("--horizon", cfg.horizon, "Rounds T");
    regret->add_option("--seeds", cfg.seeds, "Number of consecutive seeds");
    regret->add_option("--reg", cfg.regularizer, "entropy | quad");
    regret->add_option("--out", cfg.out, "Per-round trace CSV");
    add_common(regret);

    auto* instance = app.add_subcommand("instance", "Generate a random affine instance with its exact optimum");
    instance->add_option("--components", components, "Number of affine components");
    instance->add_option("--n", instance_n, "Variable dimension");
    add_common(instance);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::usage;
    }

    try {
        if (*gamma) return cli::cmd_gamma(cfg, std::cout);
        if (*verify) return cli::cmd_verify(cfg, std::cout);
        if (*gap) return cli::cmd_gap(cfg, std::cout);
        if (*solve) return cli::cmd_solve(cfg, std::cout, std::cerr);
        if (*regret) return cli::cmd_regret(cfg, std::cout);
        if (*instance) return cli::cmd_instance(cfg, std::cout, components, instance_n);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << '\n';
        return cli::usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::usage;
    }
    return cli::usage;
}
