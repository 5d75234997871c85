#pragma once

// Subcommand implementations behind the maxsmooth executable. Each writes its
// primary output to `out` and returns the process exit code:
//   0 success / all certificates pass, 1 certificate or bound failure, 2 usage error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "maxsmooth/bounds.hpp"
#include "maxsmooth/certify.hpp"
#include "maxsmooth/io.hpp"
#include "maxsmooth/minimax.hpp"
#include "maxsmooth/minimax_reference.hpp"
#include "maxsmooth/regret.hpp"
#include "maxsmooth/smoothings.hpp"

namespace maxsmooth::cli {

enum ExitCode : int { ok = 0, failure = 1, usage = 2 };

enum class Format { csv, json };

struct RunConfig {
    std::vector<std::int64_t> dims{2, 3};
    std::int64_t dim = 4;
    std::uint64_t seed = default_seed;
    std::optional<double> tol;
    std::string kind = "lse";
    double eps = 1e-3;
    std::int64_t horizon = 10000;
    std::int64_t seeds = 20;
    std::int64_t count = 10000;
    std::string regularizer = "entropy";
    std::string method = "auto"; // gamma: auto | exhaustive | pruned
    std::string problem;
    Format format = Format::csv;
    std::string out; // trace destination; empty means none (solve: stdout)
};

namespace detail {

inline std::size_t checked_dim(std::int64_t d, std::int64_t min = 1) {
    if (d < min) throw DomainError("dimension must be >= " + std::to_string(min) + ", got " + std::to_string(d));
    return static_cast<std::size_t>(d);
}

inline std::string join_chain(const std::vector<std::size_t>& chain) {
    std::string s;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(chain[i]);
    }
    return s;
}

} // namespace detail

/// d, gamma(d), optimal chain, sandwich bounds, (1 - 1/d)^2 and 0.5 ln d per requested dimension.
inline int cmd_gamma(const RunConfig& cfg, std::ostream& out) {
    std::vector<std::size_t> dims;
    for (auto d : cfg.dims) dims.push_back(detail::checked_dim(d));
    if (dims.empty()) throw DomainError("gamma: no dimensions given");
    const std::size_t dmax = *std::max_element(dims.begin(), dims.end());

    GammaMethod method = dmax > 20000 ? GammaMethod::Pruned : GammaMethod::Exhaustive;
    if (cfg.method == "exhaustive") method = GammaMethod::Exhaustive;
    else if (cfg.method == "pruned") method = GammaMethod::Pruned;
    else if (cfg.method != "auto") throw DomainError("gamma: unknown method '" + cfg.method + "'");
    const GammaTable table = gamma_table(dmax, method);

    json rows = json::array();
    if (cfg.format == Format::csv) out << "d,gamma,partition,sandwich_lower,sandwich_upper,two_term_lower,half_ln_d\n";
    for (std::size_t d : dims) {
        const auto cert = table.certificate(d);
        const auto sw = asymptotic_sandwich(d);
        const double half_ln = 0.5 * std::log(static_cast<double>(d));
        if (cfg.format == Format::csv) {
            out << d << ',' << format_double(cert.value) << ',' << detail::join_chain(cert.indices) << ','
                << format_double(sw.lower) << ',' << format_double(sw.upper) << ','
                << format_double(two_term_lower(d)) << ',' << format_double(half_ln) << '\n';
        } else {
            rows.push_back({{"d", d},
                            {"gamma", cert.value},
                            {"partition", cert.indices},
                            {"sandwich_lower", sw.lower},
                            {"sandwich_upper", sw.upper},
                            {"two_term_lower", two_term_lower(d)},
                            {"half_ln_d", half_ln}});
        }
    }
    if (cfg.format == Format::json) out << rows.dump(2) << '\n';
    return ok;
}

inline SamplerConfig sampler_from(const RunConfig& cfg) {
    SamplerConfig s;
    s.seed = cfg.seed;
    if (cfg.count < 1) throw DomainError("count must be >= 1");
    s.count = static_cast<std::size_t>(cfg.count);
    return s;
}

/// Full certificate suite for one smoothing; --tol overrides the smoothness tolerance.
inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const std::size_t d = detail::checked_dim(cfg.dim);
    const auto kind = SmoothingKind::parse(cfg.kind, d);
    const auto sampler = sampler_from(cfg);
    auto reports = run_certificate_suite(kind, sampler);
    if (cfg.tol) {
        reports.front() = check_smoothness(kind, sampler, *cfg.tol);
        if (!kind.certified()) reports.front().notes.push_back("c below the threshold constant c_d: not certified 1-smooth");
    }
    const bool passed = all_passed(reports);
    if (cfg.format == Format::json) {
        json bundle;
        bundle["kind"] = kind.name();
        bundle["d"] = d;
        bundle["seed"] = cfg.seed;
        bundle["passed"] = passed;
        bundle["reports"] = json::array();
        for (const auto& r : reports) bundle["reports"].push_back(to_json(r));
        out << bundle.dump(2) << '\n';
    } else {
        out << "name,samples,worst_violation,tolerance,passed\n";
        for (const auto& r : reports) {
            out << r.name << ',' << r.samples << ',' << format_double(r.worst_violation) << ','
                << format_double(r.tolerance) << ',' << (r.passed ? "true" : "false") << '\n';
        }
    }
    return passed ? ok : failure;
}

/// Theoretical gap_bound next to the measured gap.
inline int cmd_gap(const RunConfig& cfg, std::ostream& out) {
    const std::size_t d = detail::checked_dim(cfg.dim);
    const auto kind = SmoothingKind::parse(cfg.kind, d);
    const auto report = empirical_gap(kind, 1e4, sampler_from(cfg));
    const double bound = gap_bound(kind);
    if (cfg.format == Format::json) {
        json j{{"kind", kind.name()}, {"d", d}, {"gap_bound", bound}, {"empirical_gap", *report.measured},
               {"passed", report.passed}};
        out << j.dump(2) << '\n';
    } else {
        out << "kind,d,gap_bound,empirical_gap\n";
        out << kind.name() << ',' << d << ',' << format_double(bound) << ',' << format_double(*report.measured)
            << '\n';
    }
    return report.passed ? ok : failure;
}

/// Smoothed accelerated solve of a problem file. The trace goes to --out (stdout when
/// unset); a one-line summary goes to `log`.
inline int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
    if (cfg.problem.empty()) throw DomainError("solve: --problem is required");
    const auto problem = load_problem(cfg.problem);
    const auto kind = SmoothingKind::parse(cfg.kind, problem.size());
    const std::vector<double> y0 = problem.start.value_or(std::vector<double>(problem.n, 0.0));
    const auto trace = solve_smoothed(problem, cfg.eps, kind, y0);

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file) throw DomainError("solve: cannot open output '" + cfg.out + "'");
        sink = &file;
    }
    if (cfg.format == Format::json) {
        json j;
        j["method"] = trace.method;
        j["status"] = to_string(trace.status);
        j["best_objective"] = trace.best_objective;
        j["oracle_calls"] = trace.oracle_calls;
        j["budget"] = trace.budget;
        j["iteration_cap"] = trace.iteration_cap;
        j["smoothness"] = trace.smoothness;
        j["delta"] = trace.delta;
        j["radius"] = trace.radius;
        j["radius_source"] = trace.radius_source;
        j["final_point"] = trace.final_point;
        if (trace.target) j["target"] = *trace.target;
        json recs = json::array();
        for (const auto& r : trace.records) {
            recs.push_back({r.iteration, r.objective, r.best_objective, r.smoothed, r.gradient_norm, r.calls});
        }
        j["columns"] = {"iteration", "objective", "best_objective", "smoothed_objective", "gradient_norm", "calls"};
        j["records"] = recs;
        *sink << j.dump(2) << '\n';
    } else {
        write_solver_csv(*sink, trace);
    }
    log << "status=" << to_string(trace.status) << " best_objective=" << format_double(trace.best_objective)
        << " oracle_calls=" << trace.oracle_calls << " budget=" << trace.budget << " cap=" << trace.iteration_cap
        << " radius=" << format_double(trace.radius) << " (" << trace.radius_source << ")\n";
    if (trace.status == SolverStatus::NonFinite) return failure;
    if (trace.target && trace.status != SolverStatus::Converged) return failure;
    return ok;
}

/// Coin-flip experts game over `seeds` seeds (seed, seed + 1, ...). Summary rows go to
/// `out`; per-round traces for every seed go to --out when set.
inline int cmd_regret(const RunConfig& cfg, std::ostream& out) {
    const std::size_t d = detail::checked_dim(cfg.dim, 2);
    if (cfg.horizon < 1) throw DomainError("regret: horizon must be >= 1");
    if (cfg.seeds < 1) throw DomainError("regret: seeds must be >= 1");
    const auto horizon = static_cast<std::size_t>(cfg.horizon);
    const auto reg = Regularizer::parse(cfg.regularizer, d);
    const double eta = tuned_eta(reg, horizon);
    const double bound = regret_bound(reg, horizon);

    std::ofstream trace_file;
    if (!cfg.out.empty()) {
        trace_file.open(cfg.out);
        if (!trace_file) throw DomainError("regret: cannot open output '" + cfg.out + "'");
        trace_file << "seed," << regret_csv_header << '\n';
    }

    bool within = true;
    json rows = json::array();
    if (cfg.format == Format::csv) out << "seed,d,horizon,regularizer,eta,regret,bound,within_bound\n";
    for (std::int64_t s = 0; s < cfg.seeds; ++s) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(s);
        const auto trace = run_coinflip_game(d, horizon, seed, reg, eta);
        const double regret = trace.final_regret();
        within = within && regret <= bound;
        if (trace_file.is_open()) {
            for (const auto& r : trace.rounds) {
                trace_file << seed << ',' << r.round << ',' << format_double(r.learner_loss) << ','
                           << format_double(r.best_expert_loss) << ',' << format_double(r.regret) << '\n';
            }
        }
        if (cfg.format == Format::csv) {
            out << seed << ',' << d << ',' << horizon << ',' << reg.name() << ',' << format_double(eta) << ','
                << format_double(regret) << ',' << format_double(bound) << ',' << (regret <= bound ? "true" : "false")
                << '\n';
        } else {
            rows.push_back({{"seed", seed}, {"d", d}, {"horizon", horizon}, {"regularizer", reg.name()},
                            {"eta", eta}, {"regret", regret}, {"bound", bound}, {"within_bound", regret <= bound}});
        }
    }
    if (cfg.format == Format::json) out << rows.dump(2) << '\n';
    return within ? ok : failure;
}

/// Writes a random affine instance (components x n, seeded) with its exact reference optimum.
inline int cmd_instance(const RunConfig& cfg, std::ostream& out, std::int64_t components, std::int64_t n) {
    if (n < 1 || components < n + 1) throw DomainError("instance: need components >= n + 1 >= 2");
    const auto p = make_random_affine_problem(static_cast<std::size_t>(components), static_cast<std::size_t>(n),
                                              cfg.seed);
    out << to_json(p).dump(2) << '\n';
    return ok;
}

} // namespace maxsmooth::cli
