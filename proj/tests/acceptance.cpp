// Acceptance run: one PASS/FAIL line per criterion, with the measured quantities and
// wall time. Exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "maxsmooth/io.hpp"
#include "maxsmooth/maxsmooth.hpp"
#include "maxsmooth/minimax_reference.hpp"

using namespace maxsmooth;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int precision = 6) {
    std::ostringstream os;
    os.precision(precision);
    os << v;
    return os.str();
}

Outcome criterion_gamma_exact() {
    Outcome o;
    const auto start = Clock::now();
    double worst = 0.0;
    const auto table = gamma_table(20);
    for (std::size_t d = 2; d <= 20; ++d) worst = std::max(worst, std::abs(table.value[d] - gamma_bruteforce(d)));
    const bool exact_small = table.value[2] == 0.25 && table.value[3] == 4.0 / 9.0 &&
                             gamma_bruteforce_exact(2) == Rational(1, 4) && gamma_bruteforce_exact(3) == Rational(4, 9);
    const double t = seconds_since(start);
    o.passed = worst <= 1e-12 && exact_small && t < 1.0;
    o.detail = "max |DP - brute force| over d=2..20 = " + fmt(worst) + ", gamma(2)=1/4 and gamma(3)=4/9 " +
               (exact_small ? "exact" : "NOT exact") + ", " + fmt(t, 3) + " s (limit 1 s)";
    return o;
}

Outcome criterion_beta() {
    Outcome o;
    const auto start = Clock::now();
    const auto c = beta_root(1e-10);
    const double t = seconds_since(start);
    const double db = std::abs(c.beta - 0.28467);
    const double ds = std::abs(c.slope - 0.40726);
    o.passed = db <= 5e-6 && ds <= 5e-6 && t < 1e-3;
    o.detail = "beta=" + fmt(c.beta, 10) + " (|diff|=" + fmt(db, 3) + "), slope=" + fmt(c.slope, 10) +
               " (|diff|=" + fmt(ds, 3) + "), " + fmt(t * 1e6, 3) + " us (limit 1 ms)";
    return o;
}

Outcome criterion_sandwich() {
    Outcome o;
    const auto start = Clock::now();
    const auto table = gamma_table(1'000'000, GammaMethod::Pruned);
    const double t = seconds_since(start);
    std::ostringstream os;
    for (std::size_t d : {2ul, 10ul, 100ul, 1000ul, 10000ul, 100000ul, 1000000ul}) {
        const auto s = asymptotic_sandwich(d);
        const double g = table.value[d];
        const bool ok = s.lower <= g + 1e-9 && g <= s.upper + 1e-9;
        o.passed = o.passed && ok;
        os << (ok ? "" : "VIOLATED ") << "d=" << d << ":" << fmt(s.lower, 5) << "<=" << fmt(g, 8) << "<="
           << fmt(s.upper, 8) << "; ";
    }
    o.passed = o.passed && t < 600.0;
    os << "pruned exact recurrence to 1e6 in " << fmt(t, 3) << " s (limit 600 s)";
    o.detail = os.str();
    return o;
}

Outcome criterion_gap_order() {
    Outcome o;
    SamplerConfig cfg;
    std::ostringstream os;
    for (std::size_t d : {2ul, 3ul}) {
        const auto kind = SmoothingKind::quadratic_paper(d);
        const double bound = gap_bound(kind);
        const double expected = d == 2 ? 0.25 : 4.0 / 9.0;
        const double half_ln = 0.5 * std::log(static_cast<double>(d));
        const double measured = *empirical_gap(kind, 1e4, cfg).measured;
        const bool ok = std::abs(bound - expected) <= 1e-15 && bound < half_ln && std::abs(measured - bound) <= 1e-9;
        o.passed = o.passed && ok;
        os << "d=" << d << ": gap_bound=" << fmt(bound, 10) << " < 0.5 ln d=" << fmt(half_ln, 6)
           << ", empirical=" << fmt(measured, 12) << "; ";
    }
    o.detail = os.str();
    return o;
}

Outcome criterion_certificates() {
    Outcome o;
    SamplerConfig cfg;
    cfg.count = 10000;
    const auto start = Clock::now();
    std::size_t reports = 0;
    std::string failures;
    bool deterministic = true;
    for (std::size_t d = 2; d <= 10; ++d) {
        for (const auto& kind : {SmoothingKind::lse(d), SmoothingKind::centered_lse(d), SmoothingKind::quadratic_paper(d)}) {
            for (const auto& r : run_certificate_suite(kind, cfg)) {
                ++reports;
                if (!r.passed) failures += kind.name() + "/d=" + std::to_string(d) + "/" + r.name + " ";
            }
        }
    }
    const double t = seconds_since(start);
    // Seed determinism on one configuration.
    const auto kind = SmoothingKind::quadratic_paper(7);
    const auto a = run_certificate_suite(kind, cfg);
    const auto b = run_certificate_suite(kind, cfg);
    for (std::size_t i = 0; i < a.size(); ++i) {
        deterministic = deterministic && a[i].worst_violation == b[i].worst_violation && a[i].witness == b[i].witness;
    }
    o.passed = failures.empty() && deterministic && t < 30.0;
    o.detail = std::to_string(reports) + " reports (lse, clse, quad; d=2..10; 1e4 samples), " +
               (failures.empty() ? std::string("all passed") : "failed: " + failures) + ", " +
               (deterministic ? "seed-deterministic" : "NOT deterministic") + ", " + fmt(t, 3) + " s (limit 30 s)";
    return o;
}

Outcome criterion_telescoping() {
    Outcome o;
    const double alpha = 1e4;
    const double slack = 10.0 / alpha;
    SamplerConfig cfg;
    std::ostringstream os;
    for (std::size_t d : {4ul, 8ul, 16ul}) {
        const auto kind = SmoothingKind::lse(d);
        const auto cert = gamma(d);
        const double sum = telescoping_sum(kind, cert.indices, alpha);
        const double gap = *empirical_gap(kind, alpha, cfg).measured;
        const bool ok = sum <= gap + slack && sum >= cert.value - slack;
        o.passed = o.passed && ok;
        os << "d=" << d << ": gamma=" << fmt(cert.value, 8) << " <= sum=" << fmt(sum, 8) << " <= gap=" << fmt(gap, 8)
           << "; ";
    }
    o.detail = os.str() + "slack 10/alpha=" + fmt(slack);
    return o;
}

Outcome criterion_minimax() {
    Outcome o;
    const auto start = Clock::now();
    const auto p = load_problem(std::string(MAXSMOOTH_DATA_DIR) + "/affine20.json");
    const auto reference = exact_affine_minimax(p);
    const double eps = 1e-3;
    const auto kind = SmoothingKind::centered_lse(p.size());
    const auto smoothed = solve_smoothed(p, eps, kind, *p.start);
    const bool reached = smoothed.status == SolverStatus::Converged &&
                         smoothed.best_objective - reference.value <= eps;
    const bool in_budget = smoothed.oracle_calls <= 4 * smoothed.budget;

    SubgradientOptions sopts;
    sopts.target = reference.value + eps;
    sopts.record_stride = 100000;
    const std::size_t cap = 2'000'000;
    const auto sub = solve_subgradient(p, cap, *p.start, sopts);
    const bool sub_reached = sub.status == SolverStatus::Converged;
    const bool fewer = smoothed.oracle_calls < sub.oracle_calls;
    const double t = seconds_since(start);

    o.passed = reached && in_budget && fewer && t < 10.0 && std::abs(reference.value - *p.optimal_value) <= 1e-12;
    o.detail = "reference optimum " + fmt(reference.value, 12) + "; smoothed clse: " + to_string(smoothed.status) +
               " in " + std::to_string(smoothed.oracle_calls) + " calls (budget " + std::to_string(smoothed.budget) +
               ", 4x = " + std::to_string(4 * smoothed.budget) + "); subgradient: " +
               (sub_reached ? "reached in " + std::to_string(sub.oracle_calls) + " calls"
                            : "not reached within " + std::to_string(cap) + " calls (best gap " +
                                  fmt(sub.best_objective - reference.value, 4) + ")") +
               "; " + fmt(t, 3) + " s (limit 10 s)";
    return o;
}

Outcome criterion_regret() {
    Outcome o;
    const auto start = Clock::now();
    const std::size_t horizon = 10000;
    std::ostringstream os;
    for (std::size_t d : {2ul, 16ul, 256ul}) {
        for (const auto& reg : {Regularizer::entropy(d), Regularizer::scaled_quadratic(d)}) {
            const double eta = tuned_eta(reg, horizon);
            const double bound = regret_bound(reg, horizon);
            double worst = -std::numeric_limits<double>::infinity();
            for (std::uint64_t seed = default_seed; seed < default_seed + 20; ++seed) {
                worst = std::max(worst, run_coinflip_game(d, horizon, seed, reg, eta).final_regret());
            }
            o.passed = o.passed && worst <= bound;
            os << reg.name() << "/d=" << d << ": max " << fmt(worst, 5) << " <= " << fmt(bound, 5) << "; ";
        }
    }
    // Duality cross-check on played weights.
    double duality = 0.0;
    for (std::size_t d : {2ul, 16ul, 256ul}) {
        const auto reg = Regularizer::entropy(d);
        const double eta = tuned_eta(reg, 2000);
        const auto trace = run_coinflip_game(d, 2000, default_seed, reg, eta, true);
        std::vector<double> cumulative(d, 0.0), scaled(d);
        for (std::size_t r = 0; r < trace.weights.size(); ++r) {
            for (std::size_t i = 0; i < d; ++i) scaled[i] = -eta * cumulative[i];
            const auto g = lse_value_grad(scaled).gradient;
            for (std::size_t i = 0; i < d; ++i) duality = std::max(duality, std::abs(g[i] - trace.weights[r][i]));
            for (std::size_t i = 0; i < d; ++i) cumulative[i] += trace.losses[r][i];
        }
    }
    const double t = seconds_since(start);
    o.passed = o.passed && duality <= 1e-12 && t < 30.0;
    os << "entropy weights vs LSE gradient max diff " << fmt(duality, 3) << "; " << fmt(t, 3) << " s (limit 30 s)";
    o.detail = os.str();
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 gamma exactness", criterion_gamma_exact},
        {"2 asymptotic constant", criterion_beta},
        {"3 sandwich", criterion_sandwich},
        {"4 gap ordering", criterion_gap_order},
        {"5 certificate suite", criterion_certificates},
        {"6 telescoping witness", criterion_telescoping},
        {"7 minimax solver", criterion_minimax},
        {"8 regret", criterion_regret},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.passed) ++failed;
        std::printf("%s criterion %s: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("NOTE criterion 9: the 1/8 + o(1) regret constant and the exact minimal gap for d >= 4 are "
                "asymptotic or open; they are exercised only through the property suites above.\n");
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
