#pragma once

// Numerical certificates for smoothings of the max: sampled smoothness, gradient
// membership in the simplex, finite differences, the Q_{i,j} convexity residual,
// the expectation guarantee, gradient block structure, permutation equivariance
// and the measured gap.
//
// Each report satisfies passed == (worst_violation <= tolerance). Violations are
// normalized where noted so that a single tolerance works across scales.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "maxsmooth/bounds.hpp"
#include "maxsmooth/core.hpp"
#include "maxsmooth/smoothings.hpp"

namespace maxsmooth {

inline constexpr std::uint64_t default_seed = 20250601;

enum class SampleDistribution { Gaussian, StructuredRays, Mixed };

struct SamplerConfig {
    std::uint64_t seed = default_seed;
    std::size_t count = 10000;
    double scale = 1.0;
    SampleDistribution distribution = SampleDistribution::Mixed;

    void validate() const {
        if (count < 1) throw DomainError("SamplerConfig: count must be >= 1");
        if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("SamplerConfig: scale must be positive");
    }
};

struct CertReport {
    std::string name;
    std::size_t samples = 0;
    double worst_violation = -std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> witness; // point or point pair achieving the worst violation
    bool passed = true;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    std::optional<double> measured; // empirical quantity, e.g. the measured gap
    std::vector<std::string> notes;

    void record(double violation, std::vector<std::vector<double>> at) {
        ++samples;
        if (violation > worst_violation) {
            worst_violation = violation;
            witness = std::move(at);
        }
    }

    void finish() { passed = worst_violation <= tolerance; }
};

/// Seeded source of probe points. The same seed always yields the same sequence.
class Sampler {
public:
    Sampler(const SamplerConfig& cfg, std::size_t dim) : cfg_(cfg), dim_(dim), rng_(cfg.seed) {
        cfg.validate();
        if (dim < 1) throw DimensionError("Sampler: dimension must be >= 1");
    }

    std::vector<double> point() {
        switch (cfg_.distribution) {
        case SampleDistribution::Gaussian: return gaussian();
        case SampleDistribution::StructuredRays: return ray();
        case SampleDistribution::Mixed: return (counter_++ % 2 == 0) ? gaussian() : ray();
        }
        return gaussian();
    }

    /// Nearby pair (Rademacher or Gaussian perturbation) half the time, independent pair otherwise.
    std::pair<std::vector<double>, std::vector<double>> pair() {
        std::vector<double> x = point();
        const int mode = std::uniform_int_distribution<int>(0, 3)(rng_);
        if (mode >= 2) return {x, point()};
        const double step = cfg_.scale * std::pow(10.0, std::uniform_real_distribution<double>(-3.0, 0.0)(rng_));
        std::vector<double> y = x;
        for (double& v : y) {
            const double dir = mode == 0 ? (coin() ? 1.0 : -1.0) : normal_(rng_);
            v += step * dir;
        }
        return {std::move(x), std::move(y)};
    }

    std::vector<std::size_t> permutation() {
        std::vector<std::size_t> perm(dim_);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng_);
        return perm;
    }

private:
    bool coin() { return (rng_() >> 63) != 0; }

    std::vector<double> gaussian() {
        std::vector<double> x(dim_);
        for (double& v : x) v = cfg_.scale * normal_(rng_);
        return x;
    }

    // Permuted alpha * x^(j) plus a common offset, with alpha log-uniform over five decades.
    std::vector<double> ray() {
        const std::size_t j = std::uniform_int_distribution<std::size_t>(1, dim_)(rng_);
        const double alpha = cfg_.scale * std::pow(10.0, std::uniform_real_distribution<double>(-2.0, 3.0)(rng_));
        const double offset = cfg_.scale * normal_(rng_);
        std::vector<double> x(dim_, offset);
        for (std::size_t i = 0; i < j; ++i) x[i] += alpha / static_cast<double>(j);
        std::shuffle(x.begin(), x.end(), rng_);
        return x;
    }

    SamplerConfig cfg_;
    std::size_t dim_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::size_t counter_ = 0;
};

namespace detail {

inline CertReport make_report(std::string name, double tol, std::uint64_t seed) {
    CertReport r;
    r.name = std::move(name);
    r.tolerance = tol;
    r.seed = seed;
    return r;
}

inline std::vector<bool> support(const SmoothingKind& kind, std::span<const double> x) {
    const auto g = evaluate_raw(kind, x).gradient;
    std::vector<bool> s(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) s[i] = g[i] > 0.0;
    return s;
}

} // namespace detail

/// Sampled 1-smoothness: worst (||grad x - grad y||_1 - ||x - y||_inf) / max(1, ||x - y||_inf).
inline CertReport check_smoothness(const SmoothingKind& kind, const SamplerConfig& cfg, double tol = 1e-8) {
    auto report = detail::make_report("smoothness", tol, cfg.seed);
    Sampler sampler(cfg, kind.dim());
    for (std::size_t s = 0; s < cfg.count; ++s) {
        auto [x, y] = sampler.pair();
        const double dx = norm_inf(detail::subtract(x, y));
        if (dx == 0.0) continue;
        const auto gx = detail::evaluate_raw(kind, x).gradient;
        const auto gy = detail::evaluate_raw(kind, y).gradient;
        const double dg = norm_one(detail::subtract(gx, gy));
        report.record((dg - dx) / std::max(1.0, dx), {x, y});
    }
    if (report.samples == 0) report.worst_violation = 0.0;
    report.finish();
    return report;
}

/// Coordinatewise finite-difference check of the analytic gradient at x. The step is
/// h * (||x||_inf + 1). For quadratic kinds, coordinates whose step changes the active
/// set of the projection use a second-order one-sided stencil on a side that stays
/// within one quadratic piece.
inline CertReport check_gradient_fd(const SmoothingKind& kind, std::span<const double> x, double h = 1e-5,
                                    double tol = 1e-6) {
    if (!(h >= 1e-10)) throw DomainError("check_gradient_fd: step h below 1e-10");
    if (!(tol > 0.0)) throw DomainError("check_gradient_fd: tol must be positive");
    auto report = detail::make_report("gradient_fd", tol, 0);
    const std::size_t d = kind.dim();
    if (x.size() != d) throw DimensionError("check_gradient_fd: point dimension does not match kind");
    const double step = h * (norm_inf(x) + 1.0);
    const auto base = detail::evaluate_raw(kind, x);
    const auto base_support = kind.is_quadratic() ? detail::support(kind, x) : std::vector<bool>{};

    std::vector<double> probe(x.begin(), x.end());
    const auto f_at = [&](std::size_t i, double offset) {
        probe[i] = x[i] + offset;
        const double v = detail::evaluate_raw(kind, probe).value;
        probe[i] = x[i];
        return v;
    };
    const auto support_at = [&](std::size_t i, double offset) {
        probe[i] = x[i] + offset;
        auto s = detail::support(kind, probe);
        probe[i] = x[i];
        return s;
    };

    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double estimate = 0.0;
        bool central = true;
        if (kind.is_quadratic()) {
            const auto up = support_at(i, step);
            const auto down = support_at(i, -step);
            if (up != base_support || down != base_support) {
                central = false;
                report.notes.push_back("kink-adjacent coordinate " + std::to_string(i));
                if (up == base_support && support_at(i, 2.0 * step) == base_support) {
                    estimate = (-3.0 * base.value + 4.0 * f_at(i, step) - f_at(i, 2.0 * step)) / (2.0 * step);
                } else if (down == base_support && support_at(i, -2.0 * step) == base_support) {
                    estimate = (3.0 * base.value - 4.0 * f_at(i, -step) + f_at(i, -2.0 * step)) / (2.0 * step);
                } else {
                    report.notes.push_back("unresolved kink at coordinate " + std::to_string(i));
                    continue;
                }
            }
        }
        if (central) estimate = (f_at(i, step) - f_at(i, -step)) / (2.0 * step);
        worst = std::max(worst, std::abs(estimate - base.gradient[i]));
    }
    report.samples = 1;
    report.worst_violation = worst;
    report.witness = {std::vector<double>(x.begin(), x.end())};
    report.finish();
    return report;
}

/// Finite-difference check aggregated over sampled points.
inline CertReport check_gradient_fd_sampled(const SmoothingKind& kind, const SamplerConfig& cfg, double h = 1e-5,
                                            double tol = 1e-6) {
    auto report = detail::make_report("gradient_fd", tol, cfg.seed);
    Sampler sampler(cfg, kind.dim());
    std::size_t kinks = 0;
    for (std::size_t s = 0; s < cfg.count; ++s) {
        const auto x = sampler.point();
        const auto single = check_gradient_fd(kind, x, h, tol);
        if (!single.notes.empty()) ++kinks;
        report.record(single.worst_violation, {x});
    }
    if (kinks > 0) report.notes.push_back(std::to_string(kinks) + " kink-adjacent points checked one-sided");
    report.finish();
    return report;
}

/// Gradients are nonnegative and sum to one: worst max(-min_i g_i, |sum g - 1|).
inline CertReport check_grad_in_simplex(const SmoothingKind& kind, const SamplerConfig& cfg, double tol = 1e-12) {
    auto report = detail::make_report("grad_in_simplex", tol, cfg.seed);
    Sampler sampler(cfg, kind.dim());
    const auto violation = [](const std::vector<double>& g) {
        const double neg = -*std::min_element(g.begin(), g.end());
        const double sum = std::accumulate(g.begin(), g.end(), 0.0);
        return std::max(neg, std::abs(sum - 1.0));
    };
    const std::vector<double> origin(kind.dim(), 0.0);
    report.record(violation(detail::evaluate_raw(kind, origin).gradient), {origin});
    for (std::size_t s = 0; s < cfg.count; ++s) {
        auto x = sampler.point();
        const auto g = detail::evaluate_raw(kind, x).gradient;
        report.record(violation(g), {std::move(x)});
    }
    report.finish();
    return report;
}

/// Q_{i,j}(alpha) between the structured points alpha x^(i), alpha x^(j) (1-based indices).
/// Nonnegative for every convex function that is 1-smooth in the infinity norm.
inline double q_certificate(const SmoothingKind& kind, std::size_t i, std::size_t j, double alpha) {
    const std::size_t d = kind.dim();
    if (i < 1 || i > d || j < 1 || j > d) throw DimensionError("q_certificate: index out of range");
    const Point xi = structured_point(i, d, alpha);
    const Point xj = structured_point(j, d, alpha);
    const auto fi = detail::evaluate_raw(kind, xi);
    const auto fj = detail::evaluate_raw(kind, xj);
    const double linear = detail::dot(fj.gradient, detail::subtract(xi, xj));
    const double dg = norm_one(detail::subtract(fi.gradient, fj.gradient));
    return fi.value - fj.value - linear - 0.5 * dg * dg;
}

/// Q_{i,j}(alpha) over every index pair and each alpha; worst violation is -min Q.
inline CertReport check_q_grid(const SmoothingKind& kind, const std::vector<double>& alphas, double tol = 1e-9) {
    auto report = detail::make_report("q_certificate", tol, 0);
    const std::size_t d = kind.dim();
    for (double alpha : alphas) {
        for (std::size_t i = 1; i <= d; ++i) {
            for (std::size_t j = 1; j <= d; ++j) {
                const double q = q_certificate(kind, i, j, alpha);
                report.record(-q, {structured_point(i, d, alpha).vec(), structured_point(j, d, alpha).vec()});
            }
        }
    }
    report.finish();
    return report;
}

/// <grad f(x), x> >= sigma_max(x) - 2 delta; violation normalized by max(1, ||x||_inf).
inline CertReport check_expectation_guarantee(const SmoothingKind& kind, double delta, const SamplerConfig& cfg,
                                              double tol = 1e-9) {
    auto report = detail::make_report("expectation_guarantee", tol, cfg.seed);
    Sampler sampler(cfg, kind.dim());
    const auto violation = [&](const std::vector<double>& x) {
        const auto g = detail::evaluate_raw(kind, x).gradient;
        return (sigma_max(x) - 2.0 * delta - detail::dot(g, x)) / std::max(1.0, norm_inf(x));
    };
    const std::vector<double> origin(kind.dim(), 0.0);
    report.record(violation(origin), {origin});
    for (std::size_t s = 0; s < cfg.count; ++s) {
        auto x = sampler.point();
        const double v = violation(x);
        report.record(v, {std::move(x)});
    }
    report.finish();
    return report;
}

/// Largest |f(x) - sigma_max(x)| over the origin, the rays alpha x^(j) (alpha log-spaced
/// up to alpha_max, every j) and cfg.count random points. A lower estimate of the true
/// gap; the report passes when it does not exceed gap_bound(kind) by more than 1e-9.
inline CertReport empirical_gap(const SmoothingKind& kind, double alpha_max, const SamplerConfig& cfg) {
    if (!(alpha_max > 0.0)) throw DomainError("empirical_gap: alpha_max must be positive");
    auto report = detail::make_report("empirical_gap", 1e-9, cfg.seed);
    const std::size_t d = kind.dim();
    double best = -1.0;
    std::vector<double> witness;
    const auto probe = [&](const std::vector<double>& x) {
        const double dev = std::abs(detail::evaluate_raw(kind, x).value - sigma_max(x));
        ++report.samples;
        if (dev > best) {
            best = dev;
            witness = x;
        }
    };
    probe(std::vector<double>(d, 0.0));
    constexpr int per_decade = 8;
    const double lo = -3.0;
    const double hi = std::log10(alpha_max);
    const int steps = std::max(1, static_cast<int>(std::ceil((hi - lo) * per_decade)));
    for (int s = 0; s <= steps; ++s) {
        const double alpha = s == steps ? alpha_max : std::pow(10.0, lo + (hi - lo) * s / steps);
        for (std::size_t j = 1; j <= d; ++j) probe(structured_point(j, d, alpha).vec());
    }
    Sampler sampler(cfg, d);
    for (std::size_t s = 0; s < cfg.count; ++s) probe(sampler.point());

    const double bound = gap_bound(kind);
    report.measured = best;
    report.worst_violation = best - bound;
    report.witness = {witness};
    report.finish();
    return report;
}

/// Gradient at alpha x^(j) has the two-block form (lambda, ..., lambda, mu, ..., mu) with
/// lambda in [0, 1/j] nondecreasing in alpha. alphas are visited in increasing order.
inline CertReport check_gradient_structure(const SmoothingKind& kind, std::size_t j, std::vector<double> alphas,
                                           double tol = 1e-9) {
    const std::size_t d = kind.dim();
    if (j < 1 || j > d) throw DimensionError("check_gradient_structure: j out of range");
    auto report = detail::make_report("gradient_structure", tol, 0);
    std::sort(alphas.begin(), alphas.end());
    double previous = -std::numeric_limits<double>::infinity();
    const double cap = 1.0 / static_cast<double>(j);
    for (double alpha : alphas) {
        const Point x = structured_point(j, d, alpha);
        const auto g = detail::evaluate_raw(kind, x).gradient;
        const double lambda = std::accumulate(g.begin(), g.begin() + j, 0.0) / static_cast<double>(j);
        double violation = 0.0;
        for (std::size_t i = 0; i < j; ++i) violation = std::max(violation, std::abs(g[i] - lambda));
        if (j < d) {
            const double mu = (1.0 - static_cast<double>(j) * lambda) / static_cast<double>(d - j);
            for (std::size_t i = j; i < d; ++i) violation = std::max(violation, std::abs(g[i] - mu));
        }
        violation = std::max(violation, lambda - cap);
        violation = std::max(violation, -lambda);
        violation = std::max(violation, previous - lambda); // monotone toward 1/j
        if (j == d) violation = std::max(violation, std::abs(lambda - cap));
        previous = lambda;
        report.record(violation, {x.vec()});
        report.measured = lambda;
    }
    report.finish();
    return report;
}

/// f(Px) = f(x) and grad f(Px) = P grad f(x) for sampled permutations; violations are
/// relative to max(1, |f(x)|).
inline CertReport check_permutation_invariance(const SmoothingKind& kind, const SamplerConfig& cfg,
                                               double tol = 1e-12) {
    auto report = detail::make_report("permutation_invariance", tol, cfg.seed);
    Sampler sampler(cfg, kind.dim());
    const std::size_t d = kind.dim();
    for (std::size_t s = 0; s < cfg.count; ++s) {
        auto x = sampler.point();
        const auto perm = sampler.permutation();
        std::vector<double> px(d);
        for (std::size_t i = 0; i < d; ++i) px[i] = x[perm[i]];
        const auto fx = detail::evaluate_raw(kind, x);
        const auto fpx = detail::evaluate_raw(kind, px);
        double violation = std::abs(fx.value - fpx.value) / std::max(1.0, std::abs(fx.value));
        for (std::size_t i = 0; i < d; ++i) {
            violation = std::max(violation, std::abs(fpx.gradient[i] - fx.gradient[perm[i]]));
        }
        report.record(violation, {std::move(x), std::move(px)});
    }
    report.finish();
    return report;
}

/// sum_l (1/4) ||grad f(alpha x^(j_l)) - grad f(alpha x^(j_{l-1}))||_1^2 along a chain.
inline double telescoping_sum(const SmoothingKind& kind, std::span<const std::size_t> chain, double alpha) {
    if (chain.empty()) throw DomainError("telescoping_sum: empty chain");
    double total = 0.0;
    auto prev = detail::evaluate_raw(kind, structured_point(chain[0], kind.dim(), alpha).vec()).gradient;
    for (std::size_t l = 1; l < chain.size(); ++l) {
        auto next = detail::evaluate_raw(kind, structured_point(chain[l], kind.dim(), alpha).vec()).gradient;
        const double diff = norm_one(detail::subtract(next, prev));
        total += 0.25 * diff * diff;
        prev = std::move(next);
    }
    return total;
}

/// Along the optimal chain for gamma(d), the telescoping sum at finite alpha must sit within
/// 10/alpha of [gamma(d), measured gap]. The measured sum is stored in the report.
inline CertReport check_telescoping(const SmoothingKind& kind, double alpha, const SamplerConfig& cfg) {
    if (!(alpha > 0.0)) throw DomainError("check_telescoping: alpha must be positive");
    const double budget = 10.0 / alpha;
    auto report = detail::make_report("telescoping", budget, cfg.seed);
    const auto cert = gamma(kind.dim());
    const double sum = telescoping_sum(kind, cert.indices, alpha);
    const double gap = *empirical_gap(kind, alpha, cfg).measured;
    std::vector<double> chain(cert.indices.begin(), cert.indices.end());
    report.record(sum - gap, {chain});
    report.record(cert.value - sum, {chain});
    report.measured = sum;
    report.notes.push_back("finite-alpha budget 10/alpha stands in for the alpha -> infinity limit");
    report.finish();
    return report;
}

/// Runs every certificate for one smoothing at one dimension.
inline std::vector<CertReport> run_certificate_suite(const SmoothingKind& kind, const SamplerConfig& cfg) {
    const std::size_t d = kind.dim();
    const std::vector<double> q_alphas{0.1, 1.0, 10.0, 100.0};
    const std::vector<double> ray_alphas{0.1, 1.0, 10.0, 100.0, 1000.0};
    std::vector<CertReport> out;
    out.push_back(check_smoothness(kind, cfg));
    out.push_back(check_grad_in_simplex(kind, cfg));
    out.push_back(check_gradient_fd_sampled(kind, cfg));
    out.push_back(check_q_grid(kind, q_alphas));
    out.push_back(check_expectation_guarantee(kind, gap_bound(kind), cfg));

    CertReport structure = detail::make_report("gradient_structure", 1e-9, cfg.seed);
    for (std::size_t j = 1; j <= d; ++j) {
        const auto r = check_gradient_structure(kind, j, ray_alphas, 1e-9);
        structure.samples += r.samples;
        if (r.worst_violation > structure.worst_violation) {
            structure.worst_violation = r.worst_violation;
            structure.witness = r.witness;
        }
    }
    structure.finish();
    out.push_back(std::move(structure));

    out.push_back(check_permutation_invariance(kind, cfg));
    out.push_back(empirical_gap(kind, 1e4, cfg));
    out.push_back(check_telescoping(kind, 1e4, cfg));
    if (!kind.certified()) {
        out.front().notes.push_back("c below the threshold constant c_d: not certified 1-smooth");
    }
    return out;
}

inline bool all_passed(const std::vector<CertReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const CertReport& r) { return r.passed; });
}

} // namespace maxsmooth
