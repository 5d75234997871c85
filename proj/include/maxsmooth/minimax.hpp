#pragma once

// Minimizing max_i g_i(y) over R^n by smoothing: the composite
//   F(y) = (eps / 2 delta) * f((2 delta / eps) * g(y))
// is (L + 2 delta M^2 / eps)-smooth and within eps/2 of max_i g_i, so an
// accelerated gradient method applies. A subgradient method on the raw max is
// provided as the baseline.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "maxsmooth/core.hpp"
#include "maxsmooth/smoothings.hpp"

namespace maxsmooth {

/// g(y) = <a, y> + b
struct AffineComponent {
    std::vector<double> a;
    double b = 0.0;
};

/// g(y) = (q/2) ||y - center||^2 + b
struct QuadraticComponent {
    double q = 0.0;
    std::vector<double> center;
    double b = 0.0;
};

/// Arbitrary smooth component: returns g(y) and writes its gradient into the second argument.
struct CustomComponent {
    std::function<double(std::span<const double>, std::span<double>)> eval;
};

using Component = std::variant<AffineComponent, QuadraticComponent, CustomComponent>;

inline double evaluate_component(const Component& c, std::span<const double> y, std::span<double> grad) {
    return std::visit(
        [&](const auto& comp) -> double {
            using T = std::decay_t<decltype(comp)>;
            if constexpr (std::is_same_v<T, AffineComponent>) {
                std::copy(comp.a.begin(), comp.a.end(), grad.begin());
                return detail::dot(comp.a, y) + comp.b;
            } else if constexpr (std::is_same_v<T, QuadraticComponent>) {
                double sq = 0.0;
                for (std::size_t k = 0; k < y.size(); ++k) {
                    const double r = y[k] - comp.center[k];
                    grad[k] = comp.q * r;
                    sq += r * r;
                }
                return 0.5 * comp.q * sq + comp.b;
            } else {
                return comp.eval(y, grad);
            }
        },
        c);
}

struct MaxOfSmoothProblem {
    std::size_t n = 0;
    std::vector<Component> components;
    double L = 0.0; // max smoothness constant of the components
    double M = 0.0; // max Lipschitz constant of the components
    std::optional<double> optimal_value;
    std::optional<std::vector<double>> optimal_point;
    std::optional<std::vector<double>> start;

    std::size_t size() const { return components.size(); }

    /// Structural checks plus a finite-difference check of every component gradient
    /// at a few random probe points.
    void validate(std::uint64_t seed = 7, std::size_t probes = 3) const {
        if (n < 1) throw DimensionError("MaxOfSmoothProblem: n must be >= 1");
        if (components.empty()) throw DimensionError("MaxOfSmoothProblem: no components");
        if (!(L >= 0.0) || !std::isfinite(L)) throw DomainError("MaxOfSmoothProblem: L must be >= 0");
        if (!(M > 0.0) || !std::isfinite(M)) throw DomainError("MaxOfSmoothProblem: M must be > 0");
        for (const auto& c : components) {
            if (const auto* a = std::get_if<AffineComponent>(&c); a && a->a.size() != n) {
                throw DimensionError("affine component: a has wrong length");
            }
            if (const auto* q = std::get_if<QuadraticComponent>(&c); q && q->center.size() != n) {
                throw DimensionError("quadratic component: center has wrong length");
            }
            if (const auto* f = std::get_if<CustomComponent>(&c); f && !f->eval) {
                throw DomainError("custom component: empty callable");
            }
        }
        if (optimal_point && optimal_point->size() != n) throw DimensionError("optimal_point has wrong length");
        if (start && start->size() != n) throw DimensionError("y0 has wrong length");

        std::mt19937_64 rng(seed);
        std::normal_distribution<double> normal;
        std::vector<double> y(n), grad(n), scratch(n);
        for (std::size_t p = 0; p < probes; ++p) {
            for (double& v : y) v = normal(rng);
            for (std::size_t i = 0; i < components.size(); ++i) {
                evaluate_component(components[i], y, grad);
                for (std::size_t k = 0; k < n; ++k) {
                    const double h = 1e-6 * (std::abs(y[k]) + 1.0);
                    const double keep = y[k];
                    y[k] = keep + h;
                    const double up = evaluate_component(components[i], y, scratch);
                    y[k] = keep - h;
                    const double down = evaluate_component(components[i], y, scratch);
                    y[k] = keep;
                    const double fd = (up - down) / (2.0 * h);
                    if (std::abs(fd - grad[k]) > 1e-4 * (1.0 + std::abs(grad[k]))) {
                        throw DomainError("component " + std::to_string(i) + ": gradient fails finite-difference check");
                    }
                }
            }
        }
    }
};

/// Values of all components with their Jacobian (row i is grad g_i).
struct ComponentOracle {
    std::vector<double> values;
    std::vector<double> jacobian; // row-major, size() x n

    std::span<const double> row(std::size_t i, std::size_t n) const { return {jacobian.data() + i * n, n}; }
};

inline ComponentOracle evaluate_components(const MaxOfSmoothProblem& p, std::span<const double> y) {
    if (y.size() != p.n) throw DimensionError("evaluate_components: y has wrong length");
    ComponentOracle out;
    out.values.resize(p.size());
    out.jacobian.resize(p.size() * p.n);
    for (std::size_t i = 0; i < p.size(); ++i) {
        out.values[i] = evaluate_component(p.components[i], y, {out.jacobian.data() + i * p.n, p.n});
    }
    return out;
}

inline double max_objective(const MaxOfSmoothProblem& p, std::span<const double> y) {
    return sigma_max(evaluate_components(p, y).values);
}

/// Smoothing parameters used by the composite. delta is gap_bound(kind); the smoothing
/// is shifted by the center of its gap interval so the error band is symmetric.
struct CompositeScale {
    double delta = 0.0;
    double center = 0.0;
    double outer = 1.0; // eps / (2 delta), or 1 when the smoothing is exact (delta = 0)
    double inner = 1.0; // 2 delta / eps

    static CompositeScale make(const SmoothingKind& kind, double eps) {
        if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("composite: eps must be positive");
        CompositeScale s;
        s.delta = gap_bound(kind);
        s.center = gap_interval(kind).center();
        if (s.delta > 0.0) {
            s.inner = 2.0 * s.delta / eps;
            s.outer = eps / (2.0 * s.delta);
        }
        return s;
    }
};

struct CompositeEvaluation {
    double value = 0.0;             // smoothed composite F(y)
    std::vector<double> gradient;   // J_g(y)^T grad f(...)
    double objective = 0.0;         // max_i g_i(y)
    std::vector<double> weights;    // grad f at the scaled component values
};

namespace detail {

inline CompositeEvaluation composite_from_oracle(const MaxOfSmoothProblem& p, const ComponentOracle& oracle,
                                                 const SmoothingKind& kind, const CompositeScale& s) {
    std::vector<double> z(oracle.values);
    for (double& v : z) v *= s.inner;
    const auto inner = evaluate_raw(kind, z);
    CompositeEvaluation out;
    out.value = s.outer * (inner.value - s.center);
    out.objective = sigma_max(oracle.values);
    out.gradient.assign(p.n, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double w = inner.gradient[i];
        if (w == 0.0) continue;
        const auto row = oracle.row(i, p.n);
        for (std::size_t k = 0; k < p.n; ++k) out.gradient[k] += w * row[k];
    }
    out.weights = inner.gradient;
    return out;
}

} // namespace detail

/// Value and gradient of the smoothed composite at y.
inline CompositeEvaluation composite_value_grad(const MaxOfSmoothProblem& p, std::span<const double> y, double eps,
                                                const SmoothingKind& kind) {
    if (kind.dim() != p.size()) throw DimensionError("composite: kind dimension must equal component count");
    const auto scale = CompositeScale::make(kind, eps);
    return detail::composite_from_oracle(p, evaluate_components(p, y), kind, scale);
}

/// Smoothness constant L + 2 delta M^2 / eps of the composite in the Euclidean norm.
inline double composite_smoothness(const MaxOfSmoothProblem& p, double eps, const SmoothingKind& kind) {
    const auto s = CompositeScale::make(kind, eps);
    return p.L + 2.0 * s.delta * p.M * p.M / eps;
}

/// A priori oracle budget sqrt(L_F R^2 / (eps/2)), rounded up, at least 1.
inline std::size_t smoothed_budget(double smoothness, double radius, double eps) {
    const double raw = std::sqrt(smoothness * radius * radius / (0.5 * eps));
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw)));
}

enum class SolverStatus { Converged, BudgetExhausted, NonFinite };

inline std::string to_string(SolverStatus s) {
    switch (s) {
    case SolverStatus::Converged: return "converged";
    case SolverStatus::BudgetExhausted: return "budget_exhausted";
    case SolverStatus::NonFinite: return "nonfinite";
    }
    return "unknown";
}

struct SolverRecord {
    std::size_t iteration = 0;
    double objective = 0.0;      // max_i g_i at the iterate
    double best_objective = 0.0; // best so far
    double smoothed = std::numeric_limits<double>::quiet_NaN();
    double gradient_norm = 0.0;
    std::size_t calls = 0;
};

struct SolverTrace {
    std::string method;
    std::vector<SolverRecord> records;
    std::vector<double> final_point; // best iterate
    double best_objective = std::numeric_limits<double>::infinity();
    std::size_t oracle_calls = 0;
    SolverStatus status = SolverStatus::BudgetExhausted;
    std::optional<double> target;

    // smoothed-method metadata
    double delta = 0.0;
    double smoothness = 0.0;
    double radius = 0.0;
    std::string radius_source; // "reference" (distance to optimal_point) or "assumed"
    std::size_t budget = 0;    // a priori oracle bound
    std::size_t iteration_cap = 0;
};

struct SolveOptions {
    double safety_factor = 4.0;
    double assumed_radius = 1.0; // used when the problem carries no optimal_point
    std::size_t record_stride = 1;
    std::optional<std::size_t> max_iterations; // overrides the computed cap
};

namespace detail {

inline std::pair<double, std::string> start_radius(const MaxOfSmoothProblem& p, std::span<const double> y0,
                                                   double assumed) {
    if (p.optimal_point) return {norm_two(subtract(y0, *p.optimal_point)), "reference"};
    return {assumed, "assumed"};
}

inline bool finite_all(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

} // namespace detail

/// Accelerated gradient (constant step 1/L_F, t_{k+1} = (1 + sqrt(1 + 4 t_k^2)) / 2) on the
/// composite. Stops when the best true objective is within eps of the known optimum, or
/// after safety_factor times the a priori budget.
inline SolverTrace solve_smoothed(const MaxOfSmoothProblem& p, double eps, const SmoothingKind& kind,
                                  std::span<const double> y0, const SolveOptions& opts = {}) {
    if (!(eps > 0.0)) throw DomainError("solve_smoothed: eps must be positive");
    if (kind.dim() != p.size()) throw DimensionError("solve_smoothed: kind dimension must equal component count");
    if (y0.size() != p.n) throw DimensionError("solve_smoothed: y0 has wrong length");
    const auto scale = CompositeScale::make(kind, eps);

    SolverTrace trace;
    trace.method = "smoothed:" + kind.name();
    trace.delta = scale.delta;
    trace.smoothness = composite_smoothness(p, eps, kind);
    std::tie(trace.radius, trace.radius_source) = detail::start_radius(p, y0, opts.assumed_radius);
    trace.budget = smoothed_budget(trace.smoothness, trace.radius, eps);
    trace.iteration_cap = opts.max_iterations.value_or(
        static_cast<std::size_t>(std::ceil(opts.safety_factor * static_cast<double>(trace.budget))));
    if (p.optimal_value) trace.target = *p.optimal_value + eps;

    const double step = trace.smoothness > 0.0 ? 1.0 / trace.smoothness : 1.0;
    std::vector<double> x(y0.begin(), y0.end());
    std::vector<double> z = x;
    std::vector<double> x_next(p.n);
    double t = 1.0;

    const auto monitor = [&](std::size_t iter, const CompositeEvaluation& at_x, double grad_norm) {
        if (at_x.objective < trace.best_objective) {
            trace.best_objective = at_x.objective;
            trace.final_point = x;
        }
        if (iter % opts.record_stride == 0 || iter == trace.iteration_cap) {
            trace.records.push_back(
                {iter, at_x.objective, trace.best_objective, at_x.value, grad_norm, trace.oracle_calls});
        }
    };

    monitor(0, detail::composite_from_oracle(p, evaluate_components(p, x), kind, scale), 0.0);
    if (trace.target && trace.best_objective <= *trace.target) {
        trace.status = SolverStatus::Converged;
        return trace;
    }

    for (std::size_t k = 1; k <= trace.iteration_cap; ++k) {
        const auto at_z = detail::composite_from_oracle(p, evaluate_components(p, z), kind, scale);
        ++trace.oracle_calls;
        if (!std::isfinite(at_z.value) || !detail::finite_all(at_z.gradient)) {
            trace.status = SolverStatus::NonFinite;
            trace.records.push_back({k, at_z.objective, trace.best_objective, at_z.value,
                                     std::numeric_limits<double>::quiet_NaN(), trace.oracle_calls});
            return trace;
        }
        for (std::size_t i = 0; i < p.n; ++i) x_next[i] = z[i] - step * at_z.gradient[i];
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        const double momentum = (t - 1.0) / t_next;
        for (std::size_t i = 0; i < p.n; ++i) z[i] = x_next[i] + momentum * (x_next[i] - x[i]);
        x.swap(x_next);
        t = t_next;

        const auto at_x = detail::composite_from_oracle(p, evaluate_components(p, x), kind, scale);
        if (!std::isfinite(at_x.objective)) {
            trace.status = SolverStatus::NonFinite;
            return trace;
        }
        monitor(k, at_x, detail::norm_two(at_z.gradient));
        if (trace.target && trace.best_objective <= *trace.target) {
            trace.status = SolverStatus::Converged;
            if (trace.records.empty() || trace.records.back().iteration != k) {
                trace.records.push_back({k, at_x.objective, trace.best_objective, at_x.value,
                                         detail::norm_two(at_z.gradient), trace.oracle_calls});
            }
            return trace;
        }
    }
    trace.status = SolverStatus::BudgetExhausted;
    return trace;
}

struct SubgradientOptions {
    std::optional<double> step_scale;  // c in c / sqrt(t); defaults to R / M
    std::optional<double> target;      // stop once best objective <= target
    double assumed_radius = 1.0;
    std::size_t record_stride = 1;
};

/// Subgradient method with step c / sqrt(t) on max_i g_i, using grad g_{i*} for the
/// smallest maximizing index i*.
inline SolverTrace solve_subgradient(const MaxOfSmoothProblem& p, std::size_t iters, std::span<const double> y0,
                                     const SubgradientOptions& opts = {}) {
    if (iters < 1) throw DomainError("solve_subgradient: iters must be >= 1");
    if (y0.size() != p.n) throw DimensionError("solve_subgradient: y0 has wrong length");
    SolverTrace trace;
    trace.method = "subgradient";
    std::tie(trace.radius, trace.radius_source) = detail::start_radius(p, y0, opts.assumed_radius);
    const double c = opts.step_scale.value_or(trace.radius / p.M);
    trace.iteration_cap = iters;
    trace.target = opts.target;

    std::vector<double> y(y0.begin(), y0.end());
    for (std::size_t t = 1; t <= iters; ++t) {
        const auto oracle = evaluate_components(p, y);
        ++trace.oracle_calls;
        const auto top = std::max_element(oracle.values.begin(), oracle.values.end());
        const double objective = *top;
        if (!std::isfinite(objective)) {
            trace.status = SolverStatus::NonFinite;
            return trace;
        }
        const auto row = oracle.row(static_cast<std::size_t>(top - oracle.values.begin()), p.n);
        if (objective < trace.best_objective) {
            trace.best_objective = objective;
            trace.final_point = y;
        }
        const double gnorm = detail::norm_two(row);
        const bool reached = trace.target && trace.best_objective <= *trace.target;
        if (t % opts.record_stride == 0 || t == iters || reached) {
            trace.records.push_back({t, objective, trace.best_objective, std::numeric_limits<double>::quiet_NaN(),
                                     gnorm, trace.oracle_calls});
        }
        if (reached) {
            trace.status = SolverStatus::Converged;
            return trace;
        }
        const double step = c / std::sqrt(static_cast<double>(t));
        for (std::size_t k = 0; k < p.n; ++k) y[k] -= step * row[k];
    }
    trace.status = SolverStatus::BudgetExhausted;
    return trace;
}

} // namespace maxsmooth
