#pragma once

// Exact optimum of min_y max_i <a_i, y> + b_i by vertex enumeration of the epigraph LP
//   min t  s.t.  <a_i, y> - t <= -b_i.
// With n + 1 variables an optimal vertex makes n + 1 constraints tight; every such
// subset is solved and the feasible one with the smallest t wins. Only practical for
// small instances (C(m, n + 1) linear solves).

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "maxsmooth/minimax.hpp"

namespace maxsmooth {

struct AffineOptimum {
    double value = std::numeric_limits<double>::infinity();
    std::vector<double> point;
    std::size_t vertices_checked = 0;
};

inline AffineOptimum exact_affine_minimax(const MaxOfSmoothProblem& p, std::uint64_t max_subsets = 5'000'000) {
    const std::size_t n = p.n;
    const std::size_t m = p.size();
    if (m < n + 1) throw DomainError("exact_affine_minimax: need at least n + 1 components");
    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd b(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto* c = std::get_if<AffineComponent>(&p.components[i]);
        if (!c) throw DomainError("exact_affine_minimax: all components must be affine");
        for (std::size_t k = 0; k < n; ++k) A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = c->a[k];
        b(static_cast<Eigen::Index>(i)) = c->b;
    }

    const std::size_t r = n + 1;
    std::vector<std::size_t> pick(r);
    for (std::size_t i = 0; i < r; ++i) pick[i] = i;

    AffineOptimum best;
    Eigen::MatrixXd sys(r, r);
    Eigen::VectorXd rhs(r);
    const double scale = 1.0 + b.cwiseAbs().maxCoeff();
    while (true) {
        if (++best.vertices_checked > max_subsets) throw DomainError("exact_affine_minimax: instance too large");
        for (std::size_t row = 0; row < r; ++row) {
            const auto i = static_cast<Eigen::Index>(pick[row]);
            sys.row(static_cast<Eigen::Index>(row)).head(static_cast<Eigen::Index>(n)) = A.row(i);
            sys(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(n)) = -1.0;
            rhs(static_cast<Eigen::Index>(row)) = -b(i);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
        if (lu.isInvertible()) {
            const Eigen::VectorXd sol = lu.solve(rhs);
            const Eigen::VectorXd y = sol.head(static_cast<Eigen::Index>(n));
            const double t = sol(static_cast<Eigen::Index>(n));
            const double worst = ((A * y + b).array() - t).maxCoeff();
            if (worst <= 1e-9 * scale && t < best.value) {
                best.value = t;
                best.point.assign(y.data(), y.data() + y.size());
            }
        }
        // next combination in lexicographic order
        std::size_t k = r;
        while (k > 0 && pick[k - 1] == m - r + (k - 1)) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t j = k; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (best.point.empty()) throw DomainError("exact_affine_minimax: no feasible vertex (unbounded instance?)");
    // Report the objective actually attained at the vertex.
    best.value = max_objective(p, best.point);
    return best;
}

/// m random affine components in R^n: Gaussian slopes re-centered to mean zero (so the
/// max is bounded below), Gaussian offsets. L = 0, M = max ||a_i||, start at the origin,
/// reference optimum from exact_affine_minimax.
inline MaxOfSmoothProblem make_random_affine_problem(std::size_t m, std::size_t n, std::uint64_t seed) {
    if (m < n + 1 || n < 1) throw DimensionError("make_random_affine_problem: need m >= n + 1 >= 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::vector<std::vector<double>> slopes(m, std::vector<double>(n));
    std::vector<double> mean(n, 0.0);
    for (auto& a : slopes) {
        for (std::size_t k = 0; k < n; ++k) {
            a[k] = normal(rng);
            mean[k] += a[k] / static_cast<double>(m);
        }
    }
    MaxOfSmoothProblem p;
    p.n = n;
    for (auto& a : slopes) {
        for (std::size_t k = 0; k < n; ++k) a[k] -= mean[k];
        p.M = std::max(p.M, detail::norm_two(a));
        p.components.push_back(AffineComponent{a, normal(rng)});
    }
    p.L = 0.0;
    p.start = std::vector<double>(n, 0.0);
    const auto opt = exact_affine_minimax(p);
    p.optimal_value = opt.value;
    p.optimal_point = opt.point;
    return p;
}

} // namespace maxsmooth
