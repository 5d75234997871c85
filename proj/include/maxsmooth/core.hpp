#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace maxsmooth {

// Thrown for empty vectors, mismatched lengths, out-of-range indices.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown for parameters outside an operation's domain (tol <= 0, eps <= 0, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double simplex_tolerance = 1e-12;

/// Dense point in R^d with finite entries and d >= 1.
class Point {
public:
    Point() = delete;

    explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {
        if (coords_.empty()) throw DimensionError("Point: dimension must be >= 1");
        for (double v : coords_) {
            if (!std::isfinite(v)) throw DomainError("Point: entries must be finite");
        }
    }

    Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

    std::size_t dim() const { return coords_.size(); }
    std::span<const double> coords() const { return coords_; }
    const std::vector<double>& vec() const { return coords_; }
    double operator[](std::size_t i) const { return coords_[i]; }

    operator std::span<const double>() const { return coords_; }

    friend bool operator==(const Point&, const Point&) = default;

private:
    std::vector<double> coords_;
};

/// Vector in the probability simplex: nonnegative entries summing to one.
class SimplexWeights {
public:
    explicit SimplexWeights(std::vector<double> weights) : weights_(std::move(weights)) {
        if (weights_.empty()) throw DimensionError("SimplexWeights: dimension must be >= 1");
        double sum = 0.0;
        for (double w : weights_) {
            if (!(w >= -simplex_tolerance)) {
                throw DomainError("SimplexWeights: negative entry " + std::to_string(w));
            }
            sum += w;
        }
        if (std::abs(sum - 1.0) > simplex_tolerance) {
            throw DomainError("SimplexWeights: entries sum to " + std::to_string(sum));
        }
    }

    static SimplexWeights uniform(std::size_t d) {
        if (d == 0) throw DimensionError("SimplexWeights: dimension must be >= 1");
        return SimplexWeights(std::vector<double>(d, 1.0 / static_cast<double>(d)));
    }

    std::size_t dim() const { return weights_.size(); }
    std::span<const double> weights() const { return weights_; }
    const std::vector<double>& vec() const { return weights_; }
    double operator[](std::size_t i) const { return weights_[i]; }

    operator std::span<const double>() const { return weights_; }

private:
    std::vector<double> weights_;
};

namespace detail {

inline void require_nonempty(std::span<const double> x, const char* what) {
    if (x.empty()) throw DimensionError(std::string(what) + ": empty vector");
}

inline void require_same_dim(std::span<const double> x, std::span<const double> y, const char* what) {
    if (x.size() != y.size()) throw DimensionError(std::string(what) + ": dimension mismatch");
}

inline std::vector<double> subtract(std::span<const double> x, std::span<const double> y) {
    require_same_dim(x, y, "subtract");
    std::vector<double> out(x.size());
    std::transform(x.begin(), x.end(), y.begin(), out.begin(), std::minus<>{});
    return out;
}

inline double dot(std::span<const double> x, std::span<const double> y) {
    require_same_dim(x, y, "dot");
    return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

inline double norm_two(std::span<const double> x) { return std::sqrt(dot(x, x)); }

} // namespace detail

inline double sigma_max(std::span<const double> x) {
    detail::require_nonempty(x, "sigma_max");
    return *std::max_element(x.begin(), x.end());
}

inline double norm_inf(std::span<const double> x) {
    detail::require_nonempty(x, "norm_inf");
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

inline double norm_one(std::span<const double> x) {
    detail::require_nonempty(x, "norm_one");
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
}

namespace detail {

// Sort-and-threshold Euclidean projection onto the simplex. Returns raw weights
// so callers on hot paths can skip SimplexWeights validation.
inline std::vector<double> project_simplex_raw(std::span<const double> v) {
    require_nonempty(v, "project_simplex");
    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>{});

    double cumulative = 0.0;
    double tau = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        cumulative += sorted[k];
        const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (sorted[k] - candidate > 0.0) tau = candidate;
    }

    std::vector<double> out(v.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = std::max(v[i] - tau, 0.0);
        sum += out[i];
    }
    // Pull the roundoff in the threshold back onto the simplex.
    if (sum > 0.0 && std::abs(sum - 1.0) > 0.0) {
        for (double& w : out) w /= sum;
    }
    return out;
}

} // namespace detail

/// Euclidean projection of v onto the probability simplex.
inline SimplexWeights project_simplex(std::span<const double> v) {
    return SimplexWeights(detail::project_simplex_raw(v));
}

/// alpha * x^(j): first j coordinates alpha/j, the rest zero.
inline Point structured_point(std::size_t j, std::size_t d, double alpha) {
    if (d == 0 || j < 1 || j > d) {
        throw DimensionError("structured_point: need 1 <= j <= d");
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError("structured_point: alpha must be positive and finite");
    }
    std::vector<double> coords(d, 0.0);
    std::fill_n(coords.begin(), j, alpha / static_cast<double>(j));
    return Point(std::move(coords));
}

} // namespace maxsmooth
