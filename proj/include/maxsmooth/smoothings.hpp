#pragma once

// Smoothings of the coordinate-wise max: log-sum-exp (raw and centered) and
// quadratically regularized duals sup_{lambda in simplex} <lambda, x> - h(lambda).
// Every gradient lies in the simplex.

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "maxsmooth/bounds.hpp"
#include "maxsmooth/core.hpp"

namespace maxsmooth {

/// Threshold constant max_{sum w = 0} ||w||_1^2 / ||w||_2^2: d for even d, d - 1/d for odd d.
inline double c_constant(std::size_t d) {
    if (d < 2) throw DomainError("c_constant: dimension must be >= 2");
    const double dd = static_cast<double>(d);
    return d % 2 == 0 ? dd : dd - 1.0 / dd;
}

enum class SmoothingVariant { LSE, CenteredLSE, QuadraticPaper, QuadraticGeneric };

class SmoothingKind {
public:
    static SmoothingKind lse(std::size_t d) { return SmoothingKind(SmoothingVariant::LSE, d, 0.0, 0.0); }

    static SmoothingKind centered_lse(std::size_t d) {
        return SmoothingKind(SmoothingVariant::CenteredLSE, d, 0.0, 0.0);
    }

    // Shifted down by gamma(d). At d = 1 the simplex is a single point and any c works; 1 is used.
    static SmoothingKind quadratic_paper(std::size_t d) {
        const double c = d >= 2 ? c_constant(d) : 1.0;
        const double shift = d >= 1 ? gamma(d).value : 0.0;
        return SmoothingKind(SmoothingVariant::QuadraticPaper, d, c, shift);
    }

    static SmoothingKind quadratic_generic(std::size_t d, double c) {
        if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("quadratic_generic: c must be positive");
        return SmoothingKind(SmoothingVariant::QuadraticGeneric, d, c, 0.0);
    }

    /// Parses "lse", "clse", "quad" or "quadc:<c>".
    static SmoothingKind parse(const std::string& text, std::size_t d) {
        if (text == "lse") return lse(d);
        if (text == "clse") return centered_lse(d);
        if (text == "quad") return quadratic_paper(d);
        if (text.rfind("quadc:", 0) == 0) {
            std::size_t used = 0;
            double c = 0.0;
            try {
                c = std::stod(text.substr(6), &used);
            } catch (const std::exception&) {
                throw DomainError("unrecognized smoothing kind '" + text + "'");
            }
            if (used != text.size() - 6) throw DomainError("unrecognized smoothing kind '" + text + "'");
            return quadratic_generic(d, c);
        }
        throw DomainError("unrecognized smoothing kind '" + text + "'");
    }

    SmoothingVariant variant() const { return variant_; }
    std::size_t dim() const { return dim_; }
    double c() const { return c_; }
    double shift() const { return shift_; }

    bool is_quadratic() const {
        return variant_ == SmoothingVariant::QuadraticPaper || variant_ == SmoothingVariant::QuadraticGeneric;
    }

    /// False only for a quadratic regularizer below the threshold constant c_d, which is
    /// not guaranteed 1-smooth in the infinity norm.
    bool certified() const {
        if (variant_ != SmoothingVariant::QuadraticGeneric || dim_ < 2) return true;
        return c_ >= c_constant(dim_);
    }

    std::string name() const {
        switch (variant_) {
        case SmoothingVariant::LSE: return "lse";
        case SmoothingVariant::CenteredLSE: return "clse";
        case SmoothingVariant::QuadraticPaper: return "quad";
        case SmoothingVariant::QuadraticGeneric: {
            std::ostringstream os;
            os.precision(17);
            os << "quadc:" << c_;
            return os.str();
        }
        }
        return "unknown";
    }

private:
    SmoothingKind(SmoothingVariant variant, std::size_t d, double c, double shift)
        : variant_(variant), dim_(d), c_(c), shift_(shift) {
        if (d < 1) throw DimensionError("SmoothingKind: dimension must be >= 1");
    }

    SmoothingVariant variant_;
    std::size_t dim_;
    double c_;
    double shift_;
};

struct Evaluation {
    double value;
    SimplexWeights gradient;
};

namespace detail {

// Unvalidated value and gradient, used by the certificates so that a broken
// gradient is measured instead of rejected.
struct RawEvaluation {
    double value = 0.0;
    std::vector<double> gradient;
};

inline RawEvaluation lse_raw(std::span<const double> x, bool centered) {
    require_nonempty(x, "lse_value_grad");
    const double top = sigma_max(x);
    RawEvaluation out;
    out.gradient.resize(x.size());
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.gradient[i] = std::exp(x[i] - top);
        total += out.gradient[i];
    }
    for (double& g : out.gradient) g /= total;
    out.value = top + std::log(total);
    if (centered) out.value -= 0.5 * std::log(static_cast<double>(x.size()));
    return out;
}

inline RawEvaluation quadratic_raw(std::span<const double> x, double c, double shift) {
    require_nonempty(x, "quad_value_grad");
    std::vector<double> scaled(x.begin(), x.end());
    for (double& v : scaled) v /= c;
    RawEvaluation out;
    out.gradient = project_simplex_raw(scaled);
    const double sq = dot(out.gradient, out.gradient);
    out.value = dot(out.gradient, x) - 0.5 * c * (sq - 1.0) - shift;
    return out;
}

inline RawEvaluation evaluate_raw(const SmoothingKind& kind, std::span<const double> x) {
    if (x.size() != kind.dim()) throw DimensionError("smoothing: point dimension does not match kind");
    switch (kind.variant()) {
    case SmoothingVariant::LSE: return lse_raw(x, false);
    case SmoothingVariant::CenteredLSE: return lse_raw(x, true);
    case SmoothingVariant::QuadraticPaper:
    case SmoothingVariant::QuadraticGeneric: return quadratic_raw(x, kind.c(), kind.shift());
    }
    throw DomainError("smoothing: unknown variant");
}

} // namespace detail

/// ln sum exp(x_i) (less ln(d)/2 when centered) with its softmax gradient.
inline Evaluation lse_value_grad(std::span<const double> x, bool centered = false) {
    auto raw = detail::lse_raw(x, centered);
    return {raw.value, SimplexWeights(std::move(raw.gradient))};
}

/// Quadratic dual smoothing; the maximizer is the projection of x / c onto the simplex.
inline Evaluation quad_value_grad(std::span<const double> x, const SmoothingKind& kind) {
    if (!kind.is_quadratic()) throw DomainError("quad_value_grad: kind is not quadratic");
    if (x.size() != kind.dim()) throw DimensionError("quad_value_grad: point dimension does not match kind");
    auto raw = detail::quadratic_raw(x, kind.c(), kind.shift());
    return {raw.value, SimplexWeights(std::move(raw.gradient))};
}

inline Evaluation evaluate(const SmoothingKind& kind, std::span<const double> x) {
    auto raw = detail::evaluate_raw(kind, x);
    return {raw.value, SimplexWeights(std::move(raw.gradient))};
}

/// Closed interval containing f(x) - sigma_max(x) for every x: [-max h, -min h] over the simplex.
struct GapInterval {
    double lower;
    double upper;

    double width() const { return upper - lower; }
    double center() const { return 0.5 * (upper + lower); }
};

inline GapInterval gap_interval(const SmoothingKind& kind) {
    const double d = static_cast<double>(kind.dim());
    switch (kind.variant()) {
    case SmoothingVariant::LSE: return {0.0, std::log(d)};
    case SmoothingVariant::CenteredLSE: return {-0.5 * std::log(d), 0.5 * std::log(d)};
    case SmoothingVariant::QuadraticPaper:
    case SmoothingVariant::QuadraticGeneric: {
        const double spread = 0.5 * kind.c() * (1.0 - 1.0 / d);
        return {-kind.shift(), spread - kind.shift()};
    }
    }
    throw DomainError("gap_interval: unknown variant");
}

/// Exact sup |f - sigma_max|. For the gamma-shifted quadratic at d = 2, 3 this is
/// (c_d / 4)(1 - 1/d); for d >= 4 the shift no longer centers the range and the
/// larger end is reported.
inline double gap_bound(const SmoothingKind& kind) {
    const double d = static_cast<double>(kind.dim());
    switch (kind.variant()) {
    case SmoothingVariant::LSE: return std::log(d);
    case SmoothingVariant::CenteredLSE: return 0.5 * std::log(d);
    case SmoothingVariant::QuadraticPaper: {
        if (kind.dim() == 2 || kind.dim() == 3) return 0.25 * kind.c() * (1.0 - 1.0 / d);
        const GapInterval gi = gap_interval(kind);
        return std::max(-gi.lower, gi.upper);
    }
    case SmoothingVariant::QuadraticGeneric: return gap_interval(kind).upper;
    }
    throw DomainError("gap_bound: unknown variant");
}

} // namespace maxsmooth
