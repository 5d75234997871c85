#pragma once

// Follow-the-regularized-leader over the simplex and the fair-coin experts game.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "maxsmooth/core.hpp"
#include "maxsmooth/smoothings.hpp"

namespace maxsmooth {

enum class RegularizerKind { Entropy, ScaledQuadratic };

/// h on the simplex: sum lambda_i ln lambda_i, or (c/2) ||lambda||^2.
class Regularizer {
public:
    static Regularizer entropy(std::size_t d) { return Regularizer(RegularizerKind::Entropy, d, 0.0); }

    static Regularizer scaled_quadratic(std::size_t d, double c) {
        if (!(c > 0.0)) throw DomainError("scaled_quadratic: c must be positive");
        return Regularizer(RegularizerKind::ScaledQuadratic, d, c);
    }

    /// Quadratic with the threshold constant c_d (1-strongly convex in the 1-norm).
    static Regularizer scaled_quadratic(std::size_t d) { return scaled_quadratic(d, c_constant(d)); }

    static Regularizer parse(const std::string& text, std::size_t d) {
        if (text == "entropy") return entropy(d);
        if (text == "quad") return scaled_quadratic(d);
        throw DomainError("unrecognized regularizer '" + text + "'");
    }

    RegularizerKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    double c() const { return c_; }

    /// max h - min h over the simplex.
    double range() const {
        const double d = static_cast<double>(dim_);
        return kind_ == RegularizerKind::Entropy ? std::log(d) : 0.5 * c_ * (1.0 - 1.0 / d);
    }

    double value(std::span<const double> lambda) const {
        double h = 0.0;
        if (kind_ == RegularizerKind::Entropy) {
            for (double l : lambda) h += l > 0.0 ? l * std::log(l) : 0.0;
        } else {
            for (double l : lambda) h += l * l;
            h *= 0.5 * c_;
        }
        return h;
    }

    std::string name() const { return kind_ == RegularizerKind::Entropy ? "entropy" : "quad"; }

private:
    Regularizer(RegularizerKind kind, std::size_t d, double c) : kind_(kind), dim_(d), c_(c) {
        if (d < 1) throw DimensionError("Regularizer: dimension must be >= 1");
    }

    RegularizerKind kind_;
    std::size_t dim_;
    double c_;
};

namespace detail {

inline std::vector<double> ftrl_raw(const Regularizer& reg, std::span<const double> losses, double eta) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("ftrl_weights: eta must be positive");
    if (losses.size() != reg.dim()) throw DimensionError("ftrl_weights: loss vector has wrong length");
    std::vector<double> w(losses.size());
    if (reg.kind() == RegularizerKind::Entropy) {
        const double low = *std::min_element(losses.begin(), losses.end());
        double total = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] = std::exp(-eta * (losses[i] - low));
            total += w[i];
        }
        for (double& v : w) v /= total;
        return w;
    }
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = -eta * losses[i] / reg.c();
    return project_simplex_raw(w);
}

} // namespace detail

/// argmin_{lambda in simplex} <lambda, cumulative_losses> + h(lambda) / eta.
inline SimplexWeights ftrl_weights(const Regularizer& reg, std::span<const double> cumulative_losses, double eta) {
    return SimplexWeights(detail::ftrl_raw(reg, cumulative_losses, eta));
}

/// sqrt(2 Range(h) T)
inline double regret_bound(const Regularizer& reg, std::size_t horizon) {
    if (horizon < 1) throw DomainError("regret_bound: horizon must be >= 1");
    return std::sqrt(2.0 * reg.range() * static_cast<double>(horizon));
}

/// Bound-optimizing learning rate sqrt(2 Range(h) / T).
inline double tuned_eta(const Regularizer& reg, std::size_t horizon) {
    if (horizon < 1) throw DomainError("tuned_eta: horizon must be >= 1");
    return std::sqrt(2.0 * reg.range() / static_cast<double>(horizon));
}

struct RegretRound {
    std::size_t round = 0;
    double learner_loss = 0.0;     // cumulative
    double best_expert_loss = 0.0; // cumulative
    double regret = 0.0;
};

struct RegretTrace {
    std::size_t horizon = 0;
    std::size_t dim = 0;
    std::uint64_t seed = 0;
    double eta = 0.0;
    std::vector<RegretRound> rounds;
    // Per-round loss vectors and played weights, kept only when requested.
    std::vector<std::vector<double>> losses;
    std::vector<std::vector<double>> weights;

    double final_regret() const { return rounds.empty() ? 0.0 : rounds.back().regret; }
};

/// Experts and outcomes are independent fair bits; an expert's loss is 1 on a wrong
/// prediction. The learner plays FTRL weights each round and suffers the weighted loss.
inline RegretTrace run_coinflip_game(std::size_t d, std::size_t horizon, std::uint64_t seed, const Regularizer& reg,
                                     double eta, bool keep_vectors = false) {
    if (d < 2) throw DimensionError("run_coinflip_game: need d >= 2");
    if (horizon < 1) throw DomainError("run_coinflip_game: horizon must be >= 1");
    if (reg.dim() != d) throw DimensionError("run_coinflip_game: regularizer dimension mismatch");

    RegretTrace trace;
    trace.horizon = horizon;
    trace.dim = d;
    trace.seed = seed;
    trace.eta = eta;
    trace.rounds.reserve(horizon);

    std::mt19937_64 rng(seed);
    std::vector<double> cumulative(d, 0.0);
    std::vector<double> loss(d);
    double learner = 0.0;
    for (std::size_t t = 1; t <= horizon; ++t) {
        const auto w = detail::ftrl_raw(reg, cumulative, eta);
        const bool outcome = (rng() >> 63) != 0;
        for (std::size_t i = 0; i < d; ++i) {
            const bool prediction = (rng() >> 63) != 0;
            loss[i] = prediction == outcome ? 0.0 : 1.0;
        }
        for (std::size_t i = 0; i < d; ++i) {
            learner += w[i] * loss[i];
            cumulative[i] += loss[i];
        }
        const double best = *std::min_element(cumulative.begin(), cumulative.end());
        trace.rounds.push_back({t, learner, best, learner - best});
        if (keep_vectors) {
            trace.losses.push_back(loss);
            trace.weights.push_back(w);
        }
    }
    return trace;
}

} // namespace maxsmooth
