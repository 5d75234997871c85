#pragma once

// Maximal partition sums gamma(d) and the asymptotic constants bracketing them.
//
// gamma(d) = max sum_{l=1..k} (1 - j_{l-1}/j_l)^2 over chains 1 = j_0 < ... < j_k = d,
// computed through gamma(d) = max_{1<=i<d} gamma(i) + (1 - i/d)^2, gamma(1) = 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "maxsmooth/core.hpp"

namespace maxsmooth {

/// Increasing chain 1 = j_0 < ... < j_k = d together with its partition sum.
struct PartitionCertificate {
    std::vector<std::size_t> indices;
    double value = 0.0;

    std::size_t dim() const { return indices.empty() ? 0 : indices.back(); }
};

struct AsymptoticConstants {
    double beta = 0.0;
    double slope = 0.0; // 2 beta (1 - beta)
};

struct Sandwich {
    double lower = 0.0;
    double upper = 0.0;
};

/// Single term (1 - j/i)^2 = (i - j)^2 / i^2 of the partition sum. Numerator and
/// denominator are exact integers in double for i < 2^26, so the term is one correctly
/// rounded division, and it is evaluated the same way everywhere so that DP values and
/// recomputed certificates agree bit for bit.
inline double partition_term(std::size_t prev, std::size_t next) {
    const double gap = static_cast<double>(next - prev);
    const double den = static_cast<double>(next);
    return (gap * gap) / (den * den);
}

/// Sums the partition terms along a chain, left to right.
inline double partition_sum(std::span<const std::size_t> indices) {
    if (indices.empty() || indices.front() != 1) {
        throw DomainError("partition_sum: chain must start at 1");
    }
    double total = 0.0;
    for (std::size_t l = 1; l < indices.size(); ++l) {
        if (indices[l] <= indices[l - 1]) throw DomainError("partition_sum: chain must be strictly increasing");
        total += partition_term(indices[l - 1], indices[l]);
    }
    return total;
}

/// Result of the gamma recurrence for every dimension 1..dmax.
struct GammaTable {
    std::vector<double> value;             // value[d], value[0] unused
    std::vector<std::uint32_t> predecessor; // argmax i for d >= 2 (0 for d = 1)

    std::size_t max_dim() const { return value.empty() ? 0 : value.size() - 1; }

    PartitionCertificate certificate(std::size_t d) const {
        if (d < 1 || d > max_dim()) throw DimensionError("GammaTable: dimension out of range");
        PartitionCertificate cert;
        for (std::size_t j = d; j != 0; j = predecessor[j]) {
            cert.indices.push_back(j);
            if (j == 1) break;
        }
        std::reverse(cert.indices.begin(), cert.indices.end());
        cert.value = value[d];
        return cert;
    }
};

enum class GammaMethod {
    Exhaustive, // every predecessor i is scored
    Pruned      // branch and bound over blocks of i, exact
};

namespace detail {

struct Candidate {
    double value;
    std::size_t index;
};

// Strictly better, or tied with a smaller predecessor.
inline bool better(const Candidate& a, const Candidate& b) {
    return a.value > b.value || (a.value == b.value && a.index < b.index);
}

inline Candidate best_in_range(const std::vector<double>& gamma, std::size_t d, std::size_t lo, std::size_t hi) {
    Candidate best{-1.0, 0};
    for (std::size_t i = lo; i <= hi; ++i) {
        const double v = gamma[i] + partition_term(i, d);
        if (v > best.value) best = {v, i};
    }
    return best;
}

inline std::size_t thread_cap() {
    std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("MAXSMOOTH_THREADS")) {
        const long requested = std::strtol(env, nullptr, 10);
        if (requested >= 1) cap = std::min(cap, static_cast<std::size_t>(requested));
    }
    return cap;
}

inline Candidate exhaustive_step(const std::vector<double>& gamma, std::size_t d, std::size_t threads) {
    const std::size_t count = d - 1;
    if (threads <= 1 || count < 65536) return best_in_range(gamma, d, 1, d - 1);

    std::vector<Candidate> partial(threads, Candidate{-1.0, 0});
    std::vector<std::thread> workers;
    const std::size_t chunk = (count + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t lo = 1 + t * chunk;
        const std::size_t hi = std::min(d - 1, lo + chunk - 1);
        if (lo > hi) break;
        workers.emplace_back([&, t, lo, hi] { partial[t] = best_in_range(gamma, d, lo, hi); });
    }
    for (auto& w : workers) w.join();
    // Chunks are ordered by index, so a strict comparison keeps the smallest tied index.
    Candidate best{-1.0, 0};
    for (const auto& c : partial) {
        if (c.index != 0 && c.value > best.value) best = c;
    }
    return best;
}

// Exact search: gamma is nondecreasing and (1 - i/d)^2 decreasing in i, so on a block
// [a, b] every candidate is bounded by gamma[b] + (1 - a/d)^2. Both facts hold in
// floating point because the operations involved are monotone under rounding.
class PrunedSearch {
public:
    PrunedSearch(const std::vector<double>& gamma, std::size_t d) : gamma_(gamma), d_(d) {}

    Candidate run(double beta) {
        const double center = beta * static_cast<double>(d_);
        const auto half = static_cast<std::size_t>(4.0 * std::sqrt(static_cast<double>(d_))) + 8;
        const auto c = static_cast<std::size_t>(center);
        const std::size_t lo = c > half ? std::max<std::size_t>(1, c - half) : 1;
        const std::size_t hi = std::min(d_ - 1, c + half);
        best_ = best_in_range(gamma_, d_, lo, hi);
        if (lo > 1) visit(1, lo - 1);
        if (hi < d_ - 1) visit(hi + 1, d_ - 1);
        return best_;
    }

private:
    static constexpr std::size_t leaf_size = 32;

    void visit(std::size_t a, std::size_t b) {
        const double bound = gamma_[b] + partition_term(a, d_);
        if (bound < best_.value || (bound == best_.value && a > best_.index)) return;
        if (b - a < leaf_size) {
            for (std::size_t i = a; i <= b; ++i) {
                const Candidate cand{gamma_[i] + partition_term(i, d_), i};
                if (better(cand, best_)) best_ = cand;
            }
            return;
        }
        const std::size_t mid = a + (b - a) / 2;
        visit(a, mid);
        visit(mid + 1, b);
    }

    const std::vector<double>& gamma_;
    std::size_t d_;
    Candidate best_{-1.0, 0};
};

inline double bisect_beta(double tol) {
    const auto residual = [](double b) { return 2.0 * b * std::log(b) - b + 1.0; };
    // residual > 0 near 0 and < 0 just below 1 (the second root sits at 1 itself).
    double lo = 1e-3;
    double hi = 1.0 - 1e-3;
    while (hi - lo >= tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (residual(mid) > 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/// Root of 2 b ln b - b + 1 on (0, 1) by bisection, with the limiting slope of gamma(d)/ln d.
inline AsymptoticConstants beta_root(double tol = 1e-10) {
    if (!(tol > 0.0)) throw DomainError("beta_root: tol must be positive");
    const double beta = detail::bisect_beta(tol);
    return {beta, 2.0 * beta * (1.0 - beta)};
}

/// Runs the recurrence for all dimensions up to dmax.
inline GammaTable gamma_table(std::size_t dmax, GammaMethod method = GammaMethod::Exhaustive) {
    if (dmax < 1) throw DomainError("gamma_table: dimension must be >= 1");
    if (dmax >= (std::size_t{1} << 26)) throw DomainError("gamma_table: dimension must be below 2^26");
    GammaTable table;
    table.value.assign(dmax + 1, 0.0);
    table.predecessor.assign(dmax + 1, 0);
    const double beta = beta_root(1e-12).beta;
    const std::size_t threads = detail::thread_cap();
    for (std::size_t d = 2; d <= dmax; ++d) {
        const detail::Candidate best = method == GammaMethod::Exhaustive
            ? detail::exhaustive_step(table.value, d, threads)
            : detail::PrunedSearch(table.value, d).run(beta);
        table.value[d] = best.value;
        table.predecessor[d] = static_cast<std::uint32_t>(best.index);
    }
    return table;
}

/// gamma(d) with an optimal chain; ties go to the smallest predecessor.
inline PartitionCertificate gamma(std::size_t d, GammaMethod method = GammaMethod::Exhaustive) {
    if (d < 1) throw DomainError("gamma: dimension must be >= 1");
    return gamma_table(d, method).certificate(d);
}

inline constexpr std::size_t bruteforce_max_dim = 22;

/// Exhaustive maximum over every admissible chain (2^(d-2) subsets of {2..d-1}).
inline double gamma_bruteforce(std::size_t d) {
    if (d < 2 || d > bruteforce_max_dim) throw DomainError("gamma_bruteforce: need 2 <= d <= 22");
    const std::size_t inner = d - 2;
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inner); ++mask) {
        std::size_t prev = 1;
        double total = 0.0;
        for (std::size_t bit = 0; bit < inner; ++bit) {
            if (mask & (std::uint64_t{1} << bit)) {
                total += partition_term(prev, bit + 2);
                prev = bit + 2;
            }
        }
        total += partition_term(prev, d);
        best = std::max(best, total);
    }
    return best;
}

using Rational = boost::rational<std::int64_t>;

inline constexpr std::size_t exact_max_dim = 12;

/// Exhaustive maximum in exact rational arithmetic.
inline Rational gamma_bruteforce_exact(std::size_t d) {
    if (d < 1 || d > exact_max_dim) throw DomainError("gamma_bruteforce_exact: need 1 <= d <= 12");
    if (d == 1) return Rational(0);
    const auto term = [](std::int64_t prev, std::int64_t next) {
        const Rational r(next - prev, next);
        return r * r;
    };
    const std::size_t inner = d - 2;
    Rational best(0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << inner); ++mask) {
        std::int64_t prev = 1;
        Rational total(0);
        for (std::size_t bit = 0; bit < inner; ++bit) {
            if (mask & (std::uint64_t{1} << bit)) {
                const auto j = static_cast<std::int64_t>(bit + 2);
                total += term(prev, j);
                prev = j;
            }
        }
        total += term(prev, static_cast<std::int64_t>(d));
        if (total > best) best = total;
    }
    return best;
}

/// Bracket s ln d - 2(d-1)/d <= gamma(d) <= s ln d with s = 2 beta (1 - beta).
inline Sandwich asymptotic_sandwich(std::size_t d) {
    if (d < 1) throw DomainError("asymptotic_sandwich: dimension must be >= 1");
    const double slope = beta_root(1e-10).slope;
    const double dd = static_cast<double>(d);
    const double upper = slope * std::log(dd);
    return {upper - 2.0 * (dd - 1.0) / dd, upper};
}

/// The two-element chain (1, d).
inline double two_term_lower(std::size_t d) {
    if (d < 1) throw DomainError("two_term_lower: dimension must be >= 1");
    return partition_term(1, d);
}

} // namespace maxsmooth
