#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tracegraph {

namespace detail {

inline void check_np(int n, double p, const char* who) {
    if (n < 3) {
        std::ostringstream msg;
        msg << who << ": n must be >= 3, got " << n;
        throw std::invalid_argument(msg.str());
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << who << ": p must lie in [0, 1], got " << p;
        throw std::invalid_argument(msg.str());
    }
}

// log C(n, k) in extended precision; terms are exponentiated one by one so
// nothing overflows even at n = 200.
inline long double lchoose(int n, int k) {
    return std::lgamma(static_cast<long double>(n) + 1.0L) -
           std::lgamma(static_cast<long double>(k) + 1.0L) -
           std::lgamma(static_cast<long double>(n - k) + 1.0L);
}

// Probabilities may exit [0, 1] by accumulated rounding only; anything beyond
// 1e-9 is treated as a numerical failure rather than silently clamped.
inline double finalize_probability(long double v, const char* who) {
    constexpr long double slack = 1e-9L;
    if (v < 0.0L) {
        if (v < -slack) {
            std::ostringstream msg;
            msg << who << ": summation produced " << static_cast<double>(v)
                << ", outside [0, 1]";
            throw std::runtime_error(msg.str());
        }
        return 0.0;
    }
    if (v > 1.0L) {
        if (v > 1.0L + slack) {
            std::ostringstream msg;
            msg << who << ": summation produced " << static_cast<double>(v)
                << ", outside [0, 1]";
            throw std::runtime_error(msg.str());
        }
        return 1.0;
    }
    return static_cast<double>(v);
}

}  // namespace detail

/// Probability that an edge of G(n, p) has no vertex adjacent to exactly one
/// endpoint: sum over k (size of the neither-neighbor set) of
/// C(n-2, k) (1-p)^{2k} p^{2(n-2-k)}. Equals ((1-p)^2 + p^2)^{n-2}.
inline double prob_unique_neighbor_fails(int n, double p) {
    detail::check_np(n, p, "prob_unique_neighbor_fails");
    const long double q = 1.0L - static_cast<long double>(p);
    const long double lp = static_cast<long double>(p);
    long double sum = 0.0L;
    for (int k = 0; k <= n - 2; ++k) {
        sum += std::exp(detail::lchoose(n - 2, k)) * std::pow(q, 2.0L * k) *
               std::pow(lp, 2.0L * (n - 2 - k));
    }
    return detail::finalize_probability(sum, "prob_unique_neighbor_fails");
}

/// Probability that the algorithm misses a present edge:
/// sum over k of C(n-2, k) (1-p)^{2k} (p^2 (1 - (1-p)^k))^{n-2-k}.
/// The second factor is the chance that every common neighbor also touches
/// the neither-neighbor set, killing strong triadic closure.
inline double prob_missed_detection(int n, double p) {
    detail::check_np(n, p, "prob_missed_detection");
    const long double q = 1.0L - static_cast<long double>(p);
    const long double p2 = static_cast<long double>(p) * static_cast<long double>(p);
    long double sum = 0.0L;
    for (int k = 0; k <= n - 2; ++k) {
        const long double inner = p2 * (1.0L - std::pow(q, static_cast<long double>(k)));
        sum += std::exp(detail::lchoose(n - 2, k)) * std::pow(q, 2.0L * k) *
               std::pow(inner, static_cast<long double>(n - 2 - k));
    }
    return detail::finalize_probability(sum, "prob_missed_detection");
}

namespace detail {

inline void check_k(int n, int k, const char* who) {
    if (k < 0 || k > n - 2) {
        std::ostringstream msg;
        msg << who << ": k must lie in [0, n-2], got k=" << k << " with n=" << n;
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace detail

/// Given k common neighbors of a non-adjacent pair, probability that at least
/// one side has no private neighbor: 1 - (1 - (1-p)^{n-2-k})^2.
inline double coef_A(int n, double p, int k) {
    detail::check_np(n, p, "coef_A");
    detail::check_k(n, k, "coef_A");
    const long double q = std::pow(1.0L - static_cast<long double>(p),
                                    static_cast<long double>(n - 2 - k));
    return static_cast<double>(1.0L - (1.0L - q) * (1.0L - q));
}

/// Given k common neighbors, probability that at least one of them has no
/// neighbor outside the common set: 1 - (1 - (1-p)^{n-2-k})^k.
inline double coef_B(int n, double p, int k) {
    detail::check_np(n, p, "coef_B");
    detail::check_k(n, k, "coef_B");
    const long double q = std::pow(1.0L - static_cast<long double>(p),
                                    static_cast<long double>(n - 2 - k));
    return static_cast<double>(1.0L - std::pow(1.0L - q, static_cast<long double>(k)));
}

/// Probability that the algorithm invents an absent edge:
/// sum over k of C(n-2, k) p^{2k} A(n,p,k) B(n,p,k). Meaningful for p in
/// [0, 1); conditioning on a non-edge degenerates at exactly p = 1.
inline double prob_false_alarm(int n, double p) {
    detail::check_np(n, p, "prob_false_alarm");
    const long double lp = static_cast<long double>(p);
    long double sum = 0.0L;
    for (int k = 0; k <= n - 2; ++k) {
        const long double q = std::pow(1.0L - lp, static_cast<long double>(n - 2 - k));
        const long double a = 1.0L - (1.0L - q) * (1.0L - q);
        const long double b = 1.0L - std::pow(1.0L - q, static_cast<long double>(k));
        sum += std::exp(detail::lchoose(n - 2, k)) * std::pow(lp, 2.0L * k) * a * b;
    }
    return detail::finalize_probability(sum, "prob_false_alarm");
}

/// Analytic miss / false-alarm / combined rates for G(n, p). The combined
/// rate weighs the conditional probabilities by the edge prior:
/// p_err = p * p_miss + (1-p) * p_fa.
struct ErRates {
    int n = 0;
    double p = 0.0;
    double p_miss = 0.0;
    double p_fa = 0.0;
    double p_err = 0.0;
};

inline ErRates edge_error_rate(int n, double p) {
    detail::check_np(n, p, "edge_error_rate");
    ErRates r;
    r.n = n;
    r.p = p;
    r.p_miss = prob_missed_detection(n, p);
    r.p_fa = prob_false_alarm(n, p);
    r.p_err = p * r.p_miss + (1.0 - p) * r.p_fa;
    return r;
}

}  // namespace tracegraph
