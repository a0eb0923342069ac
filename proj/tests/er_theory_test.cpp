#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "tracegraph/er_theory.hpp"

using namespace tracegraph;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Independent reversed-order reimplementations of the three summations,
// used purely as numerical-stability cross-checks.
double miss_reversed(int n, double p) {
    long double sum = 0.0L;
    for (int k = n - 2; k >= 0; --k) {
        const long double q = 1.0L - static_cast<long double>(p);
        const long double inner =
            static_cast<long double>(p) * p * (1.0L - std::pow(q, k));
        sum += std::exp(std::lgamma(n - 1.0L) - std::lgamma(k + 1.0L) -
                         std::lgamma(n - 1.0L - k)) *
               std::pow(q, 2.0L * k) * std::pow(inner, n - 2 - k);
    }
    return static_cast<double>(sum);
}

double fa_reversed(int n, double p) {
    long double sum = 0.0L;
    for (int k = n - 2; k >= 0; --k)
        sum += std::exp(std::lgamma(n - 1.0L) - std::lgamma(k + 1.0L) -
                         std::lgamma(n - 1.0L - k)) *
               std::pow(static_cast<long double>(p), 2.0L * k) * coef_A(n, p, k) *
               coef_B(n, p, k);
    return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("unique-neighbor failure probability closes to the binomial identity") {
    for (int n : {3, 4, 10, 50, 200})
        for (int i = 0; i <= 20; ++i) {
            const double p = i * 0.05;
            const double closed = std::pow((1 - p) * (1 - p) + p * p, n - 2);
            REQUIRE_THAT(prob_unique_neighbor_fails(n, p), WithinRel(closed, 1e-12) ||
                                                               WithinAbs(closed, 1e-300));
        }
}

TEST_CASE("unique-neighbor failure at p = 1/2 is 2^-(n-2)") {
    for (int n : {3, 5, 12, 40})
        REQUIRE_THAT(prob_unique_neighbor_fails(n, 0.5),
                     WithinRel(std::pow(0.5, n - 2), 1e-12));
}

TEST_CASE("unique-neighbor failure is certain at p = 0 and p = 1") {
    for (int n : {3, 7, 100}) {
        REQUIRE(prob_unique_neighbor_fails(n, 0.0) == 1.0);
        REQUIRE(prob_unique_neighbor_fails(n, 1.0) == 1.0);
    }
}

TEST_CASE("missed detection spot values") {
    // n = 4, p = 1/2: terms k=0: 0, k=1: 2 * 1/4 * 1/8, k=2: 1/16.
    REQUIRE_THAT(prob_missed_detection(4, 0.5), WithinRel(0.125, 1e-12));
    // frozen from exact rational evaluation of the sum
    REQUIRE_THAT(prob_missed_detection(20, 0.5), WithinRel(3.6046942620693213e-06, 1e-12));
}

TEST_CASE("missed detection boundary probabilities") {
    for (int n : {3, 6, 30}) {
        REQUIRE(prob_missed_detection(n, 1.0) == 0.0);
        REQUIRE(prob_missed_detection(n, 0.0) == 1.0);
        REQUIRE_THAT(prob_missed_detection(n, 1e-9), WithinAbs(1.0, 1e-6));
    }
}

TEST_CASE("coefficient spot values") {
    REQUIRE_THAT(coef_A(10, 0.5, 4), WithinRel(0.12109375, 1e-12));
    for (int n : {4, 9})
        for (int k = 0; k <= n - 2; ++k) {
            REQUIRE(coef_B(n, 0.3, 0) == 0.0);
            if (k < n - 2) REQUIRE_THAT(coef_A(n, 1.0, k), WithinAbs(0.0, 0.0));
        }
    REQUIRE_THROWS_AS(coef_A(10, 0.5, 9), std::invalid_argument);
    REQUIRE_THROWS_AS(coef_B(10, 0.5, -1), std::invalid_argument);
}

TEST_CASE("false alarm spot values") {
    REQUIRE(prob_false_alarm(5, 0.0) == 0.0);
    REQUIRE(prob_false_alarm(40, 0.0) == 0.0);
    // frozen from exact rational evaluation of the sum
    REQUIRE_THAT(prob_false_alarm(20, 0.5), WithinRel(6.597312961245052e-05, 1e-12));
    REQUIRE_THAT(prob_false_alarm(4, 0.5), WithinRel(0.25, 1e-12));
}

TEST_CASE("probabilities stay in range across the grid") {
    for (int n = 3; n <= 200; n += (n < 20 ? 1 : 7))
        for (int i = 0; i <= 20; ++i) {
            const double p = i * 0.05;
            const double miss = prob_missed_detection(n, p);
            const double fa = prob_false_alarm(n, p);
            REQUIRE(miss >= 0.0);
            REQUIRE(miss <= 1.0);
            REQUIRE(fa >= 0.0);
            REQUIRE(fa <= 1.0);
        }
}

TEST_CASE("summations agree with reversed-order evaluation") {
    for (int n : {4, 20, 100, 200})
        for (double p : {0.05, 0.3, 0.5, 0.8, 0.95}) {
            const double miss = prob_missed_detection(n, p);
            const double fa = prob_false_alarm(n, p);
            REQUIRE_THAT(miss_reversed(n, p), WithinRel(miss, 1e-12) || WithinAbs(miss, 1e-300));
            REQUIRE_THAT(fa_reversed(n, p), WithinRel(fa, 1e-12) || WithinAbs(fa, 1e-300));
        }
}

TEST_CASE("edge error rate composes the prior-weighted mixture") {
    for (int n : {4, 10, 60})
        for (double p : {0.0, 0.1, 0.5, 0.9, 1.0}) {
            const ErRates r = edge_error_rate(n, p);
            REQUIRE(r.n == n);
            REQUIRE(r.p == p);
            REQUIRE_THAT(r.p_err, WithinAbs(p * r.p_miss + (1 - p) * r.p_fa, 1e-15));
            REQUIRE(r.p_err >= 0.0);
            REQUIRE(r.p_err <= 1.0);
        }
    REQUIRE(edge_error_rate(10, 0.0).p_err == 0.0);
    REQUIRE(edge_error_rate(10, 1.0).p_err == 0.0);
}

TEST_CASE("error rate decreases in n and heads to zero") {
    for (double p : {0.1, 0.5, 0.8}) {
        double prev = edge_error_rate(30, p).p_err;
        for (int n = 31; n <= 200; ++n) {
            const double cur = edge_error_rate(n, p).p_err;
            REQUIRE(cur < prev);
            prev = cur;
        }
        REQUIRE(prev < 1e-8);
    }
}

TEST_CASE("domain errors") {
    REQUIRE_THROWS_AS(prob_missed_detection(2, 0.5), std::invalid_argument);
    REQUIRE_THROWS_AS(prob_false_alarm(10, -0.01), std::invalid_argument);
    REQUIRE_THROWS_AS(prob_unique_neighbor_fails(10, 1.01), std::invalid_argument);
    REQUIRE_THROWS_AS(edge_error_rate(1, 0.5), std::invalid_argument);
}
