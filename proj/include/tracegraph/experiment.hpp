#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "tracegraph/er_theory.hpp"
#include "tracegraph/graph.hpp"
#include "tracegraph/io.hpp"
#include "tracegraph/reconstruct.hpp"
#include "tracegraph/structure.hpp"
#include "tracegraph/trace.hpp"

namespace tracegraph {

struct TrialResult {
    int n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::int64_t edges_in_g = 0;
    std::int64_t missed = 0;
    std::int64_t false_alarms = 0;
    std::int64_t non_edges = 0;
};

/// One Monte Carlo trial: sample G(n, p, seed), reconstruct from its size-3
/// traces, tally the edge diff.
inline TrialResult run_trial(int n, double p, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("run_trial: n must be >= 3");
    const Graph g = sample_er(n, p, seed);
    const auto [ghat, report] = reconstruct(trace_set(g, 3), n);
    const EdgeDiff diff = edge_diff(g, ghat);
    TrialResult r;
    r.n = n;
    r.p = p;
    r.seed = seed;
    r.edges_in_g = static_cast<std::int64_t>(g.edge_count());
    r.missed = static_cast<std::int64_t>(diff.missed.size());
    r.false_alarms = static_cast<std::int64_t>(diff.false_alarms.size());
    r.non_edges = static_cast<std::int64_t>(n) * (n - 1) / 2 - r.edges_in_g;
    return r;
}

/// Seed for trial t of cell (n, p): a stable mix of the master seed and the
/// cell coordinates, so results do not depend on scheduling or cell order.
inline std::uint64_t trial_seed(std::uint64_t master_seed, int n, double p, int trial) {
    const auto milli_p = static_cast<std::uint64_t>(std::llround(p * 1000.0));
    std::uint64_t h = detail::mix64(master_seed);
    h = detail::mix64(h ^ static_cast<std::uint64_t>(n));
    h = detail::mix64(h ^ milli_p);
    h = detail::mix64(h ^ static_cast<std::uint64_t>(trial));
    return h;
}

struct SweepRow {
    int n = 0;
    double p = 0.0;
    int trials = 0;
    double emp_miss = 0.0;    // pooled: sum(missed) / sum(edges_in_g)
    double emp_fa = 0.0;      // pooled: sum(false_alarms) / sum(non_edges)
    double emp_err = 0.0;     // (sum missed + sum fa) / (trials * pairs)
    double theory_miss = 0.0;
    double theory_fa = 0.0;
    double theory_err = 0.0;
    double emp_stderr = 0.0;  // standard error of the per-trial error rates
};

struct SweepOptions {
    int jobs = 1;
};

namespace detail {

inline SweepRow aggregate_cell(int n, double p, std::span<const TrialResult> results) {
    SweepRow row;
    row.n = n;
    row.p = p;
    row.trials = static_cast<int>(results.size());
    std::int64_t sum_missed = 0, sum_fa = 0, sum_edges = 0, sum_non = 0;
    const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
    double sum_err = 0.0, sum_err_sq = 0.0;
    for (const auto& t : results) {
        sum_missed += t.missed;
        sum_fa += t.false_alarms;
        sum_edges += t.edges_in_g;
        sum_non += t.non_edges;
        const double e = static_cast<double>(t.missed + t.false_alarms) / pairs;
        sum_err += e;
        sum_err_sq += e * e;
    }
    row.emp_miss = sum_edges > 0 ? static_cast<double>(sum_missed) / static_cast<double>(sum_edges) : 0.0;
    row.emp_fa = sum_non > 0 ? static_cast<double>(sum_fa) / static_cast<double>(sum_non) : 0.0;
    const auto trials = static_cast<double>(results.size());
    row.emp_err = static_cast<double>(sum_missed + sum_fa) / (trials * pairs);
    if (results.size() > 1) {
        const double mean = sum_err / trials;
        const double var = (sum_err_sq - trials * mean * mean) / (trials - 1.0);
        row.emp_stderr = std::sqrt(var > 0.0 ? var : 0.0) / std::sqrt(trials);
    }
    const ErRates theory = edge_error_rate(n, p);
    row.theory_miss = theory.p_miss;
    row.theory_fa = theory.p_fa;
    row.theory_err = theory.p_err;
    return row;
}

}  // namespace detail

/// Theory-vs-empirical sweep over a grid of (n, p) cells. Worker threads fill
/// preallocated per-trial slots, so serial and parallel runs aggregate the
/// same numbers in the same order.
inline std::vector<SweepRow> sweep(std::span<const int> n_values, std::span<const double> p_values,
                                   int trials, std::uint64_t master_seed,
                                   const SweepOptions& opt = {}) {
    if (trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
    const int jobs = opt.jobs < 1 ? 1 : opt.jobs;
    std::vector<SweepRow> rows;
    for (double p : p_values)
        for (int n : n_values) {
            std::vector<TrialResult> results(static_cast<std::size_t>(trials));
            std::atomic<int> next{0};
            auto worker = [&] {
                for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1))
                    results[static_cast<std::size_t>(t)] =
                        run_trial(n, p, trial_seed(master_seed, n, p, t));
            };
            if (jobs == 1) {
                worker();
            } else {
                std::vector<std::thread> pool;
                pool.reserve(static_cast<std::size_t>(jobs));
                for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
                for (auto& th : pool) th.join();
            }
            rows.push_back(detail::aggregate_cell(n, p, results));
        }
    return rows;
}

inline void write_sweep_csv(std::ostream& os, std::span<const SweepRow> rows) {
    os << "n,p,trials,emp_miss,emp_fa,emp_err,theory_miss,theory_fa,theory_err,emp_stderr\n";
    for (const auto& r : rows) {
        os << r.n << ",";
        detail::write_float(os, r.p);
        os << "," << r.trials << ",";
        detail::write_float(os, r.emp_miss);
        os << ",";
        detail::write_float(os, r.emp_fa);
        os << ",";
        detail::write_float(os, r.emp_err);
        os << ",";
        detail::write_float(os, r.theory_miss);
        os << ",";
        detail::write_float(os, r.theory_fa);
        os << ",";
        detail::write_float(os, r.theory_err);
        os << ",";
        detail::write_float(os, r.emp_stderr);
        os << "\n";
    }
}

/// A graph where the algorithm and the structural prediction disagree.
struct ScanCase {
    Vertex n = 0;
    std::vector<Edge> graph_edges;
    std::vector<Edge> algo_only;    // in reconstruction, not predicted
    std::vector<Edge> oracle_only;  // predicted, not in reconstruction
};

struct ScanReport {
    std::int64_t graphs_seen = 0;
    std::int64_t in_regime = 0;  // n > 3 and |E| > 2
    std::int64_t counterexample_count = 0;
    std::int64_t boundary_diff_count = 0;
    std::vector<ScanCase> counterexamples;  // in-regime disagreements (capped)
    std::vector<ScanCase> boundary_diffs;   // informational (capped)

    bool clean() const noexcept { return counterexample_count == 0; }
};

namespace detail {

constexpr std::size_t scan_case_cap = 100;

inline void scan_one(const Graph& g, ScanReport& report) {
    ++report.graphs_seen;
    const bool regime = g.vertex_count() > 3 && g.edge_count() > 2;
    if (regime) ++report.in_regime;
    const auto [ghat, rep] = reconstruct(trace_set(g, 3), g.vertex_count());
    const OraclePrediction oracle = theorem_oracle(g);
    if (ghat == oracle.predicted) return;
    ScanCase diff;
    diff.n = g.vertex_count();
    diff.graph_edges.assign(g.edges().begin(), g.edges().end());
    for (auto [u, v] : ghat.edges())
        if (!oracle.predicted.has_edge(u, v)) diff.algo_only.emplace_back(u, v);
    for (auto [u, v] : oracle.predicted.edges())
        if (!ghat.has_edge(u, v)) diff.oracle_only.emplace_back(u, v);
    if (regime) {
        ++report.counterexample_count;
        if (report.counterexamples.size() < scan_case_cap)
            report.counterexamples.push_back(std::move(diff));
    } else {
        ++report.boundary_diff_count;
        if (report.boundary_diffs.size() < scan_case_cap)
            report.boundary_diffs.push_back(std::move(diff));
    }
}

}  // namespace detail

/// Checks reconstruct(trace_set(g, 3)) == theorem_oracle(g) over every
/// labeled graph on n vertices (2^(n(n-1)/2) of them; n <= 6).
inline ScanReport oracle_equivalence_scan_exhaustive(Vertex n) {
    if (n < 2 || n > 6)
        throw std::invalid_argument("oracle_equivalence_scan_exhaustive: n must be in [2, 6]");
    std::vector<Edge> all_pairs;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) all_pairs.emplace_back(u, v);
    ScanReport report;
    const std::uint64_t total = 1ULL << all_pairs.size();
    std::vector<Edge> edges;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        edges.clear();
        for (std::size_t i = 0; i < all_pairs.size(); ++i)
            if (mask >> i & 1) edges.push_back(all_pairs[i]);
        detail::scan_one(Graph(n, edges), report);
    }
    return report;
}

/// Same check over ER samples with n and p drawn uniformly from the given
/// ranges; fully determined by the seed.
inline ScanReport oracle_equivalence_scan_random(Vertex n_min, Vertex n_max, double p_min,
                                                 double p_max, int samples, std::uint64_t seed) {
    if (n_min < 2 || n_max < n_min)
        throw std::invalid_argument("oracle_equivalence_scan_random: need 2 <= n_min <= n_max");
    if (!(p_min >= 0.0 && p_min <= p_max && p_max <= 1.0))
        throw std::invalid_argument("oracle_equivalence_scan_random: need 0 <= p_min <= p_max <= 1");
    ScanReport report;
    std::mt19937_64 rng(seed);
    const auto span_n = static_cast<std::uint64_t>(n_max - n_min) + 1;
    for (int s = 0; s < samples; ++s) {
        const Vertex n = n_min + static_cast<Vertex>(rng() % span_n);
        const double p = p_min + (p_max - p_min) * detail::to_unit(rng());
        detail::scan_one(sample_er(n, p, rng()), report);
    }
    return report;
}

}  // namespace tracegraph
