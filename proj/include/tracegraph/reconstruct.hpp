#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tracegraph/graph.hpp"
#include "tracegraph/trace.hpp"

namespace tracegraph {

/// Symmetric co-occurrence count matrix with zero diagonal.
/// at(u, v) = number of traces containing both u and v.
class CoMatrix {
public:
    CoMatrix() = default;

    explicit CoMatrix(Vertex n) : n_(n) {
        if (n < 0) throw std::invalid_argument("CoMatrix: n must be nonnegative");
        counts_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    }

    Vertex size() const noexcept { return n_; }

    std::int64_t at(Vertex u, Vertex v) const {
        check(u);
        check(v);
        if (u == v) return 0;
        return counts_[idx(u, v)];
    }

    void increment(Vertex u, Vertex v) {
        check(u);
        check(v);
        if (u == v) throw std::invalid_argument("CoMatrix: diagonal stays zero");
        ++counts_[idx(u, v)];
        ++counts_[idx(v, u)];
    }

    std::int64_t total_pair_count() const {
        std::int64_t sum = 0;
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v = u + 1; v < n_; ++v) sum += counts_[idx(u, v)];
        return sum;
    }

private:
    std::size_t idx(Vertex u, Vertex v) const noexcept {
        return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(v);
    }
    void check(Vertex v) const {
        if (v < 0 || v >= n_) {
            std::ostringstream msg;
            msg << "CoMatrix: vertex " << v << " outside 0.." << n_ - 1;
            throw std::invalid_argument(msg.str());
        }
    }

    Vertex n_ = 0;
    std::vector<std::int64_t> counts_;
};

/// Stage 1: count, for every unordered pair, the traces containing both ends.
inline CoMatrix cooccurrence_matrix(const TraceSet& ts, Vertex n) {
    CoMatrix m(n);
    for (const auto& t : ts.traces) {
        if (t.back() >= n) {
            std::ostringstream msg;
            msg << "cooccurrence_matrix: trace vertex " << t.back() << " outside 0.."
                << n - 1;
            throw std::invalid_argument(msg.str());
        }
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = i + 1; j < t.size(); ++j) m.increment(t[i], t[j]);
    }
    return m;
}

/// Weight of an ordering: sum of counts over consecutive pairs.
inline std::int64_t path_weight(const CoMatrix& m, std::span<const Vertex> seq) {
    if (seq.size() < 2) throw std::invalid_argument("path_weight: need at least 2 vertices");
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] == seq[j]) {
                std::ostringstream msg;
                msg << "path_weight: repeated vertex " << seq[i];
                throw std::invalid_argument(msg.str());
            }
    std::int64_t w = 0;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) w += m.at(seq[i], seq[i + 1]);
    return w;
}

struct BestOrderings {
    std::vector<std::vector<Vertex>> orderings;  // every maximum-weight ordering
    std::int64_t weight = 0;
};

/// Stage 2 inner step: evaluate all |t|!/2 reversal-deduplicated orderings of
/// a trace and keep those of maximum weight.
inline BestOrderings best_orderings(const CoMatrix& m, const Trace& t) {
    if (t.size() < 2) throw std::invalid_argument("best_orderings: trace has fewer than 2 vertices");
    std::vector<Vertex> perm(t.begin(), t.end());
    std::sort(perm.begin(), perm.end());
    BestOrderings best;
    best.weight = -1;
    do {
        if (perm.front() > perm.back()) continue;  // reversal duplicate
        std::int64_t w = 0;
        for (std::size_t i = 0; i + 1 < perm.size(); ++i) w += m.at(perm[i], perm[i + 1]);
        if (w > best.weight) {
            best.weight = w;
            best.orderings.clear();
            best.orderings.push_back(perm);
        } else if (w == best.weight) {
            best.orderings.push_back(perm);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

struct TraceOutcome {
    Trace trace;
    std::int64_t max_weight = 0;
    int tie_count = 0;                 // number of maximum-weight orderings
    std::vector<Edge> edges;           // union of winner edges, canonical, sorted
};

struct ReconstructionReport {
    std::vector<TraceOutcome> per_trace;
    std::size_t tied_traces = 0;       // traces with more than one winner

    std::int64_t total_ties() const {
        std::int64_t t = 0;
        for (const auto& o : per_trace) t += o.tie_count - 1;
        return t;
    }
};

struct ReconstructOptions {
    // |t|!/2 orderings are evaluated per trace; 10!/2 = 1,814,400 is the
    // default ceiling before we refuse.
    int max_trace_size = 10;
};

/// The two-stage reconstruction. Returns the estimated graph and a per-trace
/// account of winning orderings. The result does not depend on trace order:
/// the edge set is a union over traces.
inline std::pair<Graph, ReconstructionReport> reconstruct(const TraceSet& ts, Vertex n,
                                                          const ReconstructOptions& opt = {}) {
    for (const auto& t : ts.traces) {
        if (static_cast<int>(t.size()) > opt.max_trace_size) {
            std::ostringstream msg;
            msg << "reconstruct: trace of size " << t.size() << " exceeds the cap of "
                << opt.max_trace_size << " (" << opt.max_trace_size
                << "!/2 orderings); raise max_trace_size to override";
            throw std::invalid_argument(msg.str());
        }
    }
    const CoMatrix m = cooccurrence_matrix(ts, n);

    ReconstructionReport report;
    report.per_trace.reserve(ts.traces.size());
    std::set<Edge> ghat_edges;
    for (const auto& t : ts.traces) {
        BestOrderings best = best_orderings(m, t);
        TraceOutcome outcome;
        outcome.trace = t;
        outcome.max_weight = best.weight;
        outcome.tie_count = static_cast<int>(best.orderings.size());
        std::set<Edge> contributed;
        for (const auto& ordering : best.orderings)
            for (std::size_t i = 0; i + 1 < ordering.size(); ++i) {
                Vertex u = ordering[i], v = ordering[i + 1];
                if (u > v) std::swap(u, v);
                contributed.emplace(u, v);
            }
        outcome.edges.assign(contributed.begin(), contributed.end());
        ghat_edges.insert(contributed.begin(), contributed.end());
        if (outcome.tie_count > 1) ++report.tied_traces;
        report.per_trace.push_back(std::move(outcome));
    }

    std::vector<Edge> edge_list(ghat_edges.begin(), ghat_edges.end());
    return {Graph(n, edge_list), std::move(report)};
}

}  // namespace tracegraph
