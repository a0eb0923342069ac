#pragma once

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "tracegraph/graph.hpp"

namespace tracegraph {

/// A trace is the vertex set of an elementary path, kept strictly increasing.
using Trace = std::vector<Vertex>;

/// Deduplicated collection of traces over vertices 0..n-1. k is the common
/// trace size, or 0 when sizes are heterogeneous.
struct TraceSet {
    int k = 0;
    Vertex n = 0;
    std::vector<Trace> traces;  // each strictly increasing; sorted, unique

    std::size_t size() const noexcept { return traces.size(); }
    bool contains(const Trace& t) const {
        return std::binary_search(traces.begin(), traces.end(), t);
    }
};

/// Canonicalizes raw traces into a TraceSet: sorts each trace, rejects
/// duplicate vertices within a trace, traces shorter than 2, and vertex ids
/// outside 0..n-1; identical traces collapse to one.
inline TraceSet make_trace_set(Vertex n, std::vector<Trace> raw) {
    TraceSet ts;
    ts.n = n;
    for (auto& t : raw) {
        if (t.size() < 2) {
            throw std::invalid_argument("trace: fewer than 2 vertices");
        }
        std::sort(t.begin(), t.end());
        if (std::adjacent_find(t.begin(), t.end()) != t.end()) {
            std::ostringstream msg;
            msg << "trace: repeated vertex " << *std::adjacent_find(t.begin(), t.end());
            throw std::invalid_argument(msg.str());
        }
        if (t.front() < 0 || t.back() >= n) {
            std::ostringstream msg;
            msg << "trace: vertex " << (t.front() < 0 ? t.front() : t.back())
                << " outside 0.." << n - 1;
            throw std::invalid_argument(msg.str());
        }
    }
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    ts.traces = std::move(raw);
    ts.k = ts.traces.empty() ? 0 : static_cast<int>(ts.traces.front().size());
    for (const auto& t : ts.traces)
        if (static_cast<int>(t.size()) != ts.k) {
            ts.k = 0;
            break;
        }
    return ts;
}

/// All elementary paths on k vertices, as vertex sequences with consecutive
/// pairs adjacent in g. Each path appears once: its reversal is suppressed by
/// requiring first endpoint < last endpoint.
inline std::vector<std::vector<Vertex>> enumerate_paths(const Graph& g, int k) {
    if (k < 2) throw std::invalid_argument("enumerate_paths: k must be >= 2");
    std::vector<std::vector<Vertex>> out;
    const Vertex n = g.vertex_count();
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> path;
    path.reserve(static_cast<std::size_t>(k));

    auto dfs = [&](auto&& self, Vertex v) -> void {
        visited[static_cast<std::size_t>(v)] = 1;
        path.push_back(v);
        if (static_cast<int>(path.size()) == k) {
            if (path.front() < path.back()) out.push_back(path);
        } else {
            for (Vertex w : g.neighbors(v))
                if (!visited[static_cast<std::size_t>(w)]) self(self, w);
        }
        path.pop_back();
        visited[static_cast<std::size_t>(v)] = 0;
    };

    for (Vertex s = 0; s < n; ++s) dfs(dfs, s);
    return out;
}

/// T_k(g): the deduplicated vertex sets of all k-vertex elementary paths.
inline TraceSet trace_set(const Graph& g, int k) {
    std::vector<Trace> raw;
    for (auto& p : enumerate_paths(g, k)) {
        std::sort(p.begin(), p.end());
        raw.push_back(std::move(p));
    }
    TraceSet ts = make_trace_set(g.vertex_count(), std::move(raw));
    if (ts.traces.empty()) ts.k = k;  // an empty T_k still has a definite k
    return ts;
}

struct Lemma1Result {
    bool ok = true;
    std::vector<Trace> violations;
};

/// For size-3 traces: however the three vertices are labeled v1, v2, v3, at
/// least one of (v1,v2), (v1,v3) must be an edge. Equivalent to "at most one
/// of the three pairs is a non-edge".
inline Lemma1Result check_lemma1(const TraceSet& ts, const Graph& g) {
    if (ts.k != 3) throw std::invalid_argument("check_lemma1: trace set must have k = 3");
    Lemma1Result result;
    for (const auto& t : ts.traces) {
        const int non_edges = !g.has_edge(t[0], t[1]) + !g.has_edge(t[0], t[2]) +
                              !g.has_edge(t[1], t[2]);
        if (non_edges > 1) {
            result.ok = false;
            result.violations.push_back(t);
        }
    }
    return result;
}

}  // namespace tracegraph
