#pragma once

#include <sstream>
#include <stdexcept>
#include <vector>

#include "tracegraph/graph.hpp"

namespace tracegraph {

namespace detail {

inline void require_pair(const Graph& g, Vertex v1, Vertex v2, bool must_be_edge,
                         const char* who) {
    if (v1 == v2 || v1 < 0 || v2 < 0 || v1 >= g.vertex_count() || v2 >= g.vertex_count()) {
        std::ostringstream msg;
        msg << who << ": (" << v1 << ", " << v2 << ") is not a valid vertex pair";
        throw std::invalid_argument(msg.str());
    }
    if (g.has_edge(v1, v2) != must_be_edge) {
        std::ostringstream msg;
        msg << who << ": (" << v1 << ", " << v2 << ") must " << (must_be_edge ? "" : "not ")
            << "be an edge";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace detail

/// Edge predicate: some vertex neighbors exactly one endpoint.
inline bool has_unique_neighbor(const Graph& g, Vertex v1, Vertex v2) {
    detail::require_pair(g, v1, v2, true, "has_unique_neighbor");
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        if (u == v1 || u == v2) continue;
        if (g.has_edge(v1, u) != g.has_edge(v2, u)) return true;
    }
    return false;
}

/// Edge predicate: some common neighbor z of the endpoints has every
/// neighbor (other than the endpoints) adjacent to v1 or v2.
inline bool has_strong_triadic_closure(const Graph& g, Vertex v1, Vertex v2) {
    detail::require_pair(g, v1, v2, true, "has_strong_triadic_closure");
    for (Vertex z : g.neighbors(v1)) {
        if (z == v2 || !g.has_edge(v2, z)) continue;
        bool closed = true;
        for (Vertex y : g.neighbors(z)) {
            if (y == v1 || y == v2) continue;
            if (!g.has_edge(v1, y) && !g.has_edge(v2, y)) {
                closed = false;
                break;
            }
        }
        if (closed) return true;
    }
    return false;
}

/// Non-edge predicate: v1 has a neighbor that v2 lacks and vice versa.
inline bool has_distinct_neighbors(const Graph& g, Vertex v1, Vertex v2) {
    detail::require_pair(g, v1, v2, false, "has_distinct_neighbors");
    bool private1 = false, private2 = false;
    for (Vertex u : g.neighbors(v1))
        if (u != v2 && !g.has_edge(v2, u)) {
            private1 = true;
            break;
        }
    for (Vertex u : g.neighbors(v2))
        if (u != v1 && !g.has_edge(v1, u)) {
            private2 = true;
            break;
        }
    return private1 && private2;
}

/// Non-edge predicate: every common neighbor u of v1, v2 has a witness
/// neighbor x != v1, v2 that is not adjacent to both of them. Vacuously true
/// without common neighbors.
inline bool has_weak_triadic_closure(const Graph& g, Vertex v1, Vertex v2) {
    detail::require_pair(g, v1, v2, false, "has_weak_triadic_closure");
    for (Vertex u : g.neighbors(v1)) {
        if (u == v2 || !g.has_edge(v2, u)) continue;
        bool witness = false;
        for (Vertex x : g.neighbors(u)) {
            if (x == v1 || x == v2) continue;
            if (!(g.has_edge(v1, x) && g.has_edge(v2, x))) {
                witness = true;
                break;
            }
        }
        if (!witness) return false;
    }
    return true;
}

/// Per-pair record of the four predicates and the resulting prediction.
/// The edge predicates are meaningful only when in_g, the non-edge ones only
/// when !in_g; the inapplicable pair is left false.
struct PairDiagnosis {
    Vertex v1 = 0, v2 = 0;  // v1 < v2
    bool in_g = false;
    bool unique_neighbor = false;
    bool strong_triadic = false;
    bool distinct_neighbors = false;
    bool weak_triadic = false;
    bool predicted_in_ghat = false;
};

struct OraclePrediction {
    Graph predicted;
    std::vector<PairDiagnosis> diagnoses;      // all unordered pairs, lexicographic
    bool in_assumption_regime = false;         // n > 3 and |E| > 2
};

/// Predicts, from the graph alone, exactly which pairs the reconstruction
/// algorithm will output when fed the full set of size-3 traces: a present
/// edge survives iff it has a unique neighbor or strong triadic closure; an
/// absent edge is hallucinated iff it has neither distinct neighbors nor
/// weak triadic closure. Outside the regime n > 3, |E| > 2 the prediction is
/// still computed but flagged.
inline OraclePrediction theorem_oracle(const Graph& g) {
    OraclePrediction result;
    result.in_assumption_regime = g.vertex_count() > 3 && g.edge_count() > 2;
    std::vector<Edge> predicted_edges;
    const Vertex n = g.vertex_count();
    for (Vertex v1 = 0; v1 < n; ++v1)
        for (Vertex v2 = v1 + 1; v2 < n; ++v2) {
            PairDiagnosis d;
            d.v1 = v1;
            d.v2 = v2;
            d.in_g = g.has_edge(v1, v2);
            if (d.in_g) {
                d.unique_neighbor = has_unique_neighbor(g, v1, v2);
                d.strong_triadic = has_strong_triadic_closure(g, v1, v2);
                d.predicted_in_ghat = d.unique_neighbor || d.strong_triadic;
            } else {
                d.distinct_neighbors = has_distinct_neighbors(g, v1, v2);
                d.weak_triadic = has_weak_triadic_closure(g, v1, v2);
                d.predicted_in_ghat = !(d.distinct_neighbors || d.weak_triadic);
            }
            if (d.predicted_in_ghat) predicted_edges.emplace_back(v1, v2);
            result.diagnoses.push_back(d);
        }
    result.predicted = Graph(n, predicted_edges);
    return result;
}

}  // namespace tracegraph
