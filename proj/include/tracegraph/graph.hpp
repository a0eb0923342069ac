#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace tracegraph {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;  // canonical form has first < second

namespace detail {

inline std::uint64_t edge_key(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

// Fixed-point mixer (splitmix64 finalizer). Used wherever we need a stable,
// platform-independent hash of small integers.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Maps a 64-bit draw to [0, 1). (2^53 - 1) / 2^53 is the largest result, so
// comparing against p == 1.0 accepts every draw.
inline double to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Immutable undirected simple graph on vertices 0..n-1.
class Graph {
public:
    Graph() = default;

    Graph(Vertex n, std::span<const Edge> edge_list) { build(n, edge_list); }

    Graph(Vertex n, std::initializer_list<Edge> edge_list) {
        build(n, std::span<const Edge>(edge_list.begin(), edge_list.size()));
    }

    Vertex vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    bool has_edge(Vertex u, Vertex v) const noexcept {
        if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) return false;
        return keys_.count(detail::edge_key(u, v)) != 0;
    }

    std::span<const Vertex> neighbors(Vertex v) const {
        check_vertex(v);
        return adj_[static_cast<std::size_t>(v)];
    }

    Vertex degree(Vertex v) const {
        check_vertex(v);
        return static_cast<Vertex>(adj_[static_cast<std::size_t>(v)].size());
    }

    /// Edges in canonical form (u < v), sorted lexicographically.
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    void build(Vertex n, std::span<const Edge> edge_list) {
        if (n < 0) throw std::invalid_argument("graph: vertex count must be nonnegative");
        n_ = n;
        adj_.assign(static_cast<std::size_t>(n), {});
        edges_.reserve(edge_list.size());
        for (auto [u, v] : edge_list) {
            if (u == v) {
                std::ostringstream msg;
                msg << "graph: self-loop (" << u << ", " << v << ") is not allowed";
                throw std::invalid_argument(msg.str());
            }
            if (u < 0 || v < 0 || u >= n || v >= n) {
                std::ostringstream msg;
                msg << "graph: edge (" << u << ", " << v << ") has an endpoint outside 0.."
                    << n - 1;
                throw std::invalid_argument(msg.str());
            }
            if (u > v) std::swap(u, v);
            if (keys_.insert(detail::edge_key(u, v)).second) {
                edges_.emplace_back(u, v);
                adj_[static_cast<std::size_t>(u)].push_back(v);
                adj_[static_cast<std::size_t>(v)].push_back(u);
            }
        }
        std::sort(edges_.begin(), edges_.end());
        for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
    }

    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n_) {
            std::ostringstream msg;
            msg << "graph: vertex " << v << " outside 0.." << n_ - 1;
            throw std::invalid_argument(msg.str());
        }
    }

    Vertex n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
    std::unordered_set<std::uint64_t> keys_;
};

inline Graph make_graph(Vertex n, std::span<const Edge> edges) { return Graph(n, edges); }

inline Graph make_graph(Vertex n, std::initializer_list<Edge> edges) { return Graph(n, edges); }

enum class GraphFamily { path, cycle, complete, star, complete_minus_edge };

inline const char* family_name(GraphFamily f) {
    switch (f) {
        case GraphFamily::path: return "path";
        case GraphFamily::cycle: return "cycle";
        case GraphFamily::complete: return "complete";
        case GraphFamily::star: return "star";
        case GraphFamily::complete_minus_edge: return "complete-minus-edge";
    }
    return "?";
}

/// Named graph families. Minimum sizes: path/complete/star/complete-minus-edge
/// need n >= 2, cycle needs n >= 3.
inline Graph make_named(GraphFamily family, Vertex n) {
    const Vertex min_n = family == GraphFamily::cycle ? 3 : 2;
    if (n < min_n) {
        std::ostringstream msg;
        msg << "make_named: " << family_name(family) << " requires n >= " << min_n
            << ", got " << n;
        throw std::invalid_argument(msg.str());
    }
    std::vector<Edge> edges;
    switch (family) {
        case GraphFamily::path:
            for (Vertex u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
            break;
        case GraphFamily::cycle:
            for (Vertex u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
            edges.emplace_back(0, n - 1);
            break;
        case GraphFamily::complete:
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
            break;
        case GraphFamily::star:
            for (Vertex v = 1; v < n; ++v) edges.emplace_back(0, v);
            break;
        case GraphFamily::complete_minus_edge:
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v)
                    if (!(u == 0 && v == 1)) edges.emplace_back(u, v);
            break;
    }
    return Graph(n, edges);
}

inline Graph make_path(Vertex n) { return make_named(GraphFamily::path, n); }
inline Graph make_cycle(Vertex n) { return make_named(GraphFamily::cycle, n); }
inline Graph make_complete(Vertex n) { return make_named(GraphFamily::complete, n); }
inline Graph make_star(Vertex n) { return make_named(GraphFamily::star, n); }

/// G(n, p) sample. Pairs are visited in lexicographic order and one RNG draw
/// is spent per pair, so the edge set is a pure function of (n, p, seed).
inline Graph sample_er(Vertex n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream msg;
        msg << "sample_er: p must lie in [0, 1], got " << p;
        throw std::invalid_argument(msg.str());
    }
    if (n < 0) throw std::invalid_argument("sample_er: n must be nonnegative");
    std::mt19937_64 rng(seed);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (detail::to_unit(rng()) < p) edges.emplace_back(u, v);
    return Graph(n, edges);
}

/// Edge-set difference between a ground truth graph and an estimate.
struct EdgeDiff {
    std::vector<Edge> missed;        // in truth, not in estimate
    std::vector<Edge> false_alarms;  // in estimate, not in truth

    bool empty() const noexcept { return missed.empty() && false_alarms.empty(); }
};

inline EdgeDiff edge_diff(const Graph& truth, const Graph& estimate) {
    if (truth.vertex_count() != estimate.vertex_count()) {
        std::ostringstream msg;
        msg << "edge_diff: vertex counts differ (" << truth.vertex_count() << " vs "
            << estimate.vertex_count() << ")";
        throw std::invalid_argument(msg.str());
    }
    EdgeDiff diff;
    for (auto [u, v] : truth.edges())
        if (!estimate.has_edge(u, v)) diff.missed.emplace_back(u, v);
    for (auto [u, v] : estimate.edges())
        if (!truth.has_edge(u, v)) diff.false_alarms.emplace_back(u, v);
    return diff;
}

}  // namespace tracegraph
