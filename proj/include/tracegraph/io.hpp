#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracegraph/graph.hpp"
#include "tracegraph/reconstruct.hpp"
#include "tracegraph/structure.hpp"
#include "tracegraph/trace.hpp"

namespace tracegraph {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Graph plus the external labels its compact ids came from: labels[id] is
/// the label that appeared in the file. Identity when the file declared its
/// vertex count (labels are then required to be direct ids).
struct LabeledGraph {
    Graph graph;
    std::vector<std::int64_t> labels;
};

struct LabeledTraceSet {
    TraceSet traces;
    std::vector<std::int64_t> labels;
};

namespace detail {

struct RawLine {
    std::size_t lineno = 0;
    std::vector<std::int64_t> values;
};

[[noreturn]] inline void fail(const std::string& name, std::size_t lineno,
                              const std::string& what) {
    std::ostringstream msg;
    msg << name << ":" << lineno << ": " << what;
    throw ParseError(msg.str());
}

// Shared line-level format: '#' comments, optional leading "n <N>" header,
// then whitespace-separated nonnegative integer labels.
inline std::pair<std::optional<Vertex>, std::vector<RawLine>> read_label_lines(
    std::istream& in, const std::string& name) {
    std::optional<Vertex> declared;
    std::vector<RawLine> lines;
    std::string line;
    std::size_t lineno = 0;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        std::string tok;
        if (!(fields >> tok)) continue;  // blank
        if (first_data_line && tok == "n") {
            long long n = -1;
            if (!(fields >> n) || n < 0) fail(name, lineno, "malformed 'n <N>' header");
            std::string extra;
            if (fields >> extra) fail(name, lineno, "trailing content after 'n <N>' header");
            declared = static_cast<Vertex>(n);
            first_data_line = false;
            continue;
        }
        first_data_line = false;
        RawLine raw;
        raw.lineno = lineno;
        fields.clear();
        fields.str(line);
        std::int64_t v;
        while (fields >> v) {
            if (v < 0) fail(name, lineno, "negative vertex label");
            raw.values.push_back(v);
        }
        if (!fields.eof()) fail(name, lineno, "non-integer vertex label");
        lines.push_back(std::move(raw));
    }
    return {declared, std::move(lines)};
}

// Resolves file labels to compact ids. With a declared vertex count the
// labels must already be ids below it; otherwise distinct labels are
// compacted in sorted order and the map is returned for writing back.
struct LabelResolution {
    Vertex n = 0;
    std::vector<std::int64_t> labels;
    std::map<std::int64_t, Vertex> to_id;

    Vertex resolve(std::int64_t label, const std::string& name, std::size_t lineno) const {
        if (auto it = to_id.find(label); it != to_id.end()) return it->second;
        std::ostringstream msg;
        msg << "vertex label " << label << " out of range for declared n " << n;
        fail(name, lineno, msg.str());
    }
};

inline LabelResolution resolve_labels(std::optional<Vertex> declared,
                                      const std::vector<RawLine>& lines,
                                      std::optional<Vertex> n_override,
                                      const std::string& name) {
    if (declared && n_override && *declared != *n_override) {
        std::ostringstream msg;
        msg << name << ": declared header n " << *declared << " conflicts with requested n "
            << *n_override;
        throw ParseError(msg.str());
    }
    LabelResolution res;
    if (declared || n_override) {
        res.n = declared ? *declared : *n_override;
        res.labels.resize(static_cast<std::size_t>(res.n));
        for (Vertex i = 0; i < res.n; ++i) {
            res.labels[static_cast<std::size_t>(i)] = i;
            res.to_id.emplace(i, i);
        }
        return res;
    }
    std::map<std::int64_t, Vertex> ids;
    for (const auto& raw : lines)
        for (auto v : raw.values) ids.emplace(v, 0);
    Vertex next = 0;
    for (auto& [label, id] : ids) {
        id = next++;
        res.labels.push_back(label);
    }
    res.n = next;
    res.to_id = std::move(ids);
    return res;
}

inline void write_float(std::ostream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    os << buf;
}

}  // namespace detail

/// Edge-list reader. Lines hold two labels; '#' starts a comment; an optional
/// first line "n <N>" fixes the vertex count so isolated vertices survive.
inline LabeledGraph read_graph(std::istream& in, const std::string& name = "<stream>",
                               std::optional<Vertex> n_override = {}) {
    auto [declared, lines] = detail::read_label_lines(in, name);
    auto res = detail::resolve_labels(declared, lines, n_override, name);
    std::vector<Edge> edges;
    for (const auto& raw : lines) {
        if (raw.values.size() != 2)
            detail::fail(name, raw.lineno, "expected exactly two vertex labels");
        if (raw.values[0] == raw.values[1]) {
            std::ostringstream msg;
            msg << "self-loop (" << raw.values[0] << ", " << raw.values[1] << ")";
            detail::fail(name, raw.lineno, msg.str());
        }
        edges.emplace_back(res.resolve(raw.values[0], name, raw.lineno),
                           res.resolve(raw.values[1], name, raw.lineno));
    }
    return {Graph(res.n, edges), std::move(res.labels)};
}

/// Writer counterpart: "n <N>" header, then canonical edges sorted
/// lexicographically. With an explicit label map the header is replaced by a
/// comment (labeled files carry no vertex count).
inline void write_graph(std::ostream& os, const Graph& g,
                        std::span<const std::int64_t> labels = {}) {
    if (labels.empty()) {
        os << "n " << g.vertex_count() << "\n";
        for (auto [u, v] : g.edges()) os << u << " " << v << "\n";
        return;
    }
    if (static_cast<Vertex>(labels.size()) != g.vertex_count())
        throw std::invalid_argument("write_graph: label map size does not match vertex count");
    os << "# " << g.vertex_count() << " vertices, labeled\n";
    for (auto [u, v] : g.edges())
        os << labels[static_cast<std::size_t>(u)] << " " << labels[static_cast<std::size_t>(v)]
           << "\n";
}

/// Trace file reader: one trace per line, each a set of >= 2 distinct labels.
inline LabeledTraceSet read_traces(std::istream& in, const std::string& name = "<stream>",
                                   std::optional<Vertex> n_override = {}) {
    auto [declared, lines] = detail::read_label_lines(in, name);
    auto res = detail::resolve_labels(declared, lines, n_override, name);
    std::vector<Trace> raw_traces;
    for (const auto& raw : lines) {
        if (raw.values.size() < 2)
            detail::fail(name, raw.lineno, "trace needs at least 2 vertices");
        Trace t;
        for (auto v : raw.values) t.push_back(res.resolve(v, name, raw.lineno));
        std::sort(t.begin(), t.end());
        if (std::adjacent_find(t.begin(), t.end()) != t.end())
            detail::fail(name, raw.lineno, "repeated vertex within a trace");
        raw_traces.push_back(std::move(t));
    }
    return {make_trace_set(res.n, std::move(raw_traces)), std::move(res.labels)};
}

inline void write_traces(std::ostream& os, const TraceSet& ts) {
    os << "n " << ts.n << "\n";
    for (const auto& t : ts.traces) {
        for (std::size_t i = 0; i < t.size(); ++i) os << (i ? " " : "") << t[i];
        os << "\n";
    }
}

/// Reconstruction report: one line per trace with its winning weight and the
/// number of tied maximum-weight orderings.
inline void write_report(std::ostream& os, const ReconstructionReport& report) {
    os << "# trace | max_weight | ties\n";
    for (const auto& o : report.per_trace) {
        for (std::size_t i = 0; i < o.trace.size(); ++i) os << (i ? " " : "") << o.trace[i];
        os << " | " << o.max_weight << " | " << o.tie_count << "\n";
    }
    os << "# tied traces: " << report.tied_traces << "\n";
}

inline void write_diagnosis_csv(std::ostream& os, std::span<const PairDiagnosis> diagnoses) {
    os << "v1,v2,in_g,unique_neighbor,strong_triadic,distinct_neighbors,weak_triadic,"
          "predicted_in_ghat\n";
    for (const auto& d : diagnoses) {
        os << d.v1 << "," << d.v2 << "," << int(d.in_g) << "," << int(d.unique_neighbor) << ","
           << int(d.strong_triadic) << "," << int(d.distinct_neighbors) << ","
           << int(d.weak_triadic) << "," << int(d.predicted_in_ghat) << "\n";
    }
}

inline LabeledGraph read_graph_file(const std::filesystem::path& path,
                                    std::optional<Vertex> n_override = {}) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return read_graph(in, path.string(), n_override);
}

inline LabeledTraceSet read_traces_file(const std::filesystem::path& path,
                                        std::optional<Vertex> n_override = {}) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return read_traces(in, path.string(), n_override);
}

}  // namespace tracegraph
