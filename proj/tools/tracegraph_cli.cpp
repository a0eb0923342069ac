// Command-line front end: generate graphs and trace files, reconstruct,
// compare against the structural prediction, and run the Monte Carlo sweeps.
//
// Exit codes: 0 success/agreement, 1 usage error, 2 I/O or input data error,
// 3 verification mismatch.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tracegraph/er_theory.hpp"
#include "tracegraph/experiment.hpp"
#include "tracegraph/graph.hpp"
#include "tracegraph/io.hpp"
#include "tracegraph/reconstruct.hpp"
#include "tracegraph/structure.hpp"
#include "tracegraph/trace.hpp"

namespace fs = std::filesystem;
using namespace tracegraph;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_io = 2;
constexpr int exit_mismatch = 3;

// Content is fully materialized before the file is opened, so a failed run
// leaves no partial output behind.
void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
        std::error_code ec;
        fs::remove(path, ec);
        throw ParseError("failed while writing " + path.string());
    }
}

void print_edges(std::ostream& os, const std::vector<Edge>& edges) {
    for (auto [u, v] : edges) os << " (" << u << "," << v << ")";
}

struct GenGraphArgs {
    std::string model;
    Vertex n = 0;
    double p = -1.0;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int cmd_gen_graph(const GenGraphArgs& a) {
    Graph g;
    if (a.model == "er") {
        if (a.p < 0.0) {
            std::cerr << "gen-graph: --p is required for --model er\n";
            return exit_usage;
        }
        if (!a.seed) {
            std::cerr << "gen-graph: --seed is required for --model er\n";
            return exit_usage;
        }
        g = sample_er(a.n, a.p, *a.seed);
    } else {
        GraphFamily family;
        if (a.model == "path") family = GraphFamily::path;
        else if (a.model == "cycle") family = GraphFamily::cycle;
        else if (a.model == "complete") family = GraphFamily::complete;
        else if (a.model == "star") family = GraphFamily::star;
        else family = GraphFamily::complete_minus_edge;
        g = make_named(family, a.n);
    }
    std::ostringstream content;
    write_graph(content, g);
    write_file(a.out, content.str());
    return exit_ok;
}

struct GenTracesArgs {
    std::string graph_file;
    int k = 3;
    std::string out;
};

int cmd_gen_traces(const GenTracesArgs& a) {
    const LabeledGraph lg = read_graph_file(a.graph_file);
    const TraceSet ts = trace_set(lg.graph, a.k);
    std::ostringstream content;
    write_traces(content, ts);
    write_file(a.out, content.str());
    std::cout << ts.size() << " traces of size " << a.k << " from " << a.graph_file << "\n";
    return exit_ok;
}

struct ReconstructArgs {
    std::string traces_file;
    std::optional<Vertex> n;
    std::string out;
    std::string report_file;
    int max_trace_size = 10;
};

int cmd_reconstruct(const ReconstructArgs& a) {
    const LabeledTraceSet lts = read_traces_file(a.traces_file, a.n);
    ReconstructOptions opt;
    opt.max_trace_size = a.max_trace_size;
    const auto [ghat, report] = reconstruct(lts.traces, lts.traces.n, opt);

    std::ostringstream content;
    bool identity = true;
    for (std::size_t i = 0; i < lts.labels.size(); ++i)
        identity = identity && lts.labels[i] == static_cast<std::int64_t>(i);
    if (identity) write_graph(content, ghat);
    else write_graph(content, ghat, lts.labels);
    write_file(a.out, content.str());

    if (!a.report_file.empty()) {
        std::ostringstream rep;
        write_report(rep, report);
        write_file(a.report_file, rep.str());
    }
    std::cout << "reconstructed " << ghat.edge_count() << " edges from " << lts.traces.size()
              << " traces (" << report.tied_traces << " with ties)\n";
    return exit_ok;
}

struct OracleArgs {
    std::string graph_file;
    std::string out;
    std::string diagnosis_file;
};

int cmd_oracle(const OracleArgs& a) {
    const LabeledGraph lg = read_graph_file(a.graph_file);
    const OraclePrediction pred = theorem_oracle(lg.graph);
    if (!pred.in_assumption_regime)
        std::cerr << "warning: graph outside the n > 3, |E| > 2 regime; prediction is "
                     "best-effort\n";
    std::ostringstream content;
    write_graph(content, pred.predicted);
    write_file(a.out, content.str());
    if (!a.diagnosis_file.empty()) {
        std::ostringstream diag;
        write_diagnosis_csv(diag, pred.diagnoses);
        write_file(a.diagnosis_file, diag.str());
    }
    return exit_ok;
}

int cmd_verify(const std::string& graph_file) {
    const LabeledGraph lg = read_graph_file(graph_file);
    const auto [ghat, report] = reconstruct(trace_set(lg.graph, 3), lg.graph.vertex_count());
    const OraclePrediction pred = theorem_oracle(lg.graph);
    if (ghat == pred.predicted) {
        const EdgeDiff vs_truth = edge_diff(lg.graph, ghat);
        std::cout << "agreement: algorithm and prediction match (" << ghat.edge_count()
                  << " edges; vs truth: " << vs_truth.missed.size() << " missed, "
                  << vs_truth.false_alarms.size() << " false alarms)\n";
        return exit_ok;
    }
    EdgeDiff diff = edge_diff(pred.predicted, ghat);
    std::cout << "mismatch: algorithm-only edges:";
    print_edges(std::cout, diff.false_alarms);
    std::cout << "; prediction-only edges:";
    print_edges(std::cout, diff.missed);
    std::cout << "\n";
    return exit_mismatch;
}

struct ErCurveArgs {
    std::vector<int> n_values;
    std::vector<double> p_values;
    int trials = 50;
    std::uint64_t seed = 0;
    std::string out;
    int jobs = 1;
};

int cmd_er_curve(const ErCurveArgs& a) {
    SweepOptions opt;
    opt.jobs = a.jobs;
    const auto rows = sweep(a.n_values, a.p_values, a.trials, a.seed, opt);
    std::ostringstream content;
    write_sweep_csv(content, rows);
    write_file(a.out, content.str());
    std::cout << rows.size() << " grid cells x " << a.trials << " trials -> " << a.out << "\n";
    return exit_ok;
}

struct ScanArgs {
    std::string mode;
    Vertex n_min = 7, n_max = 12;
    double p_min = 0.1, p_max = 0.9;
    int samples = 10000;
    std::optional<std::uint64_t> seed;
};

void print_scan_cases(const char* label, std::int64_t count, const std::vector<ScanCase>& cases) {
    std::cout << label << ": " << count << "\n";
    for (const auto& c : cases) {
        std::cout << "  n=" << c.n << " edges:";
        print_edges(std::cout, c.graph_edges);
        std::cout << " | algorithm-only:";
        print_edges(std::cout, c.algo_only);
        std::cout << " | prediction-only:";
        print_edges(std::cout, c.oracle_only);
        std::cout << "\n";
    }
}

int cmd_scan(const ScanArgs& a) {
    ScanReport report;
    if (a.mode == "exhaustive-n5") {
        report = oracle_equivalence_scan_exhaustive(5);
    } else if (a.mode == "exhaustive-n6") {
        report = oracle_equivalence_scan_exhaustive(6);
    } else {
        if (!a.seed) {
            std::cerr << "scan: --seed is required for --mode random\n";
            return exit_usage;
        }
        report = oracle_equivalence_scan_random(a.n_min, a.n_max, a.p_min, a.p_max, a.samples,
                                                *a.seed);
    }
    std::cout << "graphs: " << report.graphs_seen << ", in regime (n > 3, |E| > 2): "
              << report.in_regime << "\n";
    print_scan_cases("in-regime counterexamples", report.counterexample_count,
                     report.counterexamples);
    print_scan_cases("boundary-regime differences (informational)", report.boundary_diff_count,
                     report.boundary_diffs);
    return report.clean() ? exit_ok : exit_mismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph reconstruction from unordered path traces"};
    app.require_subcommand(1);

    GenGraphArgs gg;
    auto* gen_graph = app.add_subcommand("gen-graph", "write a graph as an edge-list file");
    gen_graph->add_option("--model", gg.model, "graph family")
        ->required()
        ->check(CLI::IsMember({"er", "path", "cycle", "complete", "star",
                               "complete-minus-edge"}));
    gen_graph->add_option("--n", gg.n, "vertex count")->required()->check(CLI::NonNegativeNumber);
    gen_graph->add_option("--p", gg.p, "edge probability (er)")->check(CLI::Range(0.0, 1.0));
    gen_graph->add_option("--seed", gg.seed, "RNG seed (er)");
    gen_graph->add_option("--out", gg.out, "output file")->required();

    GenTracesArgs gt;
    auto* gen_traces = app.add_subcommand("gen-traces", "enumerate the trace set of a graph");
    gen_traces->add_option("--graph", gt.graph_file, "edge-list input")->required();
    gen_traces->add_option("--k", gt.k, "trace size (default 3)")->check(CLI::Range(2, 64));
    gen_traces->add_option("--out", gt.out, "output trace file")->required();

    ReconstructArgs rc;
    auto* recon = app.add_subcommand("reconstruct", "reconstruct a graph from a trace file");
    recon->add_option("--traces", rc.traces_file, "trace file input")->required();
    recon->add_option("--n", rc.n, "vertex count override (else file header or label count)");
    recon->add_option("--out", rc.out, "output edge-list file")->required();
    recon->add_option("--report", rc.report_file, "per-trace ordering report");
    recon->add_option("--max-trace-size", rc.max_trace_size,
                      "largest trace to order exhaustively (default 10)")
        ->check(CLI::Range(2, 20));

    OracleArgs oc;
    auto* oracle = app.add_subcommand("oracle",
                                      "predict the reconstruction from the graph structure");
    oracle->add_option("--graph", oc.graph_file, "edge-list input")->required();
    oracle->add_option("--out", oc.out, "predicted edge-list output")->required();
    oracle->add_option("--diagnosis", oc.diagnosis_file, "per-pair predicate CSV");

    std::string verify_graph;
    auto* verify = app.add_subcommand("verify",
                                      "check the algorithm against the structural prediction");
    verify->add_option("--graph", verify_graph, "edge-list input")->required();

    ErCurveArgs ec;
    auto* er_curve = app.add_subcommand("er-curve", "theory-vs-empirical error-rate sweep");
    er_curve->add_option("--n-list", ec.n_values, "vertex counts")->required()->delimiter(',');
    er_curve->add_option("--p-list", ec.p_values, "edge probabilities")
        ->required()
        ->delimiter(',');
    er_curve->add_option("--trials", ec.trials, "trials per cell")->check(CLI::PositiveNumber);
    er_curve->add_option("--seed", ec.seed, "master seed")->required();
    er_curve->add_option("--out", ec.out, "output CSV")->required();
    er_curve->add_option("--jobs", ec.jobs, "worker threads")->check(CLI::PositiveNumber);

    ScanArgs sc;
    auto* scan = app.add_subcommand("scan", "algorithm-vs-prediction equivalence scan");
    scan->add_option("--mode", sc.mode, "exhaustive-n5 | exhaustive-n6 | random")
        ->required()
        ->check(CLI::IsMember({"exhaustive-n5", "exhaustive-n6", "random"}));
    scan->add_option("--n-min", sc.n_min)->check(CLI::Range(2, 64));
    scan->add_option("--n-max", sc.n_max)->check(CLI::Range(2, 64));
    scan->add_option("--p-min", sc.p_min)->check(CLI::Range(0.0, 1.0));
    scan->add_option("--p-max", sc.p_max)->check(CLI::Range(0.0, 1.0));
    scan->add_option("--samples", sc.samples)->check(CLI::PositiveNumber);
    scan->add_option("--seed", sc.seed, "RNG seed (random mode)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (gen_graph->parsed()) return cmd_gen_graph(gg);
        if (gen_traces->parsed()) return cmd_gen_traces(gt);
        if (recon->parsed()) return cmd_reconstruct(rc);
        if (oracle->parsed()) return cmd_oracle(oc);
        if (verify->parsed()) return cmd_verify(verify_graph);
        if (er_curve->parsed()) return cmd_er_curve(ec);
        if (scan->parsed()) return cmd_scan(sc);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io;
    }
    return exit_usage;
}
