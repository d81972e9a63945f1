#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nbperc/error.hpp"
#include "nbperc/generators.hpp"
#include "nbperc/graph.hpp"
#include "nbperc/graph_ops.hpp"
#include "nbperc/pattern.hpp"
#include "nbperc/percolation.hpp"
#include "nbperc/spectral.hpp"
#include "nbperc/thresholds.hpp"

namespace nbperc::cli {

enum ExitCode : int { ok = 0, input_error = 2, numeric_error = 3, invalid_pattern = 4 };

enum class Command { analyze, generate, pattern, simulate, scu };
enum class Format { json, csv, text };

inline Format format_from_string(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "text") return Format::text;
    throw InputError("unknown output format '" + s + "' (expected json, csv or text)");
}

struct CommandConfig {
    Command command = Command::analyze;
    /// Input path; "-" reads standard input.
    std::string input = "-";
    /// Output path; empty writes to the command's output stream.
    std::string output;
    std::optional<Format> format;
    double tol = 1e-10;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::size_t copies = 8;
    /// Truncation depths for the tree-threshold estimate (generate, tree families).
    std::vector<int> depths;
    std::size_t threads = 1;
    std::size_t grid_points = 201;
    FamilySpec family;
    std::optional<Edge> scu_edge;
};

/// Thread count for simulate from NBPERC_THREADS, defaulting to 1.
inline std::size_t default_threads() {
    if (const char* s = std::getenv("NBPERC_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(s, &end, 10);
        if (end != s && *end == '\0' && v > 0) return v;
    }
    return 1;
}

namespace detail {

inline ParsedGraph read_graph(const std::string& path, std::ostream& err) {
    ParsedGraph parsed;
    if (path == "-") {
        parsed = parse_edge_list(std::cin);
    } else {
        std::ifstream in(path);
        if (!in) throw InputError("cannot open input file '" + path + "'");
        parsed = parse_edge_list(in);
    }
    if (parsed.duplicates > 0) err << "warning: " << parsed.duplicates << " duplicate edge line(s) collapsed\n";
    return parsed;
}

// Writes to the configured output file, or to `out` when none is set.
template <class Fn>
void emit(const CommandConfig& cfg, std::ostream& out, Fn&& write) {
    if (cfg.output.empty()) {
        write(out);
        return;
    }
    std::ofstream file(cfg.output);
    if (!file) throw InputError("cannot open output file '" + cfg.output + "'");
    write(file);
}

inline std::string fmt_opt(const std::optional<double>& v, const std::string& reason) {
    if (!v) return "n/a (" + reason + ")";
    std::ostringstream os;
    os << std::setprecision(10) << *v;
    return os.str();
}

inline void write_report_text(std::ostream& os, const BoundsReport& r) {
    os << std::setprecision(10);
    auto row = [&](const std::string& k, const std::string& v) { os << std::left << std::setw(26) << k << v << '\n'; };
    row("n", std::to_string(r.n));
    row("m", std::to_string(r.m));
    row("d_min / d_max", std::to_string(r.d_min) + " / " + std::to_string(r.d_max));
    row("forest", r.forest ? "yes" : "no");
    row("connected", r.connected ? "yes" : "no");
    std::ostringstream nb, adj;
    nb << std::setprecision(12) << r.nb_rho;
    adj << std::setprecision(12) << r.adjacency_rho;
    row("rho(F) non-backtracking", nb.str());
    row("rho(A) adjacency", adj.str());
    row("estimate_random", fmt_opt(r.estimate_random, r.estimate_random_reason) + "  [heuristic]");
    row("bound_maxdeg 1/(dmax-1)", fmt_opt(r.bound_maxdeg, r.bound_maxdeg_reason));
    row("bound_nb 1/rho(F)", fmt_opt(r.bound_nb, r.bound_nb_reason));
    row("bound_adjacency 1/rho(A)", fmt_opt(r.bound_adjacency, r.bound_adjacency_reason));
    if (r.bound_nb && r.bound_adjacency)
        os << "chain: p_c >= " << *r.bound_nb << " > " << *r.bound_adjacency << "  ["
           << (r.strict_chain_holds() ? "holds" : "VIOLATED") << "]\n";
    else
        os << "chain: not applicable (forest)\n";
    if (!r.converged) os << "warning: power iteration did not converge\n";
}

inline void write_report_csv(std::ostream& os, const BoundsReport& r) {
    auto j = to_json(r);
    std::vector<std::string> keys{"n",           "m",             "d_max",    "d_min",  "estimate_random",
                                  "bound_maxdeg", "bound_nb",      "bound_adjacency", "nb_rho", "adjacency_rho",
                                  "forest",       "connected",     "converged"};
    for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
    os << '\n';
    for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << (j[keys[i]].is_null() ? "" : j[keys[i]].dump());
    os << '\n';
}

} // namespace detail

inline int run_analyze(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    auto parsed = detail::read_graph(cfg.input, err);
    auto report = bounds_report(parsed.graph, cfg.tol);
    const Format f = cfg.format.value_or(Format::json);
    detail::emit(cfg, out, [&](std::ostream& os) {
        if (f == Format::text)
            detail::write_report_text(os, report);
        else if (f == Format::csv)
            detail::write_report_csv(os, report);
        else
            os << to_json(report).dump(2) << '\n';
    });
    if (!report.converged) {
        err << "error: power iteration did not converge within the iteration budget\n";
        return numeric_error;
    }
    return ok;
}

inline int run_generate(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    auto g = generate(cfg.family);
    detail::emit(cfg, out, [&](std::ostream& os) { write_edge_list(os, g); });
    err << to_string(cfg.family.family) << ": n=" << g.order() << " m=" << g.size() << '\n';
    if (!cfg.depths.empty()) {
        if (!cfg.family.is_tree_family()) throw InputError("--depths applies only to tree families");
        auto est = tree_threshold_estimate(cfg.family, cfg.depths);
        err << std::setprecision(6);
        for (auto [k, pk] : est.sequence) err << "depth " << k << ": p = " << pk << '\n';
        err << "tree threshold estimate: " << est.estimate << '\n';
    }
    return ok;
}

inline int run_pattern(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    QuotientPattern p;
    if (cfg.input == "-") {
        p = parse_pattern_json(std::cin);
    } else {
        std::ifstream in(cfg.input);
        if (!in) throw InputError("cannot open pattern file '" + cfg.input + "'");
        p = parse_pattern_json(in);
    }
    auto spec = pattern_hashimoto(p);
    nlohmann::json doc;
    doc["classes"] = p.classes();
    doc["states"] = spec.states.size();
    doc["rho"] = spec.rho;
    doc["adjacency_rho"] = pattern_adjacency_radius(p);
    double threshold = 0.0;
    try {
        threshold = pattern_threshold(p);
    } catch (const InvalidPattern& e) {
        doc["threshold"] = nullptr;
        doc["threshold_reason"] = e.what();
        detail::emit(cfg, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
        err << "error: " << e.what() << '\n';
        return invalid_pattern;
    }
    doc["threshold"] = threshold;
    const Format f = cfg.format.value_or(Format::json);
    detail::emit(cfg, out, [&](std::ostream& os) {
        if (f == Format::text)
            os << std::setprecision(12) << "rho " << spec.rho << "\nthreshold " << threshold << '\n';
        else
            os << doc.dump(2) << '\n';
    });
    return ok;
}

inline int run_simulate(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    auto parsed = detail::read_graph(cfg.input, err);
    SweepOptions opt;
    opt.threads = cfg.threads;
    opt.grid_points = cfg.grid_points;
    auto result = site_percolation_sweep(parsed.graph, cfg.trials, cfg.seed, opt);
    const Format f = cfg.format.value_or(Format::csv);
    detail::emit(cfg, out, [&](std::ostream& os) {
        if (f == Format::json) {
            nlohmann::json j;
            j["n"] = result.n;
            j["trials"] = result.trials;
            j["master_seed"] = result.master_seed;
            j["p"] = result.grid;
            j["mean_largest_fraction"] = result.canon_largest;
            j["mean_susceptibility"] = result.canon_chi;
            j["stderr_largest_fraction"] = result.canon_largest_stderr;
            j["stderr_susceptibility"] = result.canon_chi_stderr;
            os << j.dump() << '\n';
        } else {
            write_csv(os, result, true);
        }
    });
    err << std::setprecision(6);
    if (result.trials >= 10) {
        for (auto c : {ThresholdCriterion::susceptibility_peak, ThresholdCriterion::fraction_crossing}) {
            try {
                auto est = estimate_threshold(result, c);
                err << to_string(c) << ": p_hat = " << est.p_hat << " +- " << est.uncertainty << '\n';
            } catch (const Error& e) {
                err << to_string(c) << ": " << e.what() << '\n';
            }
        }
    }
    if (!is_forest(parsed.graph)) {
        auto nb = nb_spectral_radius(parsed.graph, {cfg.tol, 100000});
        err << "lower bound 1/rho(F) = " << 1.0 / nb.rho << '\n';
    }
    return ok;
}

inline int run_scu(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    auto parsed = detail::read_graph(cfg.input, err);
    const Graph& g = parsed.graph;
    Edge b;
    if (cfg.scu_edge) {
        b = *cfg.scu_edge;
    } else {
        auto bridges = find_bridges(g);
        auto it = std::find_if(g.edges().begin(), g.edges().end(),
                               [&](const Edge& e) { return !std::binary_search(bridges.begin(), bridges.end(), e); });
        if (it == g.edges().end()) throw InputError("graph has no non-bridge edge to unwrap");
        b = *it;
    }
    auto truncated = scu_truncation(g, b, cfg.copies);
    detail::emit(cfg, out, [&](std::ostream& os) { write_edge_list(os, truncated); });

    err << std::setprecision(10);
    err << "scu at edge " << b << ", copies=" << cfg.copies << ": n=" << truncated.order()
        << " m=" << truncated.size() << '\n';
    err << "rho(A) of original: " << adjacency_spectral_radius(g, cfg.tol) << '\n';
    err << "copies rho(A)\n";
    for (std::size_t k = 1; k <= cfg.copies; ++k) {
        auto gk = scu_truncation(g, b, k);
        err << k << ' ' << adjacency_spectral_radius(gk, cfg.tol) << '\n';
    }
    return ok;
}

/// Dispatches a command and maps library errors to the exit-code contract.
inline int run_command(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
        case Command::analyze: return run_analyze(cfg, out, err);
        case Command::generate: return run_generate(cfg, out, err);
        case Command::pattern: return run_pattern(cfg, out, err);
        case Command::simulate: return run_simulate(cfg, out, err);
        case Command::scu: return run_scu(cfg, out, err);
        }
    } catch (const InvalidPattern& e) {
        err << "error: " << e.what() << '\n';
        return invalid_pattern;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << '\n';
        return numeric_error;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }
    return input_error;
}

} // namespace nbperc::cli
