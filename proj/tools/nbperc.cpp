// nbperc: percolation threshold bounds from non-backtracking spectra.

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nbperc/cli.hpp"

namespace {

nbperc::Edge parse_edge_flag(const std::string& s) {
    std::string t = s;
    for (char& c : t)
        if (c == ',') c = ' ';
    std::istringstream in(t);
    nbperc::Vertex u = 0, v = 0;
    if (!(in >> u >> v)) throw nbperc::InputError("--edge expects 'u,v', got '" + s + "'");
    return {u, v};
}

} // namespace

int main(int argc, char** argv) {
    using namespace nbperc::cli;
    CommandConfig cfg;
    cfg.threads = default_threads();
    std::string format;
    std::string family = "cycle";
    std::string edge;
    std::uint64_t family_seed = 1;

    CLI::App app{"Site-percolation threshold bounds via the non-backtracking (Hashimoto) spectrum"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-o,--output", cfg.output, "Output file (default: standard output)");
        sub->add_option("--format", format, "Output format: json, csv or text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--tol", cfg.tol, "Power-iteration tolerance")->check(CLI::PositiveNumber);
    };

    auto* analyze = app.add_subcommand("analyze", "Bound chain for an edge-list graph");
    analyze->add_option("input", cfg.input, "Edge-list file, '-' for stdin")->required();
    add_common(analyze);

    auto* generate = app.add_subcommand("generate", "Write a graph family as an edge list");
    generate->add_option("--family", family,
                         "regular_tree | chain_tree | cycle | complete | path | random_regular | binomial_random")
        ->required();
    generate->add_option("--d", cfg.family.d, "Degree / backbone degree");
    generate->add_option("--r", cfg.family.r, "Chains per backbone vertex (chain_tree)");
    generate->add_option("--L", cfg.family.L, "Chain length (chain_tree)");
    generate->add_option("--depth", cfg.family.depth, "Backbone generations (tree families)");
    generate->add_option("--n", cfg.family.n, "Vertex count");
    generate->add_option("--p", cfg.family.edge_probability, "Edge probability (binomial_random)");
    generate->add_option("--mean-degree", "Mean degree c; sets p = c / (n - 1) (binomial_random)");
    generate->add_option("--seed", family_seed, "Random seed");
    generate->add_option("--depths", cfg.depths, "Depths for the tree-recursion threshold estimate, e.g. 6,8,10")
        ->delimiter(',');
    add_common(generate);

    auto* pattern = app.add_subcommand("pattern", "Threshold of a quotient-pattern tree");
    pattern->add_option("input", cfg.input, "Pattern JSON file, '-' for stdin")->required();
    add_common(pattern);

    auto* simulate = app.add_subcommand("simulate", "Newman-Ziff site percolation sweep");
    simulate->add_option("input", cfg.input, "Edge-list file, '-' for stdin")->required();
    simulate->add_option("--trials", cfg.trials, "Independent sweeps")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", cfg.seed, "Master seed");
    simulate->add_option("--grid", cfg.grid_points, "Points of the canonical p-grid")->check(CLI::Range(2, 100000));
    simulate->add_option("--threads", cfg.threads, "Worker threads (default: $NBPERC_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    add_common(simulate);

    auto* scu = app.add_subcommand("scu", "Finite single-cycle unwrapping at a non-bridge edge");
    scu->add_option("input", cfg.input, "Edge-list file, '-' for stdin")->required();
    scu->add_option("--copies", cfg.copies, "Copies in the truncation")->check(CLI::PositiveNumber);
    scu->add_option("--edge", edge, "Edge to unwrap as 'u,v' (default: first non-bridge edge)");
    add_common(scu);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : input_error;
    }

    try {
        if (!format.empty()) cfg.format = format_from_string(format);
        if (*analyze) cfg.command = Command::analyze;
        if (*pattern) cfg.command = Command::pattern;
        if (*simulate) cfg.command = Command::simulate;
        if (*scu) {
            cfg.command = Command::scu;
            if (!edge.empty()) cfg.scu_edge = parse_edge_flag(edge);
        }
        if (*generate) {
            cfg.command = Command::generate;
            cfg.family.family = nbperc::family_from_string(family);
            if (auto* opt = generate->get_option("--mean-degree"); opt->count() > 0) {
                double c = opt->as<double>();
                if (cfg.family.n < 2) throw nbperc::InputError("--mean-degree needs --n >= 2");
                cfg.family.edge_probability = c / static_cast<double>(cfg.family.n - 1);
            }
            if (cfg.family.family == nbperc::Family::random_regular ||
                cfg.family.family == nbperc::Family::binomial_random)
                cfg.family.seed = family_seed;
        }
    } catch (const nbperc::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return input_error;
    }
    return run_command(cfg, std::cout, std::cerr);
}
