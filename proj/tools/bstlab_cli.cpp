// Command-line laboratory: generate search sequences, run tree algorithms,
// compute lower bounds, call the exact superset solver, run the online
// combiner, draw diagrams, and tabulate exhaustive small-instance censuses.
//
// Exit codes: 0 success, 2 configuration error, 3 solver budget exhausted.

#include <bstlab/bstlab.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

struct InputFlags {
    std::string in_path;
    std::string gen_name = "uniform_random";
    int n = 16;
    int m = 64;
    std::uint64_t seed = 1;
};

void add_input_flags(CLI::App *cmd, InputFlags &f) {
    cmd->add_option("--in", f.in_path, "read the sequence from a file instead of generating");
    cmd->add_option("--gen", f.gen_name, "generator name (see 'gen --help')");
    cmd->add_option("--n", f.n, "key universe size");
    cmd->add_option("--m", f.m, "sequence length");
    cmd->add_option("--seed", f.seed, "generator seed");
}

bstlab::SearchSequence obtain_sequence(const InputFlags &f) {
    if (!f.in_path.empty()) {
        std::ifstream is(f.in_path);
        if (!is)
            throw bstlab::config_error("cannot open sequence file '" + f.in_path + "'");
        return bstlab::load_sequence(is);
    }
    const auto kind = bstlab::generator_from_name(f.gen_name);
    if (!kind)
        throw bstlab::config_error("unknown generator '" + f.gen_name + "'");
    return bstlab::generate({*kind, f.n, f.m, f.seed});
}

void write_text(const std::string &out_path, const std::string &text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path);
    if (!os)
        throw bstlab::config_error("cannot open output file '" + out_path + "'");
    os << text;
}

std::string generator_list() {
    std::ostringstream os;
    for (bstlab::GeneratorKind k : bstlab::all_generators())
        os << "  " << to_string(k) << '\n';
    return os.str();
}

std::string algorithm_list() {
    std::ostringstream os;
    for (bstlab::AlgorithmId a : bstlab::all_algorithms())
        os << "  " << to_string(a) << '\n';
    return os.str();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"bstlab: a binary-search-tree dynamic-optimality laboratory"};
    app.require_subcommand(1);

    // gen -----------------------------------------------------------------
    InputFlags gen_flags;
    std::string gen_out;
    auto *gen_cmd = app.add_subcommand("gen", "generate a search sequence\n\ngenerators:\n" +
                                                  generator_list());
    gen_cmd->add_option("--gen", gen_flags.gen_name, "generator name");
    gen_cmd->add_option("--n", gen_flags.n, "key universe size");
    gen_cmd->add_option("--m", gen_flags.m, "sequence length");
    gen_cmd->add_option("--seed", gen_flags.seed, "generator seed");
    gen_cmd->add_option("--out", gen_out, "output file (default stdout)");

    // run -----------------------------------------------------------------
    InputFlags run_flags;
    std::string run_alg = "splay", run_out, run_trace, run_config, run_out_dir = ".";
    auto *run_cmd = app.add_subcommand(
        "run", "run a tree algorithm on a sequence, or a whole experiment from --config"
               "\n\nalgorithms:\n" + algorithm_list());
    add_input_flags(run_cmd, run_flags);
    run_cmd->add_option("--alg", run_alg, "algorithm name");
    run_cmd->add_option("--out", run_out, "summary output file (default stdout)");
    run_cmd->add_option("--trace", run_trace, "also save the full trace to this file");
    run_cmd->add_option("--config", run_config, "experiment config file (key = value lines)");
    run_cmd->add_option("--out-dir", run_out_dir,
                        "output directory for --config runs (overrides the config's out_dir)");

    // bounds --------------------------------------------------------------
    InputFlags bounds_flags;
    std::string bounds_out;
    auto *bounds_cmd = app.add_subcommand("bounds", "compute the lower/upper bound report");
    add_input_flags(bounds_cmd, bounds_flags);
    bounds_cmd->add_option("--out", bounds_out, "output file (default stdout)");

    // oracle ----------------------------------------------------------------
    InputFlags oracle_flags;
    std::string oracle_out;
    bstlab::OracleLimits oracle_limits;
    auto *oracle_cmd =
        app.add_subcommand("oracle", "exact minimum arborally-satisfied superset search");
    add_input_flags(oracle_cmd, oracle_flags);
    oracle_cmd->add_option("--max-nodes", oracle_limits.max_nodes, "search node budget");
    oracle_cmd->add_option("--max-cells", oracle_limits.max_cells,
                           "largest n*m grid attempted exactly");
    oracle_cmd->add_option("--out", oracle_out, "output file (default stdout)");

    // onopt ---------------------------------------------------------------
    InputFlags onopt_flags;
    std::string onopt_out, onopt_experts;
    bstlab::OnOptConfig onopt_cfg;
    auto *onopt_cmd = app.add_subcommand("onopt", "epoch-based online combiner over a pool "
                                                  "of tree algorithms");
    add_input_flags(onopt_cmd, onopt_flags);
    onopt_cmd->add_option("--f", onopt_cfg.f, "epoch length (default: n)");
    onopt_cmd->add_option("--epsilon", onopt_cfg.epsilon, "learning rate in (0,1]");
    onopt_cmd->add_option("--wm-seed", onopt_cfg.seed, "sampler seed");
    onopt_cmd->add_option("--experts", onopt_experts,
                          "comma-separated expert pool (default splay,move_to_root,static_balanced)");
    onopt_cmd->add_option("--out", onopt_out, "output file (default stdout)");

    // svg -----------------------------------------------------------------
    InputFlags svg_flags;
    std::string svg_out;
    auto *svg_cmd = app.add_subcommand("svg", "draw the time-vs-key diagram of a sequence");
    add_input_flags(svg_cmd, svg_flags);
    svg_cmd->add_option("--out", svg_out, "output file (default stdout)");

    // census --------------------------------------------------------------
    int census_n = 3, census_m = 3;
    std::string census_out;
    bstlab::OracleLimits census_limits;
    auto *census_cmd =
        app.add_subcommand("census", "exact results for every sequence of a small shape");
    census_cmd->add_option("--n", census_n, "key universe size (at most 9)");
    census_cmd->add_option("--m", census_m, "sequence length");
    census_cmd->add_option("--max-nodes", census_limits.max_nodes, "per-instance node budget");
    census_cmd->add_option("--out", census_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (gen_cmd->parsed()) {
            const bstlab::SearchSequence x = obtain_sequence(gen_flags);
            std::ostringstream os;
            bstlab::save_sequence(os, x);
            write_text(gen_out, os.str());
            return kExitOk;
        }

        if (run_cmd->parsed()) {
            if (!run_config.empty()) {
                bstlab::ExperimentConfig cfg = bstlab::load_experiment_config(run_config);
                if (run_cmd->count("--out-dir"))
                    cfg.out_dir = run_out_dir;
                const bstlab::ExperimentResult res = bstlab::run_experiment(cfg);
                std::filesystem::create_directories(cfg.out_dir);
                const auto csv_path = std::filesystem::path(cfg.out_dir) / "summary.csv";
                const auto json_path = std::filesystem::path(cfg.out_dir) / "bounds.json";
                write_text(csv_path.string(), res.csv);
                write_text(json_path.string(), res.report.dump(2) + "\n");
                std::cout << "wrote " << csv_path.string() << " and " << json_path.string()
                          << '\n';
                return kExitOk;
            }
            const auto alg = bstlab::algorithm_from_name(run_alg);
            if (!alg)
                throw bstlab::config_error("unknown algorithm '" + run_alg + "'");
            const bstlab::SearchSequence x = obtain_sequence(run_flags);
            const bstlab::Trace tr = bstlab::run_algorithm(*alg, x);
            if (!run_trace.empty()) {
                std::ofstream ts(run_trace);
                if (!ts)
                    throw bstlab::config_error("cannot open trace file '" + run_trace + "'");
                bstlab::save_trace(ts, tr);
            }
            const nlohmann::json summary{{"algorithm", to_string(*alg)},
                                         {"n", x.n},
                                         {"m", x.length()},
                                         {"total_cost", tr.total_cost()},
                                         {"touched", tr.touched_total()}};
            write_text(run_out, summary.dump(2) + "\n");
            return kExitOk;
        }

        if (bounds_cmd->parsed()) {
            const bstlab::SearchSequence x = obtain_sequence(bounds_flags);
            const bstlab::BoundReport rep = bstlab::compute_bound_report(x);
            write_text(bounds_out, bstlab::bound_report_json(rep).dump(2) + "\n");
            return kExitOk;
        }

        if (oracle_cmd->parsed()) {
            const bstlab::SearchSequence x = obtain_sequence(oracle_flags);
            const bstlab::PointSet G = bstlab::from_sequence(x);
            const bstlab::OracleResult res = bstlab::min_ass_superset(G, oracle_limits);
            nlohmann::json added = nlohmann::json::array();
            for (const bstlab::Point &p : res.added)
                added.push_back({{"key", p.key}, {"time", p.time}});
            const nlohmann::json out{{"n", x.n},
                                     {"m", x.length()},
                                     {"min_size", res.min_size()},
                                     {"optimal", res.optimal},
                                     {"nodes_explored", res.nodes_explored},
                                     {"added", added}};
            write_text(oracle_out, out.dump(2) + "\n");
            return res.optimal ? kExitOk : kExitBudget;
        }

        if (onopt_cmd->parsed()) {
            if (!onopt_experts.empty()) {
                onopt_cfg.experts.clear();
                for (const std::string &name : bstlab::split_list(onopt_experts)) {
                    const auto a = bstlab::algorithm_from_name(name);
                    if (!a)
                        throw bstlab::config_error("unknown algorithm '" + name + "'");
                    onopt_cfg.experts.push_back(*a);
                }
            }
            const bstlab::SearchSequence x = obtain_sequence(onopt_flags);
            const bstlab::OnOptReport rep = bstlab::onopt_execute(x, onopt_cfg);
            write_text(onopt_out, bstlab::onopt_report_json(rep).dump(2) + "\n");
            return kExitOk;
        }

        if (svg_cmd->parsed()) {
            const bstlab::SearchSequence x = obtain_sequence(svg_flags);
            write_text(svg_out, bstlab::emit_sequence_svg(x));
            return kExitOk;
        }

        if (census_cmd->parsed()) {
            const auto rows = bstlab::exhaustive_small_census(census_n, census_m, census_limits);
            std::ostringstream os;
            bstlab::write_census_csv(os, rows);
            write_text(census_out, os.str());
            for (const auto &row : rows)
                if (!row.optimal)
                    return kExitBudget;
            return kExitOk;
        }
    } catch (const bstlab::config_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
