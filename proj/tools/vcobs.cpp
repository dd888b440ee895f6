#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vcobs/canon.hpp"
#include "vcobs/errors.hpp"
#include "vcobs/graph.hpp"
#include "vcobs/obstruction.hpp"
#include "vcobs/s2v.hpp"
#include "vcobs/train_eval.hpp"
#include "vcobs/vc_solvers.hpp"

namespace fs = std::filesystem;
using namespace vcobs;

namespace {

// exit codes: 0 ok, 1 internal error, 2 input error, 3 budget exceeded
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw StructuralError("cannot write file: " + path.string());
    out << content;
}

Graph load_graph(const fs::path& path) {
    std::string text = read_file(path);
    std::string ext = path.extension().string();
    if (ext == ".g6") {
        std::istringstream in(text);
        std::string line;
        if (!std::getline(in, line) || line.empty())
            throw ParseError("empty graph6 file: " + path.string());
        return graph6_decode(line);
    }
    if (ext == ".col" || ext == ".clq" || ext == ".dimacs") return parse_dimacs(text);
    return parse_edge_list(text);
}

int cmd_gen_obstructions(int kmax, const fs::path& out_dir, std::uint64_t budget) {
    LevelOptions opts;
    opts.node_budget = budget;
    auto levels = generate_up_to(kmax, opts);
    fs::create_directories(out_dir);
    for (const auto& [k, level] : levels) {
        fs::path file = out_dir / ("obstructions_k" + std::to_string(k) + "_connected.g6");
        write_file(file, level_to_g6(level));
        std::cout << "k=" << k << " count=" << level.members.size()
                  << (level.possibly_incomplete ? " (possibly incomplete)" : "") << "\n";
    }
    write_file(out_dir / "counts.csv", counts_csv(levels));
    return 0;
}

int cmd_solve(const fs::path& graph_file, const std::string& algo, const fs::path& model_file) {
    Graph g = load_graph(graph_file);
    CoverResult result;
    if (algo == "exact") {
        result = exact_vc(g);
    } else if (algo == "greedy") {
        result = greedy_maxdeg(g);
    } else if (algo == "approx2") {
        result = matching_2approx(g);
    } else {  // model; flag presence checked by CLI11
        std::ifstream in(model_file);
        if (!in) throw ParseError("cannot read model file: " + model_file.string());
        ModelParams params = load_params(in);
        auto shared = std::make_shared<const Graph>(std::move(g));
        auto [cover, transitions] = run_episode(shared, params, 0.0, 0);
        g = *shared;
        result = cover;
    }
    if (!is_vertex_cover(g, result.cover)) throw StructuralError("solver returned a non-cover");
    std::cout << "algorithm=" << to_string(result.algorithm) << "\n";
    std::cout << "size=" << result.size << "\n";
    std::cout << "optimality=" << (result.proven_optimal ? "proven-optimal" : "heuristic") << "\n";
    std::cout << "cover=";
    for (std::size_t i = 0; i < result.cover.size(); ++i)
        std::cout << (i ? " " : "") << result.cover[i];
    std::cout << "\n";
    return 0;
}

int cmd_train(const fs::path& config_file, const fs::path& out_dir, int workers) {
    TrainConfig cfg = parse_train_config(read_file(config_file));
    if (workers > 0) cfg.workers = workers;
    fs::create_directories(out_dir);
    TrainResult result = train(cfg);
    {
        std::ofstream out(out_dir / "model.s2vvc");
        save_params(out, result.best_params);
    }
    write_file(out_dir / "history.csv", history_csv(result.report));
    write_file(out_dir / "manifest.txt", manifest_text(cfg));
    std::cout << "best_epoch=" << result.best_epoch << "\n";
    std::cout << "best_validation_mean_cover="
              << result.report.history[result.best_epoch].validation_mean_cover << "\n";
    if (result.report.diverged_epoch) {
        std::cerr << "warning: training diverged at epoch " << *result.report.diverged_epoch
                  << "; partial history written\n";
    }
    return 0;
}

int cmd_evaluate(const fs::path& model_file, const fs::path& graphs_dir, const fs::path& out_file) {
    std::ifstream in(model_file);
    if (!in) throw ParseError("cannot read model file: " + model_file.string());
    ModelParams params = load_params(in);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(graphs_dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ParseError("no graph files in " + graphs_dir.string());
    std::vector<Graph> graphs;
    std::vector<std::string> names;
    for (const auto& f : files) {
        graphs.push_back(load_graph(f));
        names.push_back(f.stem().string());
    }
    EvalReport report = evaluate(params, graphs, names);
    std::string csv = eval_csv(report);
    if (out_file.empty())
        std::cout << csv;
    else
        write_file(out_file, csv);
    return 0;
}

int cmd_info(const fs::path& graph_file) {
    Graph g = load_graph(graph_file);
    int dmin = g.vertex_count() ? g.degree(0) : 0, dmax = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        dmin = std::min(dmin, g.degree(v));
        dmax = std::max(dmax, g.degree(v));
    }
    std::cout << "n=" << g.vertex_count() << "\n";
    std::cout << "m=" << g.edge_count() << "\n";
    std::cout << "min_degree=" << dmin << "\nmax_degree=" << dmax << "\n";
    std::cout << "components=" << g.components().size() << "\n";
    if (g.vertex_count() <= kCanonVertexCap)
        std::cout << "canonical_g6=" << canonical_form(g).bytes << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vertex-cover obstruction sets, VC solvers and the S2V RL agent"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen-obstructions",
                                   "Generate verified connected obstruction levels 1..K");
    int kmax = 0;
    std::string gen_out = "obstructions";
    std::uint64_t budget = kDefaultExactBudget;
    gen->add_option("--kmax", kmax, "highest level to generate")->required()
        ->check(CLI::PositiveNumber);
    gen->add_option("--out", gen_out, "output directory")->capture_default_str();
    gen->add_option("--budget", budget, "exact-solver node budget per call")
        ->capture_default_str();

    auto* solve = app.add_subcommand("solve", "Compute a vertex cover of one graph");
    std::string solve_graph, solve_algo, solve_model;
    solve->add_option("--graph", solve_graph, "graph file (.g6, .col/.clq/.dimacs or edge list)")
        ->required();
    solve->add_option("--algo", solve_algo, "exact | greedy | approx2 | model")
        ->required()
        ->check(CLI::IsMember({"exact", "greedy", "approx2", "model"}));
    solve->add_option("--model", solve_model, "model checkpoint (required for --algo model)");

    auto* train_cmd = app.add_subcommand("train", "Train the S2V agent from a config file");
    std::string train_config, train_out = "run";
    int workers = 0;
    train_cmd->add_option("--config", train_config, "key=value config file")->required();
    train_cmd->add_option("--out", train_out, "output directory")->capture_default_str();
    train_cmd->add_option("--workers", workers, "rollout workers (overrides config)");

    auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate a checkpoint on a graph directory");
    std::string eval_model, eval_graphs, eval_out;
    eval_cmd->add_option("--model", eval_model, "model checkpoint")->required();
    eval_cmd->add_option("--graphs", eval_graphs, "directory of graph files")->required();
    eval_cmd->add_option("--out", eval_out, "CSV output file (default: stdout)");

    auto* info = app.add_subcommand("info", "Print basic facts about a graph file");
    std::string info_graph;
    info->add_option("--graph", info_graph, "graph file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // 0 for --help
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (gen->parsed()) return cmd_gen_obstructions(kmax, gen_out, budget);
        if (solve->parsed()) {
            if (solve_algo == "model" && solve_model.empty()) {
                std::cerr << "error: --algo model requires --model\n";
                return kExitInput;
            }
            return cmd_solve(solve_graph, solve_algo, solve_model);
        }
        if (train_cmd->parsed()) return cmd_train(train_config, train_out, workers);
        if (eval_cmd->parsed()) return cmd_evaluate(eval_model, eval_graphs, eval_out);
        if (info->parsed()) return cmd_info(info_graph);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const StructuralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
