#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcobs/graph.hpp"
#include "vcobs/s2v.hpp"

namespace vcobs {

enum class PoolMode { Obstructions, RandomSubgraphs };

std::string to_string(PoolMode m);

struct TrainConfig {
    PoolMode pool_mode = PoolMode::Obstructions;
    std::string obstruction_dir;  // holds obstructions_k{k}_connected.g6
    int k_min = 1;
    int k_max = 3;
    std::string target_graph_file;  // random-subgraph mode
    int subgraph_min = 15;
    int subgraph_max = 60;
    int subgraph_pool_size = 10000;

    int epochs = 500;
    int episodes_per_epoch = 16;
    int train_steps_per_epoch = 16;

    int p = 64;
    int T = 4;
    int n_step = 2;
    double discount = 1.0;
    double learning_rate = 0.005;
    int batch_size = 64;
    int replay_capacity = 50000;
    double eps_start = 1.0;
    double eps_end = 0.05;
    int eps_anneal_epochs = 0;  // 0 -> max(1, epochs/10)
    int target_refresh = 100;

    std::uint64_t seed = 1;
    int workers = 1;  // concurrent rollout workers; merge order is fixed, so
                      // runs are bit-identical for any worker count
    std::vector<Graph> validation;  // empty -> default 20 ER(15, 0.15) graphs
};

// Flat key=value text; '#' comments. Validation reports every problem at once.
TrainConfig parse_train_config(const std::string& text);
std::string manifest_text(const TrainConfig& config);

struct EvalRow {
    std::string name;
    int n = 0;
    int m = 0;
    int alg1 = 0;   // greedy_maxdeg
    int alg2 = 0;   // matching_2approx
    int model = 0;
    std::optional<int> exact;
};

struct HistoryRow {
    int epoch = 0;  // 0 is the untrained initial evaluation
    PoolMode pool_mode = PoolMode::Obstructions;
    double validation_mean_cover = 0.0;
    double loss_mean = 0.0;
    std::optional<double> mse_vs_exact;
};

struct EvalReport {
    std::vector<EvalRow> rows;
    std::vector<HistoryRow> history;
    std::optional<int> diverged_epoch;
};

struct TrainResult {
    ModelParams best_params;
    ModelParams final_params;
    int best_epoch = 0;
    EvalReport report;
};

// Documented sub-seed derivation: every random stream hangs off the config
// seed through this mix, so single-worker runs are bit-reproducible.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream);

std::vector<Graph> default_validation_set();

std::vector<Graph> build_pool(const TrainConfig& config);

TrainResult train(const TrainConfig& config);

EvalReport evaluate(const ModelParams& params, const std::vector<Graph>& graphs,
                    const std::vector<std::string>& names = {},
                    std::uint64_t exact_budget = kDefaultExactBudget);

double mse(const EvalReport& report, CoverAlgorithm algorithm);

std::string history_csv(const EvalReport& report);
std::string eval_csv(const EvalReport& report);

}  // namespace vcobs
