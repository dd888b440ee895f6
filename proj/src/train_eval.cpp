#include "vcobs/train_eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "vcobs/errors.hpp"
#include "vcobs/obstruction.hpp"
#include "vcobs/vc_solvers.hpp"

namespace vcobs {

std::string to_string(PoolMode m) {
    return m == PoolMode::Obstructions ? "obstructions" : "random-subgraphs";
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 over seed xor stream
    std::uint64_t z = seed ^ (stream * 0x9E3779B97F4A7C15ULL);
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

// stream tags for the documented sub-seed layout
constexpr std::uint64_t kStreamInit = 1;
constexpr std::uint64_t kStreamPoolDraw = 2;
constexpr std::uint64_t kStreamEpisode = 3;
constexpr std::uint64_t kStreamBatch = 4;
constexpr std::uint64_t kStreamSubgraphPool = 5;

constexpr std::uint64_t kValidationBaseSeed = 424242;  // fixed across runs

}  // namespace

std::vector<Graph> default_validation_set() {
    std::vector<Graph> out;
    out.reserve(20);
    for (int i = 0; i < 20; ++i) out.push_back(er_sample(15, 0.15, kValidationBaseSeed + i));
    return out;
}

TrainConfig parse_train_config(const std::string& text) {
    TrainConfig cfg;
    std::vector<std::string> errors;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected key=value");
            continue;
        }
        std::string key = line.substr(0, eq);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string s) {
            auto b2 = s.find_first_not_of(" \t");
            auto e2 = s.find_last_not_of(" \t");
            return b2 == std::string::npos ? std::string{} : s.substr(b2, e2 - b2 + 1);
        };
        key = trim(key);
        val = trim(val);
        auto as_int = [&](int& dst) {
            try {
                dst = std::stoi(val);
            } catch (...) {
                errors.push_back("line " + std::to_string(lineno) + ": " + key +
                                 " expects an integer, got '" + val + "'");
            }
        };
        auto as_double = [&](double& dst) {
            try {
                dst = std::stod(val);
            } catch (...) {
                errors.push_back("line " + std::to_string(lineno) + ": " + key +
                                 " expects a number, got '" + val + "'");
            }
        };
        if (key == "pool_mode") {
            if (val == "obstructions")
                cfg.pool_mode = PoolMode::Obstructions;
            else if (val == "random-subgraphs")
                cfg.pool_mode = PoolMode::RandomSubgraphs;
            else
                errors.push_back("line " + std::to_string(lineno) +
                                 ": pool_mode must be obstructions or random-subgraphs");
        } else if (key == "obstruction_dir") {
            cfg.obstruction_dir = val;
        } else if (key == "k_min") {
            as_int(cfg.k_min);
        } else if (key == "k_max") {
            as_int(cfg.k_max);
        } else if (key == "target_graph") {
            cfg.target_graph_file = val;
        } else if (key == "subgraph_min") {
            as_int(cfg.subgraph_min);
        } else if (key == "subgraph_max") {
            as_int(cfg.subgraph_max);
        } else if (key == "subgraph_pool_size") {
            as_int(cfg.subgraph_pool_size);
        } else if (key == "epochs") {
            as_int(cfg.epochs);
        } else if (key == "episodes_per_epoch") {
            as_int(cfg.episodes_per_epoch);
        } else if (key == "train_steps_per_epoch") {
            as_int(cfg.train_steps_per_epoch);
        } else if (key == "p") {
            as_int(cfg.p);
        } else if (key == "T") {
            as_int(cfg.T);
        } else if (key == "n_step") {
            as_int(cfg.n_step);
        } else if (key == "discount") {
            as_double(cfg.discount);
        } else if (key == "learning_rate") {
            as_double(cfg.learning_rate);
        } else if (key == "batch_size") {
            as_int(cfg.batch_size);
        } else if (key == "replay_capacity") {
            as_int(cfg.replay_capacity);
        } else if (key == "eps_start") {
            as_double(cfg.eps_start);
        } else if (key == "eps_end") {
            as_double(cfg.eps_end);
        } else if (key == "eps_anneal_epochs") {
            as_int(cfg.eps_anneal_epochs);
        } else if (key == "target_refresh") {
            as_int(cfg.target_refresh);
        } else if (key == "workers") {
            as_int(cfg.workers);
        } else if (key == "seed") {
            try {
                cfg.seed = std::stoull(val);
            } catch (...) {
                errors.push_back("line " + std::to_string(lineno) + ": seed expects an integer");
            }
        } else {
            errors.push_back("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (cfg.workers < 1) errors.push_back("workers must be >= 1");
    if (cfg.epochs < 1) errors.push_back("epochs must be >= 1");
    if (cfg.episodes_per_epoch < 1) errors.push_back("episodes_per_epoch must be >= 1");
    if (cfg.p < 1) errors.push_back("p must be >= 1");
    if (cfg.T < 0) errors.push_back("T must be >= 0");
    if (cfg.n_step < 1) errors.push_back("n_step must be >= 1");
    if (cfg.k_min < 1 || cfg.k_max < cfg.k_min) errors.push_back("need 1 <= k_min <= k_max");
    if (cfg.subgraph_min < 1 || cfg.subgraph_max < cfg.subgraph_min)
        errors.push_back("need 1 <= subgraph_min <= subgraph_max");
    if (cfg.pool_mode == PoolMode::RandomSubgraphs && cfg.target_graph_file.empty())
        errors.push_back("pool_mode=random-subgraphs requires target_graph");
    if (cfg.pool_mode == PoolMode::Obstructions && cfg.obstruction_dir.empty())
        errors.push_back("pool_mode=obstructions requires obstruction_dir");
    if (!errors.empty()) {
        std::string joined = "config validation failed:";
        for (const auto& e : errors) joined += "\n  " + e;
        throw ParseError(joined);
    }
    return cfg;
}

std::string manifest_text(const TrainConfig& cfg) {
    std::ostringstream out;
    out << "pool_mode=" << to_string(cfg.pool_mode) << "\n";
    if (cfg.pool_mode == PoolMode::Obstructions) {
        out << "obstruction_dir=" << cfg.obstruction_dir << "\n";
        out << "k_min=" << cfg.k_min << "\nk_max=" << cfg.k_max << "\n";
    } else {
        out << "target_graph=" << cfg.target_graph_file << "\n";
        out << "subgraph_min=" << cfg.subgraph_min << "\nsubgraph_max=" << cfg.subgraph_max
            << "\nsubgraph_pool_size=" << cfg.subgraph_pool_size << "\n";
    }
    out << "epochs=" << cfg.epochs << "\nepisodes_per_epoch=" << cfg.episodes_per_epoch
        << "\ntrain_steps_per_epoch=" << cfg.train_steps_per_epoch << "\n";
    out << "p=" << cfg.p << "\nT=" << cfg.T << "\nn_step=" << cfg.n_step
        << "\ndiscount=" << cfg.discount << "\nlearning_rate=" << cfg.learning_rate
        << "\nbatch_size=" << cfg.batch_size << "\nreplay_capacity=" << cfg.replay_capacity
        << "\neps_start=" << cfg.eps_start << "\neps_end=" << cfg.eps_end
        << "\neps_anneal_epochs="
        << (cfg.eps_anneal_epochs > 0 ? cfg.eps_anneal_epochs : std::max(1, cfg.epochs / 10))
        << "\ntarget_refresh=" << cfg.target_refresh << "\n";
    out << "seed=" << cfg.seed << "\nworkers=" << cfg.workers << "\n";
    out << "validation=" << (cfg.validation.empty() ? "default-20xER(15,0.15)" : "custom") << "\n";
    return out.str();
}

std::vector<Graph> build_pool(const TrainConfig& cfg) {
    std::vector<Graph> pool;
    if (cfg.pool_mode == PoolMode::Obstructions) {
        for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
            std::filesystem::path file = std::filesystem::path(cfg.obstruction_dir) /
                                         ("obstructions_k" + std::to_string(k) + "_connected.g6");
            std::ifstream in(file);
            if (!in)
                throw StructuralError("build_pool: missing level file " + file.string());
            std::stringstream buf;
            buf << in.rdbuf();
            ObstructionLevel level = level_from_g6(k, buf.str());
            for (auto& m : level.members) pool.push_back(std::move(m.graph));
        }
    } else {
        std::ifstream in(cfg.target_graph_file);
        if (!in)
            throw StructuralError("build_pool: cannot read target graph " + cfg.target_graph_file);
        std::stringstream buf;
        buf << in.rdbuf();
        Graph target = parse_edge_list(buf.str());
        const int n = target.vertex_count();
        std::mt19937_64 rng(sub_seed(cfg.seed, kStreamSubgraphPool));
        for (int i = 0; i < cfg.subgraph_pool_size; ++i) {
            int lo = std::min(cfg.subgraph_min, n);
            int hi = std::min(cfg.subgraph_max, n);
            int size = lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
            // seeded partial Fisher-Yates draw of `size` distinct vertices
            std::vector<int> ids(n);
            for (int v = 0; v < n; ++v) ids[v] = v;
            for (int j = 0; j < size; ++j) {
                int k = j + static_cast<int>(rng() % static_cast<std::uint64_t>(n - j));
                std::swap(ids[j], ids[k]);
            }
            ids.resize(size);
            pool.push_back(induced_subgraph(target, ids));
        }
    }
    if (pool.empty()) throw StructuralError("build_pool: empty pool");
    return pool;
}

TrainResult train(const TrainConfig& cfg) {
    std::vector<Graph> pool = build_pool(cfg);
    std::vector<Graph> validation = cfg.validation.empty() ? default_validation_set()
                                                           : cfg.validation;
    if (validation.empty()) throw StructuralError("train: empty validation set");
    std::vector<int> val_exact;
    val_exact.reserve(validation.size());
    for (const Graph& g : validation) val_exact.push_back(exact_vc(g).size);

    std::vector<std::shared_ptr<const Graph>> pool_shared;
    pool_shared.reserve(pool.size());
    for (Graph& g : pool) pool_shared.push_back(std::make_shared<const Graph>(std::move(g)));

    ModelParams params = ModelParams::init(cfg.p, cfg.T, sub_seed(cfg.seed, kStreamInit));
    ModelParams target = params;
    ReplayBuffer replay(static_cast<std::size_t>(cfg.replay_capacity));
    std::mt19937_64 pool_rng(sub_seed(cfg.seed, kStreamPoolDraw));

    const int anneal = cfg.eps_anneal_epochs > 0 ? cfg.eps_anneal_epochs
                                                 : std::max(1, cfg.epochs / 10);
    TrainResult result;
    result.best_params = params;
    result.best_epoch = 0;
    double best_mean = -1.0;
    int global_step = 0;
    std::uint64_t episode_counter = 0;

    auto record_epoch = [&](int epoch, double loss_mean) {
        double total = 0.0, acc = 0.0;
        for (std::size_t i = 0; i < validation.size(); ++i) {
            auto g = std::make_shared<const Graph>(validation[i]);
            auto [cover, tr] = run_episode(g, params, 0.0, 0);
            if (!is_vertex_cover(*g, cover.cover))
                throw StructuralError("validation episode returned a non-cover");
            total += cover.size;
            double d = cover.size - val_exact[i];
            acc += d * d;
        }
        double val_mean = total / static_cast<double>(validation.size());
        HistoryRow row;
        row.epoch = epoch;
        row.pool_mode = cfg.pool_mode;
        row.validation_mean_cover = val_mean;
        row.loss_mean = loss_mean;
        row.mse_vs_exact = acc / static_cast<double>(validation.size());
        result.report.history.push_back(row);
        if (best_mean < 0.0 || val_mean < best_mean) {
            best_mean = val_mean;
            result.best_params = params;
            result.best_epoch = epoch;
        }
    };

    record_epoch(0, 0.0);
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        double frac = std::min(1.0, static_cast<double>(epoch - 1) / anneal);
        double eps = cfg.eps_start + frac * (cfg.eps_end - cfg.eps_start);
        // pre-draw (graph, seed) per episode, roll out possibly in parallel
        // against the frozen params, then merge in episode order; the replay
        // contents are identical for any worker count
        std::vector<std::pair<std::size_t, std::uint64_t>> plan(cfg.episodes_per_epoch);
        for (auto& [gi, s] : plan) {
            gi = pool_rng() % pool_shared.size();
            s = sub_seed(cfg.seed, kStreamEpisode + (episode_counter++ << 3));
        }
        std::vector<std::vector<Transition>> collected(plan.size());
        auto roll = [&](std::size_t i) {
            const auto& g = pool_shared[plan[i].first];
            auto [cover, transitions] = run_episode(g, params, eps, plan[i].second, cfg.n_step);
            if (!is_vertex_cover(*g, cover.cover))
                throw StructuralError("train: episode returned a non-cover");
            collected[i] = std::move(transitions);
        };
        if (cfg.workers <= 1) {
            for (std::size_t i = 0; i < plan.size(); ++i) roll(i);
        } else {
            std::atomic<std::size_t> next_episode{0};
            std::exception_ptr failure;
            std::mutex failure_mutex;
            std::vector<std::thread> threads;
            for (int w = 0; w < cfg.workers; ++w)
                threads.emplace_back([&] {
                    try {
                        for (std::size_t i; (i = next_episode.fetch_add(1)) < plan.size();)
                            roll(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                });
            for (auto& th : threads) th.join();
            if (failure) std::rethrow_exception(failure);
        }
        for (auto& transitions : collected)
            for (auto& t : transitions) replay.push(std::move(t));
        double loss_sum = 0.0;
        int loss_count = 0;
        try {
            for (int s = 0; s < cfg.train_steps_per_epoch; ++s) {
                if (replay.size() < static_cast<std::size_t>(cfg.batch_size)) break;
                auto batch = replay.sample(
                    static_cast<std::size_t>(cfg.batch_size),
                    sub_seed(cfg.seed, kStreamBatch + (static_cast<std::uint64_t>(global_step) << 3)));
                loss_sum += train_step(batch, params, cfg.learning_rate, cfg.discount, target);
                ++loss_count;
                if (++global_step % cfg.target_refresh == 0) target = params;
            }
        } catch (const DivergenceError&) {
            result.report.diverged_epoch = epoch;
            record_epoch(epoch, loss_count ? loss_sum / loss_count : 0.0);
            result.final_params = params;
            return result;
        }
        record_epoch(epoch, loss_count ? loss_sum / loss_count : 0.0);
    }
    result.final_params = params;
    return result;
}

EvalReport evaluate(const ModelParams& params, const std::vector<Graph>& graphs,
                    const std::vector<std::string>& names, std::uint64_t exact_budget) {
    EvalReport report;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const Graph& g = graphs[i];
        EvalRow row;
        row.name = i < names.size() ? names[i] : ("graph" + std::to_string(i));
        row.n = g.vertex_count();
        row.m = g.edge_count();
        CoverResult a1 = greedy_maxdeg(g);
        CoverResult a2 = matching_2approx(g);
        auto shared = std::make_shared<const Graph>(g);
        auto [model_cover, tr] = run_episode(shared, params, 0.0, 0);
        for (const CoverResult* c : {&a1, &a2, &model_cover})
            if (!is_vertex_cover(g, c->cover))
                throw StructuralError("evaluate: " + to_string(c->algorithm) +
                                      " returned a non-cover");
        row.alg1 = a1.size;
        row.alg2 = a2.size;
        row.model = model_cover.size;
        try {
            row.exact = exact_vc(g, std::nullopt, exact_budget).size;
        } catch (const BudgetExceeded&) {
        } catch (const CapExceeded&) {
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

double mse(const EvalReport& report, CoverAlgorithm algorithm) {
    double acc = 0.0;
    int count = 0;
    for (const EvalRow& row : report.rows) {
        if (!row.exact) continue;
        int size = 0;
        switch (algorithm) {
            case CoverAlgorithm::GreedyMaxDeg: size = row.alg1; break;
            case CoverAlgorithm::Matching2Approx: size = row.alg2; break;
            case CoverAlgorithm::Model: size = row.model; break;
            case CoverAlgorithm::Exact: size = *row.exact; break;
        }
        double d = size - *row.exact;
        acc += d * d;
        ++count;
    }
    if (count == 0) throw StructuralError("mse: no graph with an exact value");
    return acc / count;
}

std::string history_csv(const EvalReport& report) {
    std::ostringstream out;
    out << "epoch,pool_mode,validation_mean_cover,loss_mean,mse_vs_exact\n";
    for (const HistoryRow& row : report.history) {
        out << row.epoch << "," << to_string(row.pool_mode) << "," << row.validation_mean_cover
            << "," << row.loss_mean << ",";
        if (row.mse_vs_exact) out << *row.mse_vs_exact;
        out << "\n";
    }
    return out.str();
}

std::string eval_csv(const EvalReport& report) {
    std::ostringstream out;
    out << "graph_name,n,m,alg1,alg2,model,exact\n";
    for (const EvalRow& row : report.rows) {
        out << row.name << "," << row.n << "," << row.m << "," << row.alg1 << "," << row.alg2
            << "," << row.model << ",";
        if (row.exact) out << *row.exact;
        out << "\n";
    }
    return out.str();
}

}  // namespace vcobs
