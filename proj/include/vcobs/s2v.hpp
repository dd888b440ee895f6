#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "vcobs/graph.hpp"
#include "vcobs/vc_solvers.hpp"

namespace vcobs {

// Parameter collection Theta for the embedding network and the action-value
// head. Embedding update (edge weights are all 1):
//   mu_v <- relu(theta_tag * x_v + W_agg * sum_{u in N(v)} mu_u
//                + deg(v) * W_edge * relu(theta_w))
// Action-value head over the pooled state S = sum_v mu_v:
//   q(v) = theta_out . relu(concat(W_pool * S, W_node * mu_v))
struct ModelParams {
    int p = 64;  // embedding dimension
    int T = 4;   // synchronous update rounds
    Eigen::VectorXd theta_tag;   // p
    Eigen::VectorXd theta_w;     // p
    Eigen::MatrixXd W_agg;       // p x p
    Eigen::MatrixXd W_edge;      // p x p
    Eigen::MatrixXd W_pool;      // p x p
    Eigen::MatrixXd W_node;      // p x p
    Eigen::VectorXd theta_out;   // 2p

    static ModelParams init(int p, int T, std::uint64_t seed, double scale = 0.01);
    static ModelParams zeros(int p, int T);

    bool all_finite() const;
    std::size_t parameter_count() const;
};

// Raw view of one parameter block (Eigen storage order); fixed block order
// shared by the SGD update, the checkpoint format and the gradient tests.
struct ParamBlock {
    const char* name;
    double* data;
    int rows;
    int cols;
};

std::vector<ParamBlock> param_blocks(ModelParams& params);

// Text checkpoint, readable by any implementation:
//   "S2VVC 1 <p> <T>" then blocks "name rows cols" + row-major values.
void save_params(std::ostream& out, const ModelParams& params);
ModelParams load_params(std::istream& in);

// Embeddings after T synchronous rounds from mu^(0) = 0. Rows are vertices.
Eigen::MatrixXd embed(const Graph& g, const std::vector<int>& tags, const ModelParams& params);

// Scores for every vertex (masking to legal actions is the caller's job).
Eigen::VectorXd q_values(const Graph& g, const Eigen::MatrixXd& mu, const ModelParams& params);

struct Transition {
    std::shared_ptr<const Graph> graph;
    std::vector<int> tags;       // state: x_v at decision time
    int action = -1;
    double n_step_return = 0.0;  // -(steps accumulated)
    std::vector<int> next_tags;  // state after the n steps
    bool terminal = false;
};

// Legal actions: vertices outside the cover with at least one uncovered
// incident edge.
std::vector<int> legal_actions(const Graph& g, const std::vector<int>& tags);

// Epsilon-greedy rollout until every edge is covered. Deterministic for a
// fixed (graph, params, epsilon, seed); greedy ties break to smallest id.
std::pair<CoverResult, std::vector<Transition>> run_episode(
    const std::shared_ptr<const Graph>& g, const ModelParams& params, double epsilon,
    std::uint64_t rng_seed, int n_step = 2);

// One SGD step on the mean squared TD error over the batch. Targets use
// target_params (no gradient through them). Returns the loss; throws on a
// non-finite loss.
double train_step(const std::vector<Transition>& batch, ModelParams& params,
                  double learning_rate, double discount, const ModelParams& target_params);

// Forward-only loss, used by the finite-difference gradient check.
double td_loss(const std::vector<Transition>& batch, const ModelParams& params, double discount,
               const ModelParams& target_params);

class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {}

    void push(Transition t);
    std::size_t size() const { return data_.size(); }
    std::vector<Transition> sample(std::size_t batch, std::uint64_t seed) const;

private:
    std::size_t capacity_;
    std::size_t next_ = 0;
    std::vector<Transition> data_;
};

}  // namespace vcobs
