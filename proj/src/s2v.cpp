#include "vcobs/s2v.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "vcobs/errors.hpp"

namespace vcobs {

namespace {

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

Eigen::ArrayXd relu_mask(const Eigen::VectorXd& z) {
    return (z.array() > 0.0).cast<double>();
}

}  // namespace

ModelParams ModelParams::zeros(int p, int T) {
    ModelParams m;
    m.p = p;
    m.T = T;
    m.theta_tag = Eigen::VectorXd::Zero(p);
    m.theta_w = Eigen::VectorXd::Zero(p);
    m.W_agg = Eigen::MatrixXd::Zero(p, p);
    m.W_edge = Eigen::MatrixXd::Zero(p, p);
    m.W_pool = Eigen::MatrixXd::Zero(p, p);
    m.W_node = Eigen::MatrixXd::Zero(p, p);
    m.theta_out = Eigen::VectorXd::Zero(2 * p);
    return m;
}

ModelParams ModelParams::init(int p, int T, std::uint64_t seed, double scale) {
    ModelParams m = zeros(p, T);
    std::mt19937_64 rng(seed);
    for (auto& blk : param_blocks(m)) {
        const std::size_t count = static_cast<std::size_t>(blk.rows) * blk.cols;
        for (std::size_t i = 0; i < count; ++i)
            blk.data[i] = (unit_double(rng) * 2.0 - 1.0) * scale;
    }
    return m;
}

bool ModelParams::all_finite() const {
    auto& self = const_cast<ModelParams&>(*this);
    for (auto& blk : param_blocks(self)) {
        const std::size_t count = static_cast<std::size_t>(blk.rows) * blk.cols;
        for (std::size_t i = 0; i < count; ++i)
            if (!std::isfinite(blk.data[i])) return false;
    }
    return true;
}

std::size_t ModelParams::parameter_count() const {
    return static_cast<std::size_t>(2 * p + 2 * p + 4 * p * p);
}

std::vector<ParamBlock> param_blocks(ModelParams& m) {
    return {
        {"theta_tag", m.theta_tag.data(), m.p, 1},
        {"theta_w", m.theta_w.data(), m.p, 1},
        {"W_agg", m.W_agg.data(), m.p, m.p},
        {"W_edge", m.W_edge.data(), m.p, m.p},
        {"W_pool", m.W_pool.data(), m.p, m.p},
        {"W_node", m.W_node.data(), m.p, m.p},
        {"theta_out", m.theta_out.data(), 2 * m.p, 1},
    };
}

void save_params(std::ostream& out, const ModelParams& params) {
    auto& self = const_cast<ModelParams&>(params);
    out << "S2VVC 1 " << params.p << " " << params.T << "\n";
    out.precision(17);
    for (auto& blk : param_blocks(self)) {
        out << blk.name << " " << blk.rows << " " << blk.cols << "\n";
        Eigen::Map<Eigen::MatrixXd> m(blk.data, blk.rows, blk.cols);
        for (int r = 0; r < blk.rows; ++r) {
            for (int c = 0; c < blk.cols; ++c) out << (c ? " " : "") << m(r, c);
            out << "\n";
        }
    }
}

ModelParams load_params(std::istream& in) {
    std::string magic;
    int version, p, T;
    if (!(in >> magic >> version >> p >> T) || magic != "S2VVC" || version != 1 || p < 1 || T < 0)
        throw ParseError("model file: bad header (expected \"S2VVC 1 <p> <T>\")");
    ModelParams params = ModelParams::zeros(p, T);
    for (auto& blk : param_blocks(params)) {
        std::string name;
        int rows, cols;
        if (!(in >> name >> rows >> cols) || name != blk.name || rows != blk.rows ||
            cols != blk.cols)
            throw ParseError(std::string("model file: expected block \"") + blk.name + " " +
                             std::to_string(blk.rows) + " " + std::to_string(blk.cols) + "\"");
        Eigen::Map<Eigen::MatrixXd> m(blk.data, blk.rows, blk.cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (!(in >> m(r, c)))
                    throw ParseError(std::string("model file: truncated block ") + blk.name);
    }
    return params;
}

namespace {

struct EmbedCache {
    std::vector<Eigen::MatrixXd> mu;   // T+1 entries, n x p
    std::vector<Eigen::MatrixXd> z;    // T entries, pre-activations
    std::vector<Eigen::MatrixXd> agg;  // T entries, neighbor sums feeding round t+1
};

Eigen::MatrixXd embed_forward(const Graph& g, const std::vector<int>& tags,
                              const ModelParams& params, EmbedCache* cache) {
    const int n = g.vertex_count();
    const int p = params.p;
    if (static_cast<int>(tags.size()) != n)
        throw StructuralError("embed: tag vector length mismatch");
    Eigen::VectorXd r = params.theta_w.cwiseMax(0.0);
    Eigen::VectorXd edge_vec = params.W_edge * r;  // per unit of degree
    Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(n, p);
    if (cache) {
        cache->mu.assign(1, mu);
        cache->z.clear();
        cache->agg.clear();
    }
    for (int t = 0; t < params.T; ++t) {
        Eigen::MatrixXd agg = Eigen::MatrixXd::Zero(n, p);
        for (int v = 0; v < n; ++v)
            for (int u : g.neighbors(v)) agg.row(v) += mu.row(u);
        Eigen::MatrixXd z(n, p);
        for (int v = 0; v < n; ++v) {
            z.row(v) = (params.W_agg * agg.row(v).transpose() +
                        static_cast<double>(g.degree(v)) * edge_vec)
                           .transpose();
            if (tags[v]) z.row(v) += params.theta_tag.transpose();
        }
        mu = z.cwiseMax(0.0);
        if (cache) {
            cache->agg.push_back(std::move(agg));
            cache->z.push_back(std::move(z));
            cache->mu.push_back(mu);
        }
    }
    return mu;
}

struct HeadCache {
    Eigen::VectorXd S;   // pooled state
    Eigen::VectorXd zh;  // head pre-activation (2p)
    Eigen::VectorXd h;   // relu(zh)
};

double q_single(const Eigen::MatrixXd& mu, int action, const ModelParams& params,
                HeadCache* cache) {
    Eigen::VectorXd S = mu.colwise().sum().transpose();
    Eigen::VectorXd zh(2 * params.p);
    zh.head(params.p) = params.W_pool * S;
    zh.tail(params.p) = params.W_node * mu.row(action).transpose();
    Eigen::VectorXd h = zh.cwiseMax(0.0);
    double q = params.theta_out.dot(h);
    if (cache) *cache = {std::move(S), std::move(zh), std::move(h)};
    return q;
}

}  // namespace

Eigen::MatrixXd embed(const Graph& g, const std::vector<int>& tags, const ModelParams& params) {
    return embed_forward(g, tags, params, nullptr);
}

Eigen::VectorXd q_values(const Graph& g, const Eigen::MatrixXd& mu, const ModelParams& params) {
    const int n = g.vertex_count();
    if (mu.rows() != n || mu.cols() != params.p)
        throw StructuralError("q_values: embedding shape mismatch");
    Eigen::VectorXd S = mu.colwise().sum().transpose();
    Eigen::VectorXd pool = params.W_pool * S;
    Eigen::VectorXd out(n);
    for (int v = 0; v < n; ++v) {
        Eigen::VectorXd zh(2 * params.p);
        zh.head(params.p) = pool;
        zh.tail(params.p) = params.W_node * mu.row(v).transpose();
        out[v] = params.theta_out.dot(zh.cwiseMax(0.0));
    }
    return out;
}

std::vector<int> legal_actions(const Graph& g, const std::vector<int>& tags) {
    std::vector<int> out;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (tags[v]) continue;
        for (int u : g.neighbors(v))
            if (!tags[u]) {
                out.push_back(v);
                break;
            }
    }
    return out;
}

std::pair<CoverResult, std::vector<Transition>> run_episode(
    const std::shared_ptr<const Graph>& g, const ModelParams& params, double epsilon,
    std::uint64_t rng_seed, int n_step) {
    if (n_step < 1) throw StructuralError("run_episode: n_step must be >= 1");
    std::mt19937_64 rng(rng_seed);
    const Graph& graph = *g;
    std::vector<int> tags(graph.vertex_count(), 0);
    std::vector<std::vector<int>> tag_history{tags};
    std::vector<int> actions;
    std::vector<int> cover;
    while (true) {
        std::vector<int> legal = legal_actions(graph, tags);
        if (legal.empty()) break;
        int action;
        if (epsilon > 0.0 && unit_double(rng) < epsilon) {
            action = legal[rng() % legal.size()];
        } else {
            Eigen::MatrixXd mu = embed_forward(graph, tags, params, nullptr);
            Eigen::VectorXd q = q_values(graph, mu, params);
            action = legal.front();
            for (int v : legal)
                if (q[v] > q[action]) action = v;
        }
        actions.push_back(action);
        tags[action] = 1;
        cover.push_back(action);
        tag_history.push_back(tags);
    }
    const int steps = static_cast<int>(actions.size());
    std::vector<Transition> transitions;
    transitions.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        int m = std::min(n_step, steps - i);
        Transition t;
        t.graph = g;
        t.tags = tag_history[i];
        t.action = actions[i];
        t.n_step_return = -static_cast<double>(m);
        t.next_tags = tag_history[i + m];
        t.terminal = (i + m == steps);
        transitions.push_back(std::move(t));
    }
    std::sort(cover.begin(), cover.end());
    CoverResult result{cover, static_cast<int>(cover.size()), CoverAlgorithm::Model, false};
    return {std::move(result), std::move(transitions)};
}

namespace {

double td_target(const Transition& t, double discount, const ModelParams& target_params) {
    if (t.terminal) return t.n_step_return;
    std::vector<int> legal = legal_actions(*t.graph, t.next_tags);
    if (legal.empty()) return t.n_step_return;
    Eigen::MatrixXd mu = embed_forward(*t.graph, t.next_tags, target_params, nullptr);
    Eigen::VectorXd q = q_values(*t.graph, mu, target_params);
    double best = q[legal.front()];
    for (int v : legal) best = std::max(best, q[v]);
    return t.n_step_return + discount * best;
}

}  // namespace

double td_loss(const std::vector<Transition>& batch, const ModelParams& params, double discount,
               const ModelParams& target_params) {
    if (batch.empty()) throw StructuralError("td_loss: empty batch");
    double loss = 0.0;
    for (const Transition& t : batch) {
        Eigen::MatrixXd mu = embed_forward(*t.graph, t.tags, params, nullptr);
        double q = q_single(mu, t.action, params, nullptr);
        double delta = q - td_target(t, discount, target_params);
        loss += delta * delta;
    }
    return loss / static_cast<double>(batch.size());
}

double train_step(const std::vector<Transition>& batch, ModelParams& params, double learning_rate,
                  double discount, const ModelParams& target_params) {
    if (batch.empty()) throw StructuralError("train_step: empty batch");
    const int p = params.p;
    ModelParams grad = ModelParams::zeros(p, params.T);
    double loss = 0.0;
    const double inv_b = 1.0 / static_cast<double>(batch.size());
    Eigen::VectorXd r = params.theta_w.cwiseMax(0.0);
    Eigen::ArrayXd r_mask = relu_mask(params.theta_w);
    for (const Transition& t : batch) {
        const Graph& g = *t.graph;
        const int n = g.vertex_count();
        EmbedCache cache;
        embed_forward(g, t.tags, params, &cache);
        HeadCache head;
        double q = q_single(cache.mu.back(), t.action, params, &head);
        double delta = q - td_target(t, discount, target_params);
        loss += delta * delta * inv_b;
        double dq = 2.0 * delta * inv_b;

        // head backward
        grad.theta_out += dq * head.h;
        Eigen::VectorXd dzh = dq * (params.theta_out.array() * relu_mask(head.zh)).matrix();
        Eigen::VectorXd da = dzh.head(p);
        Eigen::VectorXd db = dzh.tail(p);
        grad.W_pool += da * head.S.transpose();
        grad.W_node += db * cache.mu.back().row(t.action);
        Eigen::VectorXd dS = params.W_pool.transpose() * da;
        Eigen::MatrixXd dMu = dS.transpose().replicate(n, 1);
        dMu.row(t.action) += (params.W_node.transpose() * db).transpose();

        // embedding rounds backward
        for (int round = params.T; round >= 1; --round) {
            const Eigen::MatrixXd& z = cache.z[round - 1];
            Eigen::MatrixXd dZ = (dMu.array() * (z.array() > 0.0).cast<double>()).matrix();
            Eigen::VectorXd qvec = Eigen::VectorXd::Zero(p);
            for (int v = 0; v < n; ++v) {
                if (t.tags[v]) grad.theta_tag += dZ.row(v).transpose();
                qvec += static_cast<double>(g.degree(v)) * dZ.row(v).transpose();
            }
            grad.W_agg += dZ.transpose() * cache.agg[round - 1];
            grad.W_edge += qvec * r.transpose();
            grad.theta_w += (r_mask * (params.W_edge.transpose() * qvec).array()).matrix();
            if (round > 1) {
                Eigen::MatrixXd tmp = dZ * params.W_agg;
                Eigen::MatrixXd dPrev = Eigen::MatrixXd::Zero(n, p);
                for (int u = 0; u < n; ++u)
                    for (int v : g.neighbors(u)) dPrev.row(u) += tmp.row(v);
                dMu = std::move(dPrev);
            }
        }
    }
    if (!std::isfinite(loss)) throw DivergenceError("train_step: non-finite loss");
    auto pb = param_blocks(params);
    auto gb = param_blocks(grad);
    for (std::size_t i = 0; i < pb.size(); ++i) {
        Eigen::Map<Eigen::MatrixXd> pm(pb[i].data, pb[i].rows, pb[i].cols);
        Eigen::Map<Eigen::MatrixXd> gm(gb[i].data, gb[i].rows, gb[i].cols);
        pm -= learning_rate * gm;
    }
    if (!params.all_finite()) throw DivergenceError("train_step: non-finite parameters");
    return loss;
}

void ReplayBuffer::push(Transition t) {
    if (capacity_ == 0) return;
    if (data_.size() < capacity_) {
        data_.push_back(std::move(t));
    } else {
        data_[next_] = std::move(t);
        next_ = (next_ + 1) % capacity_;
    }
}

std::vector<Transition> ReplayBuffer::sample(std::size_t batch, std::uint64_t seed) const {
    if (data_.empty()) throw StructuralError("ReplayBuffer::sample: empty buffer");
    std::mt19937_64 rng(seed);
    std::vector<Transition> out;
    out.reserve(batch);
    for (std::size_t i = 0; i < batch; ++i) out.push_back(data_[rng() % data_.size()]);
    return out;
}

}  // namespace vcobs
