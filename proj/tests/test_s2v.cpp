#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "test_util.hpp"
#include "vcobs/errors.hpp"
#include "vcobs/s2v.hpp"

using namespace vcobs;
using namespace vcobs::testutil;

namespace {

std::shared_ptr<const Graph> shared(Graph g) {
    return std::make_shared<const Graph>(std::move(g));
}

// wider-than-default init keeps relu units away from the kink for the
// finite-difference comparison
ModelParams wide_init(int p, int T, std::uint64_t seed) {
    return ModelParams::init(p, T, seed, 0.5);
}

std::vector<Transition> sample_batch(const std::shared_ptr<const Graph>& g,
                                     const ModelParams& params, std::uint64_t seed) {
    auto [cover, transitions] = run_episode(g, params, 0.5, seed);
    REQUIRE(!transitions.empty());
    return transitions;
}

}  // namespace

TEST_CASE("embed with T=0 is the zero matrix") {
    ModelParams params = wide_init(5, 0, 3);
    Eigen::MatrixXd mu = embed(cycle(4), {0, 0, 0, 0}, params);
    CHECK(mu.rows() == 4);
    CHECK(mu.cols() == 5);
    CHECK(mu.norm() == 0.0);
}

TEST_CASE("isolated vertices with equal tags embed identically") {
    ModelParams params = wide_init(6, 3, 4);
    Graph g = Graph::from_edges(4, {{0, 1}});  // 2 and 3 isolated
    Eigen::MatrixXd mu = embed(g, {0, 1, 0, 0}, params);
    CHECK((mu.row(2) - mu.row(3)).norm() == 0.0);
}

TEST_CASE("embed dimension mismatch") {
    ModelParams params = wide_init(4, 2, 5);
    CHECK_THROWS_AS(embed(cycle(4), {0, 0, 0}, params), StructuralError);
}

TEST_CASE("embed permutation equivariance") {
    std::mt19937_64 rng(71);
    ModelParams params = wide_init(7, 4, 6);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 3 + static_cast<int>(rng() % 8);
        Graph g = er_sample(n, 0.4, rng());
        std::vector<int> tags(n);
        for (auto& t : tags) t = static_cast<int>(rng() % 2);
        auto perm = random_permutation(n, rng);
        Graph h = permuted(g, perm);
        std::vector<int> ptags(n);
        for (int v = 0; v < n; ++v) ptags[perm[v]] = tags[v];
        Eigen::MatrixXd mu_g = embed(g, tags, params);
        Eigen::MatrixXd mu_h = embed(h, ptags, params);
        for (int v = 0; v < n; ++v)
            CHECK((mu_g.row(v) - mu_h.row(perm[v])).norm() <= 1e-9);
    }
}

TEST_CASE("q_values: symmetric vertices tie, zero params give zero scores") {
    ModelParams params = wide_init(5, 3, 8);
    Graph k2 = complete(2);
    Eigen::VectorXd q = q_values(k2, embed(k2, {0, 0}, params), params);
    CHECK(std::abs(q[0] - q[1]) <= 1e-9);

    // C4 automorphism swaps 1 and 3
    Graph c4 = cycle(4);
    Eigen::VectorXd qc = q_values(c4, embed(c4, {1, 0, 0, 0}, params), params);
    CHECK(std::abs(qc[1] - qc[3]) <= 1e-9);

    ModelParams zero = ModelParams::zeros(5, 3);
    Eigen::VectorXd qz = q_values(c4, embed(c4, {0, 1, 0, 0}, zero), zero);
    CHECK(qz.norm() == 0.0);
}

TEST_CASE("run_episode on the edgeless graph") {
    ModelParams params = wide_init(4, 2, 9);
    auto [cover, transitions] = run_episode(shared(Graph(5)), params, 0.3, 1);
    CHECK(cover.cover.empty());
    CHECK(transitions.empty());
}

TEST_CASE("run_episode on a single edge ends after one greedy action") {
    ModelParams params = wide_init(4, 2, 10);
    auto [cover, transitions] = run_episode(shared(complete(2)), params, 0.0, 1);
    CHECK(cover.size == 1);
    CHECK(cover.algorithm == CoverAlgorithm::Model);
    REQUIRE(transitions.size() == 1);
    CHECK(transitions[0].terminal);
    CHECK(transitions[0].n_step_return == -1.0);
}

TEST_CASE("episode covers are valid and reward equals minus cover size") {
    std::mt19937_64 rng(83);
    ModelParams params = wide_init(6, 3, 11);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = er_sample(4 + static_cast<int>(rng() % 10), 0.35, rng());
        auto gp = shared(g);
        auto [cover, transitions] = run_episode(gp, params, 0.4, rng());
        CHECK(is_vertex_cover(g, cover.cover));
        CHECK(cover.size <= g.vertex_count());
        // one transition per action; per-step reward -1
        CHECK(static_cast<int>(transitions.size()) == cover.size);
    }
}

TEST_CASE("episodes are bit-deterministic for a fixed seed") {
    ModelParams params = wide_init(6, 3, 12);
    auto g = shared(er_sample(12, 0.3, 55));
    auto [c1, t1] = run_episode(g, params, 0.5, 777);
    auto [c2, t2] = run_episode(g, params, 0.5, 777);
    CHECK(c1.cover == c2.cover);
    REQUIRE(t1.size() == t2.size());
    for (std::size_t i = 0; i < t1.size(); ++i) {
        CHECK(t1[i].action == t2[i].action);
        CHECK(t1[i].tags == t2[i].tags);
        CHECK(t1[i].n_step_return == t2[i].n_step_return);
    }
}

TEST_CASE("n-step bookkeeping") {
    ModelParams params = wide_init(4, 2, 13);
    auto g = shared(cycle(6));
    auto [cover, transitions] = run_episode(g, params, 1.0, 5, 2);
    const int steps = static_cast<int>(transitions.size());
    for (int i = 0; i < steps; ++i) {
        int m = std::min(2, steps - i);
        CHECK(transitions[i].n_step_return == -static_cast<double>(m));
        CHECK(transitions[i].terminal == (i + m == steps));
    }
}

TEST_CASE("train_step: lr=0 leaves params unchanged, loss reported") {
    ModelParams params = wide_init(4, 2, 14);
    ModelParams before = params;
    auto g = shared(cycle(5));
    auto batch = sample_batch(g, params, 21);
    double loss = train_step(batch, params, 0.0, 1.0, before);
    CHECK(loss >= 0.0);
    auto pb = param_blocks(params);
    auto bb = param_blocks(before);
    for (std::size_t i = 0; i < pb.size(); ++i)
        for (int j = 0; j < pb[i].rows * pb[i].cols; ++j) CHECK(pb[i].data[j] == bb[i].data[j]);
}

TEST_CASE("train_step: zero TD error means zero loss and no movement") {
    // zero params predict 0 for everything; a terminal transition with
    // return 0 has zero TD error
    ModelParams params = ModelParams::zeros(4, 2);
    Transition t;
    t.graph = shared(complete(2));
    t.tags = {0, 0};
    t.action = 0;
    t.n_step_return = 0.0;
    t.next_tags = {1, 0};
    t.terminal = true;
    double loss = train_step({t}, params, 0.1, 1.0, params);
    CHECK(loss == 0.0);
    CHECK(params.theta_out.norm() == 0.0);
    CHECK(params.W_agg.norm() == 0.0);
}

TEST_CASE("analytic gradient matches central finite differences") {
    std::mt19937_64 rng(91);
    for (int config = 0; config < 3; ++config) {
        const int p = 3 + config * 2;  // p = 3, 5, 7
        const int T = 1 + config;
        ModelParams params = wide_init(p, T, 100 + config);
        ModelParams target = wide_init(p, T, 200 + config);
        auto g = shared(er_sample(6, 0.5, 300 + config));
        auto batch = sample_batch(g, params, 400 + config);

        ModelParams updated = params;
        double base_loss = train_step(batch, updated, 1.0, 0.9, target);
        CHECK(std::isfinite(base_loss));

        // recover the analytic gradient from the lr=1 SGD step
        auto pb = param_blocks(params);
        auto ub = param_blocks(updated);
        const double h = 1e-6;
        for (std::size_t b = 0; b < pb.size(); ++b) {
            for (int j = 0; j < pb[b].rows * pb[b].cols; ++j) {
                double analytic = pb[b].data[j] - ub[b].data[j];
                double saved = pb[b].data[j];
                pb[b].data[j] = saved + h;
                double up = td_loss(batch, params, 0.9, target);
                pb[b].data[j] = saved - h;
                double down = td_loss(batch, params, 0.9, target);
                pb[b].data[j] = saved;
                double fd = (up - down) / (2.0 * h);
                double err = std::abs(analytic - fd) / std::max(1.0, std::abs(fd));
                CHECK(err <= 1e-4);
            }
        }
    }
}

TEST_CASE("checkpoint round-trip") {
    ModelParams params = wide_init(5, 3, 61);
    std::stringstream buf;
    save_params(buf, params);
    ModelParams loaded = load_params(buf);
    CHECK(loaded.p == params.p);
    CHECK(loaded.T == params.T);
    CHECK((loaded.W_agg - params.W_agg).norm() == 0.0);
    CHECK((loaded.theta_out - params.theta_out).norm() == 0.0);

    std::stringstream bad("S2VVC 2 4 2\n");
    CHECK_THROWS_AS(load_params(bad), ParseError);
    std::stringstream truncated("S2VVC 1 4 2\ntheta_tag 4 1\n0.5 0.5\n");
    CHECK_THROWS_AS(load_params(truncated), ParseError);
}

TEST_CASE("replay buffer wraps and samples deterministically") {
    ReplayBuffer buf(4);
    auto g = shared(complete(2));
    for (int i = 0; i < 7; ++i) {
        Transition t;
        t.graph = g;
        t.tags = {0, 0};
        t.action = i % 2;
        t.n_step_return = -1;
        t.next_tags = {1, 0};
        t.terminal = true;
        buf.push(std::move(t));
    }
    CHECK(buf.size() == 4);
    auto a = buf.sample(8, 33);
    auto b = buf.sample(8, 33);
    REQUIRE(a.size() == 8);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].action == b[i].action);
    ReplayBuffer empty(2);
    CHECK_THROWS_AS(empty.sample(1, 0), StructuralError);
}
