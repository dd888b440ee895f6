#include <doctest.h>

#include <random>

#include "test_util.hpp"
#include "vcobs/errors.hpp"
#include "vcobs/vc_solvers.hpp"

using namespace vcobs;
using namespace vcobs::testutil;

namespace {

// independent oracle: no subset smaller than `size` covers g
bool subset_oracle_confirms_minimum(const Graph& g, int size) {
    const int n = g.vertex_count();
    auto edges = g.edges();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) >= size) continue;
        bool covers = true;
        for (auto e : edges)
            if (!((mask >> e.u) & 1) && !((mask >> e.v) & 1)) {
                covers = false;
                break;
            }
        if (covers) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("exact_vc hand-checked values") {
    CHECK(exact_vc(complete(4)).size == 3);
    CHECK(exact_vc(cycle(5)).size == 3);
    CHECK(subset_oracle_confirms_minimum(cycle(5), 3));
    CHECK(exact_vc(petersen()).size == 6);
    CHECK(subset_oracle_confirms_minimum(petersen(), 6));
    CHECK(exact_vc(Graph(5)).size == 0);
}

TEST_CASE("exact_vc returns a valid proven-optimal cover") {
    Graph g = er_sample(14, 0.3, 8);
    CoverResult r = exact_vc(g);
    CHECK(is_vertex_cover(g, r.cover));
    CHECK(r.size == static_cast<int>(r.cover.size()));
    CHECK(r.proven_optimal);
    CHECK(r.algorithm == CoverAlgorithm::Exact);
}

TEST_CASE("exact_vc determinism") {
    Graph g = er_sample(13, 0.35, 9);
    CHECK(exact_vc(g).cover == exact_vc(g).cover);
}

TEST_CASE("exact_vc budget failure is loud") {
    Graph g = er_sample(24, 0.5, 5);
    CHECK_THROWS_AS(exact_vc(g, std::nullopt, 3), BudgetExceeded);
}

TEST_CASE("exact_vc vertex cap") {
    CHECK_THROWS_AS(exact_vc(Graph(kExactVertexCap + 1)), CapExceeded);
}

TEST_CASE("greedy_maxdeg traces") {
    CHECK(greedy_maxdeg(star(4)).cover == std::vector<int>{0});
    CHECK(greedy_maxdeg(cycle(4)).cover == std::vector<int>{0, 2});
    CHECK(greedy_maxdeg(Graph(3)).cover.empty());
}

TEST_CASE("matching_2approx traces") {
    CHECK(matching_2approx(complete(2)).size == 2);
    CHECK(matching_2approx(path(3)).cover == std::vector<int>{0, 1});
    // perfect matching on 2t vertices: takes both endpoints of every edge
    Graph matching = Graph::from_edges(6, {{0, 1}, {2, 3}, {4, 5}});
    CHECK(matching_2approx(matching).size == 6);
    CHECK(exact_vc(matching).size == 3);
}

TEST_CASE("solver properties over random graphs") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 2 + static_cast<int>(rng() % 13);
        Graph g = er_sample(n, 0.1 + 0.05 * (rng() % 10), rng());
        CoverResult exact = exact_vc(g);
        CoverResult greedy = greedy_maxdeg(g);
        CoverResult approx = matching_2approx(g);
        CHECK(is_vertex_cover(g, exact.cover));
        CHECK(is_vertex_cover(g, greedy.cover));
        CHECK(is_vertex_cover(g, approx.cover));
        CHECK(subset_oracle_confirms_minimum(g, exact.size));
        CHECK(greedy.size >= exact.size);
        CHECK(approx.size >= exact.size);
        CHECK(approx.size <= 2 * exact.size);
        CHECK(approx.size % 2 == 0);
    }
}

TEST_CASE("upper_bound is a prune hint, not a result change") {
    Graph g = er_sample(12, 0.4, 15);
    int vc = exact_vc(g).size;
    CHECK(exact_vc(g, vc).size == vc);
    CHECK(exact_vc(g, vc + 3).size == vc);
    CHECK_THROWS_AS(exact_vc(g, vc - 1), StructuralError);
}
