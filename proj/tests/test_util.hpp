#pragma once

#include <random>
#include <vector>

#include "vcobs/graph.hpp"

namespace vcobs::testutil {

inline Graph cycle(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, edges);
}

inline Graph complete(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

inline Graph path(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph::from_edges(n, edges);
}

inline Graph star(int leaves) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return Graph::from_edges(leaves + 1, edges);
}

// outer 5-cycle 0..4, inner pentagram 5..9
inline Graph petersen() {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, i + 5);
        edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    return Graph::from_edges(10, edges);
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

inline Graph permuted(const Graph& g, const std::vector<int>& perm) {
    std::vector<std::pair<int, int>> edges;
    for (auto e : g.edges()) edges.emplace_back(perm[e.u], perm[e.v]);
    return Graph::from_edges(g.vertex_count(), edges);
}

}  // namespace vcobs::testutil
