#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vcobs/graph.hpp"

namespace vcobs {

enum class CoverAlgorithm { Exact, GreedyMaxDeg, Matching2Approx, Model };

std::string to_string(CoverAlgorithm a);

struct CoverResult {
    std::vector<int> cover;  // ascending vertex ids
    int size = 0;            // always == cover.size()
    CoverAlgorithm algorithm = CoverAlgorithm::Exact;
    bool proven_optimal = false;
};

inline constexpr int kExactVertexCap = 64;
inline constexpr std::uint64_t kDefaultExactBudget = 50'000'000;

// Branch and bound on a maximum-degree vertex (v in the cover, or N(v) is),
// with degree-1 reduction and component decomposition. Deterministic.
// Throws BudgetExceeded rather than returning a non-optimal answer.
CoverResult exact_vc(const Graph& g, std::optional<int> upper_bound = std::nullopt,
                     std::uint64_t node_budget = kDefaultExactBudget);

// Repeatedly take the vertex covering the most uncovered edges (smallest id
// on ties) until the graph is edge-less.
CoverResult greedy_maxdeg(const Graph& g);

// Repeatedly take both endpoints of the lexicographically smallest uncovered
// edge. Even size, at most twice the optimum.
CoverResult matching_2approx(const Graph& g);

}  // namespace vcobs
