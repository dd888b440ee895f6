#pragma once

#include <string>

#include "vcobs/graph.hpp"

namespace vcobs {

// graph6 text of the canonically relabeled graph. Equal codes <=> isomorphic.
struct CanonicalCode {
    std::string bytes;

    friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
    friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

// Largest graph the canonical labeler accepts (adjacency rows fit one word).
inline constexpr int kCanonVertexCap = 64;

// Color refinement to an equitable partition, then backtracking over the
// first non-singleton cell; the canonical representative is the labeling
// with the lexicographically smallest adjacency bit-string.
CanonicalCode canonical_form(const Graph& g);

bool are_isomorphic(const Graph& g, const Graph& h);

std::string graph6_encode(const Graph& g);
Graph graph6_decode(const std::string& bytes);

}  // namespace vcobs
