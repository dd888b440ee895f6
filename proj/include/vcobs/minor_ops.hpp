#pragma once

#include <vector>

#include "vcobs/graph.hpp"

namespace vcobs {

enum class MinorStepKind { DeleteVertex, DeleteEdge, ContractEdge };

struct MinorStep {
    MinorStepKind kind;
    EdgeRef edge;   // valid for edge steps
    int vertex = -1;  // valid for DeleteVertex
};

// Contraction merges the endpoints; parallel edges collapse, the loop is
// dropped, ids are compacted.
Graph contract_edge(const Graph& g, EdgeRef e);
Graph delete_vertex(const Graph& g, int v);
Graph delete_edge(const Graph& g, EdgeRef e);

// All one-step minors {G-v} u {G-e} u {G/e}, deduped by canonical code and
// returned in ascending code order.
std::vector<Graph> one_step_minors(const Graph& g);

inline constexpr int kHasMinorHostCap = 12;
inline constexpr int kHasMinorPatternCap = 8;

// Small-scale minor containment test: true iff h <=_m g. Memoized DFS over
// canonical codes; a test oracle, not a production primitive.
bool has_minor(const Graph& g, const Graph& h);

}  // namespace vcobs
