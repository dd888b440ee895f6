#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace vcobs {

struct EdgeRef {
    int u = 0;  // u < v always
    int v = 0;

    EdgeRef() = default;
    EdgeRef(int a, int b);

    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
    friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

// Simple undirected graph with dense 0-based vertex ids.
// Adjacency lists are sorted, loop-free and duplicate-free; the structure
// is immutable after construction (all mutations return a new Graph).
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(n) {}

    // Normalizing constructor: collapses duplicate edges, rejects self-loops
    // and out-of-range endpoints.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const;
    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
    const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
    bool has_edge(int u, int v) const;
    std::vector<EdgeRef> edges() const;

    bool is_connected() const;  // vacuously true for n <= 1
    std::vector<std::vector<int>> components() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<int>> adj_;
};

// Parse metadata surfaced alongside a Graph; m mismatches in DIMACS headers
// are tolerated and counted here rather than treated as fatal.
struct ParseInfo {
    int duplicate_edges = 0;
    int declared_edge_mismatch = 0;  // |declared m - parsed m| for DIMACS
};

// Lines are "u v" pairs; '#' and '%' lines ignored. Graph spans 0..max_id.
Graph parse_edge_list(const std::string& text, ParseInfo* info = nullptr);

// DIMACS "p edge n m" (or "p col n m") with 1-based "e u v" lines.
Graph parse_dimacs(const std::string& text, ParseInfo* info = nullptr);

std::string serialize_edge_list(const Graph& g);

// Erdos-Renyi G(n, p). Fully deterministic for a fixed (n, p, seed) triple:
// pairs are visited in ascending (u, v) order and each draw consumes exactly
// one mt19937_64 output mapped to [0, 1) via the top 53 bits.
Graph er_sample(int n, double p, std::uint64_t seed);

// Vertices of S relabeled 0..|S|-1 in ascending order of original id.
Graph induced_subgraph(const Graph& g, const std::vector<int>& s);

bool is_vertex_cover(const Graph& g, const std::vector<int>& cover);

}  // namespace vcobs
