#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vcobs/canon.hpp"
#include "vcobs/graph.hpp"
#include "vcobs/vc_solvers.hpp"

namespace vcobs {

enum class Provenance { Seed, Method1, Method2, BruteForce };

std::string to_string(Provenance p);

struct ObstructionMember {
    Graph graph;
    CanonicalCode code;
    Provenance provenance = Provenance::Seed;
};

// Verified connected obstructions for the family "vc <= k": every member is
// connected, has vc = k+1, and all its one-step minors have vc <= k.
struct ObstructionLevel {
    int k = 0;
    std::vector<ObstructionMember> members;  // ascending canonical code
    bool possibly_incomplete = false;        // some candidate skipped on budget
    int skipped_budget = 0;
    int skipped_cap = 0;

    bool contains(const CanonicalCode& code) const;
};

// Replace edge v1v2 by the path v1 - v' - v'' - v2 (two new vertices).
Graph method1(const Graph& g, EdgeRef e);

// Add a clone v' adjacent to v and to every neighbor of v.
Graph method2(const Graph& g, int v);

// vc(G) = k+1 and every one-step minor has vc <= k.
bool is_obstruction(const Graph& g, int k,
                    std::uint64_t node_budget = kDefaultExactBudget);

struct LevelOptions {
    int vertex_cap_slack = 2;  // per-level cap = 3k + slack
    std::uint64_t node_budget = kDefaultExactBudget;
};

// Apply method1 to every edge and method2 to every vertex of every member,
// dedup canonically, keep verified obstructions for k+1.
ObstructionLevel next_level(const ObstructionLevel& level, const LevelOptions& opts = {});

// Exhaustive oracle: all connected graphs up to n_max vertices (one
// canonical representative each, built by incremental vertex extension)
// filtered by is_obstruction. Complete for obstructions with <= n_max
// vertices. Caps: k <= 3, n_max <= 8.
ObstructionLevel brute_force_obstructions(int k, int n_max,
                                          std::uint64_t node_budget = kDefaultExactBudget);

// Seeds with brute_force_obstructions(1, 5) = {K3} and iterates next_level.
std::map<int, ObstructionLevel> generate_up_to(int k_max, const LevelOptions& opts = {});

// One graph6 line per member, ascending canonical code, newline-terminated.
std::string level_to_g6(const ObstructionLevel& level);
ObstructionLevel level_from_g6(int k, const std::string& text, bool reverify = false);

// CSV "k,count,seed,method1,method2,brute-force,possibly_incomplete"
std::string counts_csv(const std::map<int, ObstructionLevel>& levels);

}  // namespace vcobs
