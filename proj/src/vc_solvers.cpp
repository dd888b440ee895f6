#include "vcobs/vc_solvers.hpp"

#include <algorithm>
#include <bit>

#include "vcobs/errors.hpp"

namespace vcobs {

std::string to_string(CoverAlgorithm a) {
    switch (a) {
        case CoverAlgorithm::Exact: return "exact";
        case CoverAlgorithm::GreedyMaxDeg: return "greedy-maxdeg";
        case CoverAlgorithm::Matching2Approx: return "matching-2approx";
        case CoverAlgorithm::Model: return "model";
    }
    return "?";
}

namespace {

using Mask = std::uint64_t;

struct BnB {
    std::vector<Mask> adj;
    int n = 0;
    std::uint64_t budget = 0;
    std::uint64_t nodes = 0;
    int best_size = 0;
    Mask best_cover = 0;
    int prune_cap = 0;  // never explore covers larger than this

    // Greedy maximal matching size: any cover needs one endpoint per edge.
    int matching_bound(Mask alive) const {
        Mask avail = alive;
        int count = 0;
        while (avail) {
            int u = std::countr_zero(avail);
            Mask nb = adj[u] & avail & ~(Mask{1} << u);
            avail &= ~(Mask{1} << u);
            if (nb) {
                int v = std::countr_zero(nb);
                avail &= ~(Mask{1} << v);
                ++count;
            }
        }
        return count;
    }

    void solve(Mask alive, Mask cover, int size) {
        if (++nodes > budget) throw BudgetExceeded("exact_vc: node budget exhausted");
        // reductions: drop isolated vertices, resolve degree-1 vertices
        bool changed = true;
        while (changed) {
            changed = false;
            for (Mask scan = alive; scan;) {
                int v = std::countr_zero(scan);
                scan &= scan - 1;
                Mask nb = adj[v] & alive;
                if (nb == 0) {
                    alive &= ~(Mask{1} << v);
                } else if (std::popcount(nb) == 1) {
                    int u = std::countr_zero(nb);
                    cover |= Mask{1} << u;
                    ++size;
                    alive &= ~(Mask{1} << u);
                    alive &= ~(Mask{1} << v);
                    changed = true;
                    break;
                }
            }
        }
        if (alive == 0) {
            if (size < best_size) {
                best_size = size;
                best_cover = cover;
            }
            return;
        }
        int lb = matching_bound(alive);
        if (size + lb >= best_size || size + lb > prune_cap) return;
        // branch on a maximum-degree vertex, smallest id on ties
        int pick = -1, pick_deg = -1;
        for (Mask scan = alive; scan;) {
            int v = std::countr_zero(scan);
            scan &= scan - 1;
            int d = std::popcount(adj[v] & alive);
            if (d > pick_deg) {
                pick_deg = d;
                pick = v;
            }
        }
        solve(alive & ~(Mask{1} << pick), cover | (Mask{1} << pick), size + 1);
        Mask nb = adj[pick] & alive;
        solve(alive & ~nb & ~(Mask{1} << pick), cover | nb, size + std::popcount(nb));
    }
};

}  // namespace

CoverResult greedy_maxdeg(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<char> in(n, 0);
    std::vector<int> cover;
    while (true) {
        int pick = -1, pick_cnt = 0;
        for (int v = 0; v < n; ++v) {
            if (in[v]) continue;
            int cnt = 0;
            for (int u : g.neighbors(v))
                if (!in[u]) ++cnt;
            if (cnt > pick_cnt) {
                pick_cnt = cnt;
                pick = v;
            }
        }
        if (pick < 0) break;
        in[pick] = 1;
        cover.push_back(pick);
    }
    std::sort(cover.begin(), cover.end());
    return {cover, static_cast<int>(cover.size()), CoverAlgorithm::GreedyMaxDeg, false};
}

CoverResult matching_2approx(const Graph& g) {
    std::vector<char> in(g.vertex_count(), 0);
    std::vector<int> cover;
    // a single lexicographic scan visits uncovered edges in exactly the
    // "smallest uncovered edge" order
    for (int u = 0; u < g.vertex_count(); ++u) {
        if (in[u]) continue;
        for (int v : g.neighbors(u)) {
            if (v <= u || in[v]) continue;
            in[u] = in[v] = 1;
            cover.push_back(u);
            cover.push_back(v);
            break;
        }
    }
    std::sort(cover.begin(), cover.end());
    return {cover, static_cast<int>(cover.size()), CoverAlgorithm::Matching2Approx, false};
}

CoverResult exact_vc(const Graph& g, std::optional<int> upper_bound, std::uint64_t node_budget) {
    const int n = g.vertex_count();
    if (n > kExactVertexCap)
        throw CapExceeded("exact_vc: n=" + std::to_string(n) + " exceeds cap " +
                          std::to_string(kExactVertexCap));
    std::vector<int> cover;
    std::uint64_t nodes_used = 0;
    // components are independent subproblems; solve each and concatenate
    for (const auto& comp : g.components()) {
        Graph sub = induced_subgraph(g, comp);
        CoverResult seed = greedy_maxdeg(sub);
        BnB bnb;
        bnb.n = sub.vertex_count();
        bnb.adj.assign(bnb.n, 0);
        for (auto e : sub.edges()) {
            bnb.adj[e.u] |= Mask{1} << e.v;
            bnb.adj[e.v] |= Mask{1} << e.u;
        }
        bnb.budget = node_budget - nodes_used;
        bnb.best_size = seed.size;
        for (int v : seed.cover) bnb.best_cover |= Mask{1} << v;
        bnb.prune_cap = upper_bound ? *upper_bound : bnb.n;
        Mask all = bnb.n == 64 ? ~Mask{0} : (Mask{1} << bnb.n) - 1;
        bnb.solve(all, 0, 0);
        nodes_used += bnb.nodes;
        for (int v = 0; v < bnb.n; ++v)
            if ((bnb.best_cover >> v) & 1) cover.push_back(comp[v]);
    }
    std::sort(cover.begin(), cover.end());
    if (upper_bound && static_cast<int>(cover.size()) > *upper_bound)
        throw StructuralError("exact_vc: minimum cover exceeds the supplied upper bound");
    return {cover, static_cast<int>(cover.size()), CoverAlgorithm::Exact, true};
}

}  // namespace vcobs
