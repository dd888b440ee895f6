#include "vcobs/obstruction.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "vcobs/errors.hpp"
#include "vcobs/minor_ops.hpp"

namespace vcobs {

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::Seed: return "seed";
        case Provenance::Method1: return "method1";
        case Provenance::Method2: return "method2";
        case Provenance::BruteForce: return "brute-force";
    }
    return "?";
}

bool ObstructionLevel::contains(const CanonicalCode& code) const {
    return std::any_of(members.begin(), members.end(),
                       [&](const ObstructionMember& m) { return m.code == code; });
}

Graph method1(const Graph& g, EdgeRef e) {
    if (e.v >= g.vertex_count() || !g.has_edge(e.u, e.v))
        throw StructuralError("method1: not an edge");
    const int n = g.vertex_count();
    const int vp = n, vpp = n + 1;
    std::vector<std::pair<int, int>> edges;
    for (auto f : g.edges())
        if (f != e) edges.emplace_back(f.u, f.v);
    edges.emplace_back(e.u, vp);
    edges.emplace_back(vp, vpp);
    edges.emplace_back(vpp, e.v);
    return Graph::from_edges(n + 2, edges);
}

Graph method2(const Graph& g, int v) {
    if (v < 0 || v >= g.vertex_count()) throw StructuralError("method2: invalid vertex");
    const int vp = g.vertex_count();
    std::vector<std::pair<int, int>> edges;
    for (auto f : g.edges()) edges.emplace_back(f.u, f.v);
    edges.emplace_back(v, vp);
    for (int u : g.neighbors(v)) edges.emplace_back(u, vp);
    return Graph::from_edges(vp + 1, edges);
}

bool is_obstruction(const Graph& g, int k, std::uint64_t node_budget) {
    if (exact_vc(g, std::nullopt, node_budget).size != k + 1) return false;
    for (const Graph& m : one_step_minors(g))
        if (exact_vc(m, std::nullopt, node_budget).size > k) return false;
    return true;
}

ObstructionLevel next_level(const ObstructionLevel& level, const LevelOptions& opts) {
    ObstructionLevel out;
    out.k = level.k + 1;
    const int cap = 3 * out.k + opts.vertex_cap_slack;
    std::set<CanonicalCode> seen;
    std::vector<ObstructionMember> found;
    auto consider = [&](Graph cand, Provenance prov) {
        if (cand.vertex_count() > cap) {
            ++out.skipped_cap;
            out.possibly_incomplete = true;
            return;
        }
        CanonicalCode code = canonical_form(cand);
        if (!seen.insert(code).second) return;
        try {
            if (is_obstruction(cand, out.k, opts.node_budget))
                found.push_back({std::move(cand), std::move(code), prov});
        } catch (const BudgetExceeded&) {
            ++out.skipped_budget;
            out.possibly_incomplete = true;
        }
    };
    for (const ObstructionMember& m : level.members) {
        for (auto e : m.graph.edges()) consider(method1(m.graph, e), Provenance::Method1);
        for (int v = 0; v < m.graph.vertex_count(); ++v)
            consider(method2(m.graph, v), Provenance::Method2);
    }
    std::sort(found.begin(), found.end(),
              [](const ObstructionMember& a, const ObstructionMember& b) { return a.code < b.code; });
    out.members = std::move(found);
    return out;
}

namespace {

// All connected graphs up to n_max vertices, one canonical representative
// each. Every connected graph arises by repeatedly attaching a new vertex to
// a nonempty subset of an existing connected graph (BFS order), so levelwise
// extension with canonical dedup is exhaustive.
std::vector<Graph> connected_graphs_up_to(int n_max) {
    std::vector<Graph> all;
    std::vector<Graph> frontier;
    frontier.push_back(Graph(1));
    all.push_back(Graph(1));
    for (int n = 2; n <= n_max; ++n) {
        std::set<CanonicalCode> seen;
        std::vector<Graph> next;
        for (const Graph& g : frontier) {
            const int base = g.vertex_count();
            std::vector<std::pair<int, int>> edges;
            for (auto e : g.edges()) edges.emplace_back(e.u, e.v);
            for (unsigned subset = 1; subset < (1u << base); ++subset) {
                auto ext = edges;
                for (int v = 0; v < base; ++v)
                    if ((subset >> v) & 1) ext.emplace_back(v, base);
                Graph cand = Graph::from_edges(base + 1, ext);
                if (seen.insert(canonical_form(cand)).second) next.push_back(std::move(cand));
            }
        }
        for (const Graph& g : next) all.push_back(g);
        frontier = std::move(next);
    }
    return all;
}

}  // namespace

ObstructionLevel brute_force_obstructions(int k, int n_max, std::uint64_t node_budget) {
    if (k < 1 || k > 3) throw CapExceeded("brute_force_obstructions: k must be in 1..3");
    if (n_max < 1 || n_max > 8) throw CapExceeded("brute_force_obstructions: n_max must be in 1..8");
    ObstructionLevel out;
    out.k = k;
    for (Graph& g : connected_graphs_up_to(n_max)) {
        if (exact_vc(g, std::nullopt, node_budget).size != k + 1) continue;
        if (!is_obstruction(g, k, node_budget)) continue;
        CanonicalCode code = canonical_form(g);
        out.members.push_back({std::move(g), std::move(code), Provenance::BruteForce});
    }
    std::sort(out.members.begin(), out.members.end(),
              [](const ObstructionMember& a, const ObstructionMember& b) { return a.code < b.code; });
    return out;
}

std::map<int, ObstructionLevel> generate_up_to(int k_max, const LevelOptions& opts) {
    if (k_max < 1) throw StructuralError("generate_up_to: k_max must be >= 1");
    std::map<int, ObstructionLevel> levels;
    ObstructionLevel seed = brute_force_obstructions(1, 5, opts.node_budget);
    seed.k = 1;
    for (auto& m : seed.members) m.provenance = Provenance::Seed;
    levels.emplace(1, std::move(seed));
    for (int k = 2; k <= k_max; ++k) levels.emplace(k, next_level(levels.at(k - 1), opts));
    return levels;
}

std::string level_to_g6(const ObstructionLevel& level) {
    std::string out;
    for (const auto& m : level.members) {
        out += m.code.bytes;
        out += '\n';
    }
    return out;
}

ObstructionLevel level_from_g6(int k, const std::string& text, bool reverify) {
    ObstructionLevel out;
    out.k = k;
    std::istringstream in(text);
    std::string line;
    std::set<CanonicalCode> seen;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Graph g = graph6_decode(line);
        CanonicalCode code = canonical_form(g);
        if (!seen.insert(code).second) continue;
        if (reverify && !is_obstruction(g, k))
            throw StructuralError("level_from_g6: stored graph fails obstruction check: " + line);
        out.members.push_back({std::move(g), std::move(code), Provenance::Seed});
    }
    std::sort(out.members.begin(), out.members.end(),
              [](const ObstructionMember& a, const ObstructionMember& b) { return a.code < b.code; });
    return out;
}

std::string counts_csv(const std::map<int, ObstructionLevel>& levels) {
    std::ostringstream out;
    out << "k,count,seed,method1,method2,brute-force,possibly_incomplete\n";
    for (const auto& [k, level] : levels) {
        int by[4] = {0, 0, 0, 0};
        for (const auto& m : level.members) ++by[static_cast<int>(m.provenance)];
        out << k << "," << level.members.size() << "," << by[static_cast<int>(Provenance::Seed)]
            << "," << by[static_cast<int>(Provenance::Method1)] << ","
            << by[static_cast<int>(Provenance::Method2)] << ","
            << by[static_cast<int>(Provenance::BruteForce)] << ","
            << (level.possibly_incomplete ? 1 : 0) << "\n";
    }
    return out.str();
}

}  // namespace vcobs
