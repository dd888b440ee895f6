#include "vcobs/minor_ops.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "vcobs/canon.hpp"
#include "vcobs/errors.hpp"

namespace vcobs {

namespace {

void check_edge(const Graph& g, EdgeRef e) {
    if (e.v >= g.vertex_count() || !g.has_edge(e.u, e.v))
        throw StructuralError("not an edge: " + std::to_string(e.u) + " " + std::to_string(e.v));
}

}  // namespace

Graph contract_edge(const Graph& g, EdgeRef e) {
    check_edge(g, e);
    const int n = g.vertex_count();
    // e.u and e.v merge into the slot of e.u; everything above e.v shifts down
    auto remap = [&](int w) { return w == e.v ? e.u : (w > e.v ? w - 1 : w); };
    std::vector<std::pair<int, int>> edges;
    for (auto f : g.edges()) {
        if (f == e) continue;  // would become the loop
        int a = remap(f.u), b = remap(f.v);
        if (a != b) edges.emplace_back(a, b);
    }
    return Graph::from_edges(n - 1, edges);
}

Graph delete_vertex(const Graph& g, int v) {
    if (v < 0 || v >= g.vertex_count())
        throw StructuralError("delete_vertex: invalid vertex " + std::to_string(v));
    std::vector<std::pair<int, int>> edges;
    for (auto f : g.edges())
        if (f.u != v && f.v != v)
            edges.emplace_back(f.u > v ? f.u - 1 : f.u, f.v > v ? f.v - 1 : f.v);
    return Graph::from_edges(g.vertex_count() - 1, edges);
}

Graph delete_edge(const Graph& g, EdgeRef e) {
    check_edge(g, e);
    std::vector<std::pair<int, int>> edges;
    for (auto f : g.edges())
        if (f != e) edges.emplace_back(f.u, f.v);
    return Graph::from_edges(g.vertex_count(), edges);
}

std::vector<Graph> one_step_minors(const Graph& g) {
    std::map<CanonicalCode, Graph> seen;
    auto add = [&](Graph m) { seen.emplace(canonical_form(m), std::move(m)); };
    for (int v = 0; v < g.vertex_count(); ++v) add(delete_vertex(g, v));
    for (auto e : g.edges()) {
        add(delete_edge(g, e));
        add(contract_edge(g, e));
    }
    std::vector<Graph> out;
    out.reserve(seen.size());
    for (auto& [code, m] : seen) out.push_back(std::move(m));
    return out;
}

namespace {

bool has_minor_impl(const Graph& g, const CanonicalCode& gcode, const Graph& h,
                    const CanonicalCode& hcode, std::map<CanonicalCode, bool>& memo) {
    if (g.vertex_count() < h.vertex_count() || g.edge_count() < h.edge_count()) return false;
    if (gcode == hcode) return true;
    if (auto it = memo.find(gcode); it != memo.end()) return it->second;
    bool found = false;
    for (const Graph& m : one_step_minors(g)) {
        if (has_minor_impl(m, canonical_form(m), h, hcode, memo)) {
            found = true;
            break;
        }
    }
    memo[gcode] = found;
    return found;
}

}  // namespace

bool has_minor(const Graph& g, const Graph& h) {
    if (g.vertex_count() > kHasMinorHostCap)
        throw CapExceeded("has_minor: host exceeds cap " + std::to_string(kHasMinorHostCap));
    if (h.vertex_count() > kHasMinorPatternCap)
        throw CapExceeded("has_minor: pattern exceeds cap " + std::to_string(kHasMinorPatternCap));
    std::map<CanonicalCode, bool> memo;
    return has_minor_impl(g, canonical_form(g), h, canonical_form(h), memo);
}

}  // namespace vcobs
