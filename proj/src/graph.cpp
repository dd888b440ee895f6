#include "vcobs/graph.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <sstream>

#include "vcobs/errors.hpp"

namespace vcobs {

EdgeRef::EdgeRef(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {
    if (a == b) throw StructuralError("EdgeRef: self-loop " + std::to_string(a));
    if (a < 0 || b < 0) throw StructuralError("EdgeRef: negative vertex id");
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [a, b] : edges) {
        if (a == b) throw StructuralError("self-loop at vertex " + std::to_string(a));
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw StructuralError("edge endpoint out of range: " + std::to_string(a) + " " +
                                  std::to_string(b));
        g.adj_[a].push_back(b);
        g.adj_[b].push_back(a);
    }
    for (auto& nb : g.adj_) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return g;
}

int Graph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& nb : adj_) twice += nb.size();
    return static_cast<int>(twice / 2);
}

bool Graph::has_edge(int u, int v) const {
    const auto& nb = adj_.at(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<EdgeRef> Graph::edges() const {
    std::vector<EdgeRef> out;
    for (int u = 0; u < vertex_count(); ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

std::vector<std::vector<int>> Graph::components() const {
    const int n = vertex_count();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        std::vector<int> members;
        std::queue<int> q;
        q.push(s);
        comp[s] = static_cast<int>(out.size());
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            members.push_back(u);
            for (int v : adj_[u])
                if (comp[v] == -1) {
                    comp[v] = comp[s];
                    q.push(v);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

bool Graph::is_connected() const {
    return vertex_count() <= 1 || components().size() == 1;
}

namespace {

std::vector<std::pair<int, int>> dedup_pairs(std::vector<std::pair<int, int>>& raw, int* dups) {
    for (auto& e : raw)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(raw.begin(), raw.end());
    auto last = std::unique(raw.begin(), raw.end());
    if (dups) *dups = static_cast<int>(raw.end() - last);
    raw.erase(last, raw.end());
    return raw;
}

}  // namespace

Graph parse_edge_list(const std::string& text, ParseInfo* info) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int max_id = -1;
    std::vector<std::pair<int, int>> raw;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#' || line[0] == '%') continue;
        std::istringstream ls(line);
        long long a, b;
        if (!(ls >> a >> b) || a < 0 || b < 0)
            throw ParseError("edge list line " + std::to_string(lineno) + ": expected \"u v\"");
        std::string trailing;
        if (ls >> trailing)
            throw ParseError("edge list line " + std::to_string(lineno) + ": trailing token '" +
                             trailing + "'");
        if (a == b)
            throw StructuralError("edge list line " + std::to_string(lineno) + ": self-loop " +
                                  std::to_string(a));
        raw.emplace_back(static_cast<int>(a), static_cast<int>(b));
        max_id = std::max(max_id, static_cast<int>(std::max(a, b)));
    }
    ParseInfo pi;
    dedup_pairs(raw, &pi.duplicate_edges);
    if (info) *info = pi;
    return Graph::from_edges(max_id + 1, raw);
}

Graph parse_dimacs(const std::string& text, ParseInfo* info) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = -1;
    long long declared_m = -1;
    std::vector<std::pair<int, int>> raw;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            std::string fmt;
            long long nn, mm;
            if (!(ls >> fmt >> nn >> mm) || (fmt != "edge" && fmt != "col") || nn < 0 || mm < 0)
                throw ParseError("dimacs line " + std::to_string(lineno) +
                                 ": malformed problem header");
            n = static_cast<int>(nn);
            declared_m = mm;
        } else if (tag == "e") {
            if (n < 0)
                throw ParseError("dimacs line " + std::to_string(lineno) +
                                 ": edge before \"p edge\" header");
            long long a, b;
            if (!(ls >> a >> b))
                throw ParseError("dimacs line " + std::to_string(lineno) + ": malformed edge line");
            if (a < 1 || b < 1 || a > n || b > n)
                throw StructuralError("dimacs line " + std::to_string(lineno) +
                                      ": vertex id out of range 1.." + std::to_string(n));
            if (a == b)
                throw StructuralError("dimacs line " + std::to_string(lineno) + ": self-loop");
            raw.emplace_back(static_cast<int>(a) - 1, static_cast<int>(b) - 1);
        }
        // other record types (n, d, x, ...) ignored
    }
    if (n < 0) throw ParseError("dimacs: missing \"p edge\" header");
    ParseInfo pi;
    dedup_pairs(raw, &pi.duplicate_edges);
    if (declared_m >= 0)
        pi.declared_edge_mismatch =
            static_cast<int>(std::llabs(declared_m - static_cast<long long>(raw.size())));
    if (info) *info = pi;
    return Graph::from_edges(n, raw);
}

std::string serialize_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "# n=" << g.vertex_count() << "\n";
    for (auto e : g.edges()) out << e.u << " " << e.v << "\n";
    return out.str();
}

Graph er_sample(int n, double p, std::uint64_t seed) {
    if (n < 0) throw StructuralError("er_sample: negative n");
    if (p < 0.0 || p > 1.0) throw StructuralError("er_sample: p outside [0,1]");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            // top 53 bits -> [0,1); implementation-defined distributions avoided
            double x = static_cast<double>(rng() >> 11) * 0x1p-53;
            if (x < p) edges.emplace_back(u, v);
        }
    return Graph::from_edges(n, edges);
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& s) {
    std::vector<int> verts(s);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<int> newid(g.vertex_count(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        int v = verts[i];
        if (v < 0 || v >= g.vertex_count())
            throw StructuralError("induced_subgraph: vertex id out of range: " + std::to_string(v));
        newid[v] = static_cast<int>(i);
    }
    std::vector<std::pair<int, int>> edges;
    for (int v : verts)
        for (int u : g.neighbors(v))
            if (v < u && newid[u] != -1) edges.emplace_back(newid[v], newid[u]);
    return Graph::from_edges(static_cast<int>(verts.size()), edges);
}

bool is_vertex_cover(const Graph& g, const std::vector<int>& cover) {
    std::vector<char> in(g.vertex_count(), 0);
    for (int v : cover) {
        if (v < 0 || v >= g.vertex_count())
            throw StructuralError("is_vertex_cover: vertex id out of range: " + std::to_string(v));
        in[v] = 1;
    }
    for (int u = 0; u < g.vertex_count(); ++u) {
        if (in[u]) continue;
        for (int v : g.neighbors(u))
            if (u < v && !in[v]) return false;
    }
    return true;
}

}  // namespace vcobs
