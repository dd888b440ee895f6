#include "vcobs/canon.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include "vcobs/errors.hpp"

namespace vcobs {

namespace {

int distinct_count(const std::vector<int>& colors) {
    std::vector<int> c(colors);
    std::sort(c.begin(), c.end());
    return static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
}

// One pass of color refinement: split cells by the multiset of neighbor
// colors. Keys are ordered (old color first), so cells never merge and the
// resulting color order is permutation-invariant.
std::vector<int> refine(const Graph& g, std::vector<int> colors) {
    const int n = g.vertex_count();
    int count = distinct_count(colors);
    while (true) {
        std::vector<std::pair<std::vector<int>, int>> keyed(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> key;
            key.reserve(g.degree(v) + 1);
            key.push_back(colors[v]);
            for (int u : g.neighbors(v)) key.push_back(colors[u]);
            std::sort(key.begin() + 1, key.end());
            keyed[v] = {std::move(key), v};
        }
        std::map<std::vector<int>, int> rank;
        for (const auto& [key, v] : keyed) rank.emplace(key, 0);
        int next = 0;
        for (auto& [key, r] : rank) r = next++;
        for (const auto& [key, v] : keyed) colors[v] = rank.at(key);
        if (next == count) return colors;
        count = next;
    }
}

std::string encode_permuted(const Graph& g, const std::vector<int>& label) {
    const int n = g.vertex_count();
    std::vector<std::pair<int, int>> edges;
    for (auto e : g.edges()) edges.emplace_back(label[e.u], label[e.v]);
    return graph6_encode(Graph::from_edges(n, edges));
}

void canon_search(const Graph& g, std::vector<int> colors, std::string& best) {
    const int n = g.vertex_count();
    colors = refine(g, colors);
    if (distinct_count(colors) == n) {
        std::string code = encode_permuted(g, colors);
        if (best.empty() || code < best) best = code;
        return;
    }
    int cell = -1;  // smallest color with >= 2 members
    std::vector<int> size(n + 1, 0);
    for (int c : colors) ++size[c];
    for (int c = 0; c <= n; ++c)
        if (size[c] >= 2) {
            cell = c;
            break;
        }
    for (int v = 0; v < n; ++v) {
        if (colors[v] != cell) continue;
        std::vector<int> split(colors);
        for (int w = 0; w < n; ++w)
            if (w != v && split[w] >= cell) ++split[w];
        canon_search(g, std::move(split), best);
    }
}

}  // namespace

CanonicalCode canonical_form(const Graph& g) {
    const int n = g.vertex_count();
    if (n > kCanonVertexCap)
        throw CapExceeded("canonical_form: n=" + std::to_string(n) + " exceeds cap " +
                          std::to_string(kCanonVertexCap));
    if (n == 0) return {graph6_encode(g)};
    std::vector<int> degrees(n);
    for (int v = 0; v < n; ++v) degrees[v] = g.degree(v);
    std::vector<int> sorted(degrees);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> colors(n);
    for (int v = 0; v < n; ++v)
        colors[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), degrees[v]) -
                                     sorted.begin());
    std::string best;
    canon_search(g, std::move(colors), best);
    return {best};
}

bool are_isomorphic(const Graph& g, const Graph& h) {
    if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
    auto degseq = [](const Graph& x) {
        std::vector<int> d(x.vertex_count());
        for (int v = 0; v < x.vertex_count(); ++v) d[v] = x.degree(v);
        std::sort(d.begin(), d.end());
        return d;
    };
    if (degseq(g) != degseq(h)) return false;
    return canonical_form(g) == canonical_form(h);
}

std::string graph6_encode(const Graph& g) {
    const long long n = g.vertex_count();
    if (n > 258047) throw CapExceeded("graph6_encode: n too large");
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(63 + n));
    } else {
        out.push_back(126);
        out.push_back(static_cast<char>(63 + ((n >> 12) & 63)));
        out.push_back(static_cast<char>(63 + ((n >> 6) & 63)));
        out.push_back(static_cast<char>(63 + (n & 63)));
    }
    int acc = 0, nbits = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, static_cast<int>(j)) ? 1 : 0);
            if (++nbits == 6) {
                out.push_back(static_cast<char>(63 + acc));
                acc = 0;
                nbits = 0;
            }
        }
    if (nbits > 0) out.push_back(static_cast<char>(63 + (acc << (6 - nbits))));
    return out;
}

Graph graph6_decode(const std::string& bytes) {
    std::size_t pos = 0;
    auto need = [&](std::size_t k) {
        if (pos + k > bytes.size()) throw ParseError("graph6: truncated input");
    };
    auto val = [&](std::size_t i) {
        int c = static_cast<unsigned char>(bytes[i]);
        if (c < 63 || c > 126) throw ParseError("graph6: byte out of range at position " +
                                                std::to_string(i));
        return c - 63;
    };
    need(1);
    long long n;
    if (static_cast<unsigned char>(bytes[0]) == 126) {
        need(4);
        n = (static_cast<long long>(val(1)) << 12) | (val(2) << 6) | val(3);
        pos = 4;
    } else {
        n = val(0);
        pos = 1;
    }
    long long nbits = n * (n - 1) / 2;
    std::size_t nbytes = static_cast<std::size_t>((nbits + 5) / 6);
    if (bytes.size() - pos != nbytes)
        throw ParseError("graph6: expected " + std::to_string(nbytes) + " data bytes, got " +
                         std::to_string(bytes.size() - pos));
    std::vector<std::pair<int, int>> edges;
    long long bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit) {
            int byte = val(pos + static_cast<std::size_t>(bit / 6));
            if ((byte >> (5 - bit % 6)) & 1) edges.emplace_back(i, j);
        }
    // padding bits must be zero
    for (long long b = nbits; b < static_cast<long long>(nbytes) * 6; ++b)
        if ((val(pos + static_cast<std::size_t>(b / 6)) >> (5 - b % 6)) & 1)
            throw ParseError("graph6: nonzero padding bits");
    return Graph::from_edges(static_cast<int>(n), edges);
}

}  // namespace vcobs
