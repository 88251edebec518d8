#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgraph/config.hpp"

namespace qgraph {

using Bitset = boost::dynamic_bitset<>;

// How the per-vertex labels of a graph were produced. Labels are metadata
// only; vertices are always dense 0-based indices.
enum class LabelTag { PlainIndex, SignVector, Subset, Pair };

// Finite simple undirected loopless graph. Immutable after construction;
// safe to share across threads.
class Graph {
public:
    Graph() = default;

    static Graph from_edges(int n, std::vector<std::pair<int, int>> edges,
                            std::vector<std::string> labels = {},
                            LabelTag tag = LabelTag::PlainIndex) {
        if (n < 0) throw std::invalid_argument("graph: negative vertex count");
        if (!labels.empty() && static_cast<int>(labels.size()) != n)
            throw std::invalid_argument("graph: label arity mismatch");
        for (auto& [u, v] : edges) {
            if (u == v) throw std::invalid_argument("graph: self-loop rejected");
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw std::invalid_argument("graph: edge endpoint out of range");
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        Graph g;
        g.n_ = n;
        g.edges_ = std::move(edges);
        g.labels_ = std::move(labels);
        g.tag_ = tag;
        g.adj_.assign(n, Bitset(n));
        for (const auto& [u, v] : g.edges_) {
            g.adj_[u].set(v);
            g.adj_[v].set(u);
        }
        return g;
    }

    int n() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool adjacent(int u, int v) const { return u != v && adj_[u].test(v); }
    const Bitset& neighbors(int u) const { return adj_[u]; }
    int degree(int u) const { return static_cast<int>(adj_[u].count()); }

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int u) const { return labels_[u]; }
    LabelTag label_tag() const { return tag_; }

    bool same_edge_set(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<Bitset> adj_;
    std::vector<std::string> labels_;
    LabelTag tag_ = LabelTag::PlainIndex;
};

inline Graph complete(int n) {
    if (n < 1) throw std::invalid_argument("complete: n must be >= 1");
    std::vector<std::pair<int, int>> e;
    e.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph::from_edges(n, std::move(e));
}

inline Graph empty_graph(int n) {
    if (n < 0) throw std::invalid_argument("empty_graph: n must be >= 0");
    return Graph::from_edges(n, {});
}

inline Graph cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
    std::vector<std::pair<int, int>> e;
    e.reserve(n);
    for (int u = 0; u < n; ++u) e.emplace_back(u, (u + 1) % n);
    return Graph::from_edges(n, std::move(e));
}

inline Graph path(int n) {
    if (n < 1) throw std::invalid_argument("path: n must be >= 1");
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
    return Graph::from_edges(n, std::move(e));
}

// All r-subsets of {0..n-1} in lexicographic order of their sorted element
// lists; this fixes the vertex numbering of kneser(n, r) that the coset
// lifts rely on.
inline std::vector<std::vector<int>> kneser_subsets(int n, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline int kneser_vertex_index(int n, int r, const std::vector<int>& subset) {
    // Lexicographic rank of a sorted r-subset of {0..n-1}.
    auto binom = [](int a, int b) -> long long {
        if (b < 0 || b > a) return 0;
        long long res = 1;
        for (int i = 0; i < b; ++i) res = res * (a - i) / (i + 1);
        return res;
    };
    long long rank = 0;
    int prev = -1;
    for (int i = 0; i < r; ++i) {
        for (int c = prev + 1; c < subset[i]; ++c) rank += binom(n - c - 1, r - i - 1);
        prev = subset[i];
    }
    return static_cast<int>(rank);
}

inline std::string subset_label(const std::vector<int>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

inline Graph kneser(int n, int r) {
    if (r < 1) throw std::invalid_argument("kneser: r must be >= 1");
    if (r > n) throw std::invalid_argument("kneser: r must be <= n");
    auto subsets = kneser_subsets(n, r);
    const int m = static_cast<int>(subsets.size());
    std::vector<std::string> labels(m);
    std::vector<Bitset> masks(m, Bitset(n));
    for (int i = 0; i < m; ++i) {
        labels[i] = subset_label(subsets[i]);
        for (int x : subsets[i]) masks[i].set(x);
    }
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (!masks[i].intersects(masks[j])) e.emplace_back(i, j);
    // 2r > n yields an empty edge set; allowed, the caller sees it in the data.
    return Graph::from_edges(m, std::move(e), std::move(labels), LabelTag::Subset);
}

inline Graph petersen() { return kneser(5, 2); }

// Vertices are the +-1 vectors of length n (bit set = minus sign); two
// vectors are adjacent iff orthogonal, i.e. they disagree in exactly n/2
// positions. Odd n therefore has no edges.
inline Graph omega_graph(int n, const Caps& caps = default_caps()) {
    if (n < 1) throw std::invalid_argument("omega_graph: n must be >= 1");
    if (n > caps.omega_graph_max)
        throw CapError("omega_graph: n exceeds cap " + std::to_string(caps.omega_graph_max));
    const int m = 1 << n;
    std::vector<std::string> labels(m);
    for (int u = 0; u < m; ++u) {
        std::string s(n, '+');
        for (int b = 0; b < n; ++b)
            if (u >> b & 1) s[b] = '-';
        labels[u] = s;
    }
    std::vector<std::pair<int, int>> e;
    if (n % 2 == 0) {
        for (int u = 0; u < m; ++u)
            for (int v = u + 1; v < m; ++v)
                if (__builtin_popcount(static_cast<unsigned>(u ^ v)) == n / 2)
                    e.emplace_back(u, v);
    }
    return Graph::from_edges(m, std::move(e), std::move(labels), LabelTag::SignVector);
}

inline Graph complement(const Graph& g) {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (!g.adjacent(u, v)) e.emplace_back(u, v);
    std::vector<std::string> labels = g.labels();
    return Graph::from_edges(g.n(), std::move(e), std::move(labels), g.label_tag());
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<std::pair<int, int>> e = a.edges();
    for (const auto& [u, v] : b.edges()) e.emplace_back(u + a.n(), v + a.n());
    return Graph::from_edges(a.n() + b.n(), std::move(e));
}

namespace detail {

inline std::string pair_label(const Graph& x, const Graph& y, int u, int v) {
    std::string lx = x.has_labels() ? x.label(u) : std::to_string(u);
    std::string ly = y.has_labels() ? y.label(v) : std::to_string(v);
    return "(" + lx + "," + ly + ")";
}

template <typename AdjPred>
Graph product_graph(const Graph& x, const Graph& y, const Caps& caps, AdjPred adjacent) {
    const long long total = static_cast<long long>(x.n()) * y.n();
    if (total > caps.product_max)
        throw CapError("product: vertex count exceeds cap");
    const int ny = y.n();
    const int m = static_cast<int>(total);
    std::vector<std::string> labels(m);
    for (int u = 0; u < x.n(); ++u)
        for (int v = 0; v < ny; ++v) labels[u * ny + v] = pair_label(x, y, u, v);
    std::vector<std::pair<int, int>> e;
    for (int a = 0; a < m; ++a) {
        const int xu = a / ny, yu = a % ny;
        for (int b = a + 1; b < m; ++b) {
            const int xv = b / ny, yv = b % ny;
            if (adjacent(xu, yu, xv, yv)) e.emplace_back(a, b);
        }
    }
    return Graph::from_edges(m, std::move(e), std::move(labels), LabelTag::Pair);
}

}  // namespace detail

// Vertex ordering of every product is row-major in (x, y); certificate
// indexing across modules depends on this.
inline Graph homomorphic_product(const Graph& x, const Graph& y,
                                 const Caps& caps = default_caps()) {
    return detail::product_graph(x, y, caps, [&](int xu, int yu, int xv, int yv) {
        return xu == xv || (x.adjacent(xu, xv) && !y.adjacent(yu, yv));
    });
}

inline Graph cartesian_product(const Graph& x, const Graph& y,
                               const Caps& caps = default_caps()) {
    return detail::product_graph(x, y, caps, [&](int xu, int yu, int xv, int yv) {
        return (xu == xv && y.adjacent(yu, yv)) || (yu == yv && x.adjacent(xu, xv));
    });
}

inline Graph strong_product(const Graph& x, const Graph& y,
                            const Caps& caps = default_caps()) {
    return detail::product_graph(x, y, caps, [&](int xu, int yu, int xv, int yv) {
        const bool xok = xu == xv || x.adjacent(xu, xv);
        const bool yok = yu == yv || y.adjacent(yu, yv);
        return xok && yok;
    });
}

inline Graph strong_power(const Graph& x, int k, const Caps& caps = default_caps()) {
    if (k < 1) throw std::invalid_argument("strong_power: k must be >= 1");
    Graph out = x;
    for (int i = 1; i < k; ++i) out = strong_product(out, x, caps);
    return out;
}

struct Components {
    std::vector<Graph> parts;
    // parts[i] vertex j corresponds to original vertex original_vertices[i][j]
    std::vector<std::vector<int>> original_vertices;
    std::vector<int> component_of;  // per original vertex
};

inline Components components(const Graph& g) {
    Components out;
    out.component_of.assign(g.n(), -1);
    for (int s = 0; s < g.n(); ++s) {
        if (out.component_of[s] != -1) continue;
        const int cid = static_cast<int>(out.parts.size());
        std::vector<int> verts;
        std::queue<int> q;
        q.push(s);
        out.component_of[s] = cid;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            verts.push_back(u);
            for (auto v = g.neighbors(u).find_first(); v != Bitset::npos;
                 v = g.neighbors(u).find_next(v)) {
                if (out.component_of[v] == -1) {
                    out.component_of[v] = cid;
                    q.push(static_cast<int>(v));
                }
            }
        }
        std::sort(verts.begin(), verts.end());
        std::vector<int> to_new(g.n(), -1);
        for (std::size_t i = 0; i < verts.size(); ++i) to_new[verts[i]] = static_cast<int>(i);
        std::vector<std::pair<int, int>> e;
        for (const auto& [u, v] : g.edges())
            if (out.component_of[u] == cid) e.emplace_back(to_new[u], to_new[v]);
        std::vector<std::string> labels;
        if (g.has_labels())
            for (int v : verts) labels.push_back(g.label(v));
        out.parts.push_back(
            Graph::from_edges(static_cast<int>(verts.size()), std::move(e), std::move(labels), g.label_tag()));
        out.original_vertices.push_back(std::move(verts));
    }
    return out;
}

inline bool is_connected(const Graph& g) {
    return g.n() <= 1 || components(g).parts.size() == 1;
}

// Length of a shortest odd cycle, or nullopt for bipartite inputs.
// BFS layering from every start: an edge inside one BFS level closes an
// odd closed walk of length d(u)+d(v)+1, and the minimum over all starts
// is attained by a simple cycle.
inline std::optional<int> odd_girth(const Graph& g) {
    int best = -1;
    std::vector<int> dist(g.n());
    for (int s = 0; s < g.n(); ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<int> q;
        q.push(s);
        dist[s] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto v = g.neighbors(u).find_first(); v != Bitset::npos;
                 v = g.neighbors(u).find_next(v)) {
                if (dist[v] == -1) {
                    dist[v] = dist[u] + 1;
                    q.push(static_cast<int>(v));
                }
            }
        }
        for (const auto& [u, v] : g.edges()) {
            if (dist[u] != -1 && dist[u] == dist[v]) {
                int len = dist[u] + dist[v] + 1;
                if (best == -1 || len < best) best = len;
            }
        }
    }
    if (best == -1) return std::nullopt;
    return best;
}

inline bool is_regular(const Graph& g) {
    for (int u = 1; u < g.n(); ++u)
        if (g.degree(u) != g.degree(0)) return false;
    return true;
}

}  // namespace qgraph
