#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "qgraph/config.hpp"
#include "qgraph/graph.hpp"

namespace qgraph {

using Permutation = std::vector<int>;

namespace detail {

// Shared backtracking engine for graph-map searches. Maps vertices of g
// onto vertices of h (g == h for automorphisms) in the given order,
// requiring exact two-sided adjacency agreement with everything mapped
// so far. Degree and neighbor-degree-multiset invariants prune candidates.
class MapSearch {
public:
    MapSearch(const Graph& g, const Graph& h) : g_(g), h_(h) {
        profile_g_ = profiles(g_);
        profile_h_ = profiles(h_);
    }

    // order: the source-vertex processing order; forced: prefix assignments
    // (source, target) that must hold. Returns all complete maps when
    // collect_all, otherwise stops at the first.
    std::vector<Permutation> run(const std::vector<int>& order,
                                 const std::vector<std::pair<int, int>>& forced,
                                 bool collect_all) {
        results_.clear();
        collect_all_ = collect_all;
        map_.assign(g_.n(), -1);
        used_.assign(h_.n(), false);
        for (const auto& [s, t] : forced) {
            if (!compatible(s, t)) return {};
            map_[s] = t;
            used_[t] = true;
        }
        order_ = order;
        extend(0);
        return std::move(results_);
    }

private:
    static std::vector<std::vector<int>> profiles(const Graph& g) {
        std::vector<std::vector<int>> p(g.n());
        for (int u = 0; u < g.n(); ++u) {
            for (auto v = g.neighbors(u).find_first(); v != Bitset::npos;
                 v = g.neighbors(u).find_next(v))
                p[u].push_back(g.degree(static_cast<int>(v)));
            std::sort(p[u].begin(), p[u].end());
        }
        return p;
    }

    bool compatible(int s, int t) const {
        if (g_.degree(s) != h_.degree(t)) return false;
        if (profile_g_[s] != profile_h_[t]) return false;
        for (int p = 0; p < g_.n(); ++p) {
            if (map_[p] == -1 || p == s) continue;
            if (g_.adjacent(s, p) != h_.adjacent(t, map_[p])) return false;
        }
        return true;
    }

    bool extend(std::size_t pos) {
        while (pos < order_.size() && map_[order_[pos]] != -1) ++pos;
        if (pos == order_.size()) {
            results_.push_back(map_);
            return !collect_all_;
        }
        const int s = order_[pos];
        for (int t = 0; t < h_.n(); ++t) {
            if (used_[t] || !compatible(s, t)) continue;
            map_[s] = t;
            used_[t] = true;
            const bool done = extend(pos + 1);
            map_[s] = -1;
            used_[t] = false;
            if (done) return true;
        }
        return false;
    }

    const Graph& g_;
    const Graph& h_;
    std::vector<std::vector<int>> profile_g_, profile_h_;
    std::vector<int> map_, order_;
    std::vector<char> used_;
    bool collect_all_ = false;
    std::vector<Permutation> results_;
};

// BFS-flavored order: repeatedly pick the unplaced vertex with the most
// already-placed neighbors (ties by lowest index), so adjacency constraints
// bind as early as possible.
inline std::vector<int> expansion_order(const Graph& g, const std::vector<int>& seeds) {
    std::vector<int> order;
    std::vector<char> placed(g.n(), false);
    for (int s : seeds) {
        order.push_back(s);
        placed[s] = true;
    }
    while (static_cast<int>(order.size()) < g.n()) {
        int best = -1, best_score = -1;
        for (int u = 0; u < g.n(); ++u) {
            if (placed[u]) continue;
            int score = 0;
            for (int v : order)
                if (g.adjacent(u, v)) ++score;
            if (score > best_score || (score == best_score && best == -1)) {
                best = u;
                best_score = score;
            }
        }
        order.push_back(best);
        placed[best] = true;
    }
    return order;
}

}  // namespace detail

// The full automorphism group, enumerated by degree-pruned backtracking.
inline std::vector<Permutation> automorphisms(const Graph& g,
                                              const Caps& caps = default_caps()) {
    if (g.n() > caps.automorphism_max)
        throw CapError("automorphisms: graph too large for full-group enumeration (cap " +
                       std::to_string(caps.automorphism_max) + ")");
    if (g.n() == 0) return {Permutation{}};
    detail::MapSearch search(g, g);
    auto order = detail::expansion_order(g, {0});
    return search.run(order, {}, true);
}

inline bool exists_automorphism_mapping(const Graph& g,
                                        const std::vector<std::pair<int, int>>& forced) {
    detail::MapSearch search(g, g);
    std::vector<int> seeds;
    for (const auto& [s, t] : forced) {
        (void)t;
        seeds.push_back(s);
    }
    auto order = detail::expansion_order(g, seeds);
    return !search.run(order, forced, false).empty();
}

inline bool is_vertex_transitive(const Graph& g, const Caps& caps = default_caps()) {
    if (g.n() > caps.transitivity_max)
        throw CapError("is_vertex_transitive: graph too large (cap " +
                       std::to_string(caps.transitivity_max) + ")");
    if (g.n() <= 1) return true;
    if (!is_regular(g)) return false;
    for (int v = 1; v < g.n(); ++v)
        if (!exists_automorphism_mapping(g, {{0, v}})) return false;
    return true;
}

inline bool is_edge_transitive(const Graph& g, const Caps& caps = default_caps()) {
    if (g.n() > caps.transitivity_max)
        throw CapError("is_edge_transitive: graph too large (cap " +
                       std::to_string(caps.transitivity_max) + ")");
    if (g.edge_count() <= 1) return true;
    const auto [a, b] = g.edges().front();
    for (const auto& [u, v] : g.edges()) {
        if (exists_automorphism_mapping(g, {{a, u}, {b, v}})) continue;
        if (exists_automorphism_mapping(g, {{a, v}, {b, u}})) continue;
        return false;
    }
    return true;
}

// Brute-force isomorphism with degree-sequence pruning; meant for tiny
// test inputs, not a scalable canonical-labeling routine.
inline std::optional<Permutation> find_isomorphism(const Graph& a, const Graph& b) {
    if (a.n() != b.n() || a.edge_count() != b.edge_count()) return std::nullopt;
    std::vector<int> da, db;
    for (int u = 0; u < a.n(); ++u) da.push_back(a.degree(u));
    for (int u = 0; u < b.n(); ++u) db.push_back(b.degree(u));
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return std::nullopt;
    if (a.n() == 0) return Permutation{};
    detail::MapSearch search(a, b);
    auto order = detail::expansion_order(a, {0});
    auto found = search.run(order, {}, false);
    if (found.empty()) return std::nullopt;
    return found.front();
}

inline bool isomorphic(const Graph& a, const Graph& b) {
    return find_isomorphism(a, b).has_value();
}

}  // namespace qgraph
