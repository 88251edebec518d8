#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgraph/automorphism.hpp"
#include "qgraph/config.hpp"
#include "qgraph/graph.hpp"

namespace qgraph {

// Adjacency-preserving vertex map. Validated at construction: every source
// edge must land on a target edge (which also forbids collapsing an edge).
struct Homomorphism {
    Graph source;
    Graph target;
    std::vector<int> map;

    Homomorphism(Graph src, Graph tgt, std::vector<int> m)
        : source(std::move(src)), target(std::move(tgt)), map(std::move(m)) {
        if (static_cast<int>(map.size()) != source.n())
            throw std::invalid_argument("homomorphism: map length mismatch");
        for (int v : map)
            if (v < 0 || v >= target.n())
                throw std::invalid_argument("homomorphism: image out of range");
        for (const auto& [u, v] : source.edges())
            if (!target.adjacent(map[u], map[v]))
                throw std::invalid_argument("homomorphism: edge (" + std::to_string(u) + "," +
                                            std::to_string(v) + ") not preserved");
    }
};

namespace detail {

// Tomita-style maximum clique: branch and bound with a greedy-coloring
// upper bound. Vertices are pre-sorted by descending degree (ties by
// lowest index) so in-search index order is the deterministic tie-break.
class MaxClique {
public:
    explicit MaxClique(const Graph& g) : g_(g), n_(g.n()) {
        perm_.resize(n_);
        std::iota(perm_.begin(), perm_.end(), 0);
        std::stable_sort(perm_.begin(), perm_.end(), [&](int a, int b) {
            return g.degree(a) != g.degree(b) ? g.degree(a) > g.degree(b) : a < b;
        });
        adj_.assign(n_, Bitset(n_));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                if (g.adjacent(perm_[i], perm_[j])) adj_[i].set(j);
    }

    std::vector<int> solve() {
        best_.clear();
        current_.clear();
        if (n_ == 0) return {};
        Bitset all(n_);
        all.set();
        expand(all);
        std::vector<int> witness;
        for (int i : best_) witness.push_back(perm_[i]);
        std::sort(witness.begin(), witness.end());
        return witness;
    }

private:
    void expand(Bitset candidates) {
        std::vector<int> order, bound;
        color_sort(candidates, order, bound);
        for (int i = static_cast<int>(order.size()) - 1; i >= 0; --i) {
            if (current_.size() + bound[i] <= best_.size()) return;
            const int v = order[i];
            current_.push_back(v);
            Bitset next = candidates & adj_[v];
            if (next.none()) {
                if (current_.size() > best_.size()) best_ = current_;
            } else {
                expand(next);
            }
            current_.pop_back();
            candidates.reset(v);
        }
    }

    // Greedy sequential coloring of the candidate set; color numbers are
    // the clique-size bound for each vertex's subtree.
    void color_sort(const Bitset& candidates, std::vector<int>& order,
                    std::vector<int>& bound) const {
        Bitset uncolored = candidates;
        int color = 0;
        while (uncolored.any()) {
            ++color;
            Bitset avail = uncolored;
            while (avail.any()) {
                const auto v = avail.find_first();
                avail.reset(v);
                uncolored.reset(v);
                avail -= adj_[v];
                order.push_back(static_cast<int>(v));
                bound.push_back(color);
            }
        }
    }

    const Graph& g_;
    int n_;
    std::vector<int> perm_;
    std::vector<Bitset> adj_;
    std::vector<int> current_, best_;
};

}  // namespace detail

struct CliqueResult {
    int size = 0;
    std::vector<int> witness;
};

inline CliqueResult clique_number(const Graph& g, const Caps& caps = default_caps()) {
    if (g.n() > caps.branch_and_bound_max)
        throw CapError("clique_number: graph exceeds branch-and-bound cap");
    detail::MaxClique solver(g);
    CliqueResult r;
    r.witness = solver.solve();
    r.size = static_cast<int>(r.witness.size());
    for (std::size_t i = 0; i < r.witness.size(); ++i)
        for (std::size_t j = i + 1; j < r.witness.size(); ++j)
            if (!g.adjacent(r.witness[i], r.witness[j]))
                throw std::logic_error("clique_number: witness is not a clique");
    return r;
}

// alpha(K_0) = 0 by convention.
inline CliqueResult independence_number(const Graph& g, const Caps& caps = default_caps()) {
    CliqueResult r = clique_number(complement(g), caps);
    for (std::size_t i = 0; i < r.witness.size(); ++i)
        for (std::size_t j = i + 1; j < r.witness.size(); ++j)
            if (g.adjacent(r.witness[i], r.witness[j]))
                throw std::logic_error("independence_number: witness not independent");
    return r;
}

// Backtracking CSP with forward checking. Source vertices are assigned in
// index order with target candidates ascending, so the first solution found
// is the lexicographically smallest map array.
inline std::optional<Homomorphism> find_homomorphism(const Graph& x, const Graph& y,
                                                     const Caps& caps = default_caps()) {
    const long long space = static_cast<long long>(x.n()) * y.n();
    if (space > caps.hom_search_max)
        throw CapError("find_homomorphism: |V(x)|*|V(y)| exceeds cap");
    if (x.n() == 0) return Homomorphism(x, y, {});
    if (y.n() == 0) return std::nullopt;
    if (x.edge_count() > 0 && y.edge_count() == 0) return std::nullopt;

    const int nx = x.n();
    Bitset full(y.n());
    full.set();
    std::vector<Bitset> domain(nx, full);
    std::vector<int> map(nx, -1);
    std::vector<std::pair<int, Bitset>> trail;

    auto assign = [&](auto&& self, int u) -> bool {
        if (u == nx) return true;
        for (auto t = domain[u].find_first(); t != Bitset::npos; t = domain[u].find_next(t)) {
            const std::size_t trail_mark = trail.size();
            bool dead = false;
            for (auto w = x.neighbors(u).find_first(); w != Bitset::npos;
                 w = x.neighbors(u).find_next(w)) {
                if (static_cast<int>(w) <= u) continue;
                trail.emplace_back(static_cast<int>(w), domain[w]);
                domain[w] &= y.neighbors(static_cast<int>(t));
                if (domain[w].none()) {
                    dead = true;
                    break;
                }
            }
            if (!dead) {
                map[u] = static_cast<int>(t);
                if (self(self, u + 1)) return true;
                map[u] = -1;
            }
            while (trail.size() > trail_mark) {
                domain[trail.back().first] = std::move(trail.back().second);
                trail.pop_back();
            }
        }
        return false;
    };
    if (!assign(assign, 0)) return std::nullopt;
    return Homomorphism(x, y, map);
}

struct ChromaticResult {
    int chi = 0;
    std::vector<int> coloring;
};

// Exact chromatic number: iterative deepening on find_homomorphism(g, K_c)
// starting at the clique lower bound. chi(edgeless on n>=1) = 1, chi(K_0) = 0.
inline ChromaticResult chromatic_number(const Graph& g, const Caps& caps = default_caps()) {
    if (g.n() == 0) return {0, {}};
    if (g.n() > caps.branch_and_bound_max)
        throw CapError("chromatic_number: graph exceeds cap");
    const int lower = clique_number(g, caps).size;
    for (int c = std::max(1, lower);; ++c) {
        Caps relaxed = caps;
        relaxed.hom_search_max = std::max<long long>(caps.hom_search_max,
                                                     static_cast<long long>(g.n()) * c);
        if (auto h = find_homomorphism(g, complete(c), relaxed))
            return {c, h->map};
    }
}

// Forward direction of the homomorphic-product correspondence: the graph
// of a homomorphism X -> Y is an independent set of size |V(X)| in the
// product, using the row-major (x, y) vertex numbering.
inline std::vector<int> hom_to_independent_set(const Homomorphism& h) {
    std::vector<int> set;
    const int ny = h.target.n();
    for (int u = 0; u < h.source.n(); ++u) set.push_back(u * ny + h.map[u]);
    return set;
}

inline Homomorphism independent_set_to_hom(const std::vector<int>& set, const Graph& x,
                                           const Graph& y) {
    if (static_cast<int>(set.size()) != x.n())
        throw std::invalid_argument("independent_set_to_hom: set size must equal |V(x)|");
    const int ny = y.n();
    std::vector<int> map(x.n(), -1);
    for (int s : set) {
        if (s < 0 || s >= x.n() * ny)
            throw std::invalid_argument("independent_set_to_hom: vertex out of range");
        const int xu = s / ny, yu = s % ny;
        if (map[xu] != -1)
            throw std::invalid_argument("independent_set_to_hom: two vertices share a fiber");
        map[xu] = yu;
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t j = i + 1; j < set.size(); ++j) {
            const int xa = set[i] / ny, ya = set[i] % ny;
            const int xb = set[j] / ny, yb = set[j] % ny;
            const bool adj = xa == xb || (x.adjacent(xa, xb) && !y.adjacent(ya, yb));
            if (adj)
                throw std::invalid_argument("independent_set_to_hom: set is not independent");
        }
    }
    return Homomorphism(x, y, map);  // constructor re-verifies adjacency
}

namespace detail {

inline void check_transitive_group(const std::vector<Permutation>& group, int n) {
    if (group.empty()) throw std::invalid_argument("group: empty");
    for (const auto& p : group)
        if (static_cast<int>(p.size()) != n)
            throw std::invalid_argument("group: permutation arity mismatch");
    std::vector<char> orbit(n, false);
    for (const auto& p : group) orbit[p[0]] = true;
    for (int v = 0; v < n; ++v)
        if (!orbit[v])
            throw std::invalid_argument("group: does not act transitively on the target");
}

}  // namespace detail

// Coset lift: given h : X -> Y and a transitive automorphism subgroup G of Y,
// maps the product vertex (x, y) to the coset {g in G : g(y) = h(x)}, an
// r-subset of G with r = |G| / |V(Y)|, yielding X |x Y -> K_{|G|:r}.
inline Homomorphism kneser_lift_classical(const Homomorphism& h,
                                          const std::vector<Permutation>& group) {
    const Graph& x = h.source;
    const Graph& y = h.target;
    detail::check_transitive_group(group, y.n());
    const int gsize = static_cast<int>(group.size());
    if (gsize % y.n() != 0)
        throw std::invalid_argument("kneser_lift_classical: |G| not divisible by |V(Y)|");
    const int r = gsize / y.n();

    Graph product = homomorphic_product(x, y);
    Graph target = kneser(gsize, r);
    std::vector<int> map(product.n());
    for (int xu = 0; xu < x.n(); ++xu) {
        for (int yu = 0; yu < y.n(); ++yu) {
            std::vector<int> coset;
            for (int gi = 0; gi < gsize; ++gi)
                if (group[gi][yu] == h.map[xu]) coset.push_back(gi);
            if (static_cast<int>(coset.size()) != r)
                throw std::logic_error("kneser_lift_classical: coset size != |G|/|V(Y)|");
            map[xu * y.n() + yu] = kneser_vertex_index(gsize, r, coset);
        }
    }
    return Homomorphism(std::move(product), std::move(target), std::move(map));
}

// Rotation subgroup of Aut(C_n); convenient transitive group for lifts.
inline std::vector<Permutation> cyclic_rotations(int n) {
    std::vector<Permutation> out;
    for (int s = 0; s < n; ++s) {
        Permutation p(n);
        for (int i = 0; i < n; ++i) p[i] = (i + s) % n;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace qgraph
