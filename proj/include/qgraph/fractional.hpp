#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "qgraph/automorphism.hpp"
#include "qgraph/combinatorics.hpp"
#include "qgraph/config.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/rational.hpp"

namespace qgraph {

// All maximal independent sets, via Bron-Kerbosch with pivoting on the
// complement. Output sets are sorted, and the list is sorted for
// deterministic LP column order.
inline std::vector<std::vector<int>> maximal_independent_sets(const Graph& g) {
    const Graph comp = complement(g);
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    Bitset p(g.n()), x(g.n());
    p.set();
    auto bk = [&](auto&& self, Bitset pp, Bitset xx) -> void {
        if (pp.none() && xx.none()) {
            out.push_back(current);
            return;
        }
        // pivot: vertex of P|X with most neighbors in P
        Bitset both = pp | xx;
        int pivot = -1;
        std::size_t best = 0;
        for (auto u = both.find_first(); u != Bitset::npos; u = both.find_next(u)) {
            const std::size_t cnt = (pp & comp.neighbors(static_cast<int>(u))).count();
            if (pivot == -1 || cnt > best) {
                pivot = static_cast<int>(u);
                best = cnt;
            }
        }
        Bitset ext = pp & ~comp.neighbors(pivot);
        for (auto v = ext.find_first(); v != Bitset::npos; v = ext.find_next(v)) {
            current.push_back(static_cast<int>(v));
            self(self, pp & comp.neighbors(static_cast<int>(v)),
                 xx & comp.neighbors(static_cast<int>(v)));
            current.pop_back();
            pp.reset(v);
            xx.set(v);
        }
    };
    if (g.n() > 0) bk(bk, p, x);
    for (auto& s : out) std::sort(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
}

struct FractionalChromaticResult {
    Rational value;
    // positive weights of the optimal fractional cover, one per maximal
    // independent set used
    std::vector<std::pair<std::vector<int>, Rational>> weights;
    // Kneser homomorphism parameters: scaling the weights by r makes them
    // integral with total d and per-vertex coverage >= r, so X -> K_{d:r}
    // with d/r = value.
    BigInt kneser_d = 0;
    BigInt kneser_r = 1;
};

namespace detail {

// Primal simplex with Bland's rule on: maximize 1'y subject to A y <= 1,
// y >= 0, where rows of A are the maximal independent sets. The optimum is
// chi_f by LP duality, and the dual values read off the slack columns give
// the fractional cover.
struct RationalSimplex {
    int m, n;  // constraints, structural variables
    std::vector<std::vector<Rational>> t;  // m rows x (n + m + 1) columns
    std::vector<Rational> cost;            // reduced-cost row, negated for max
    std::vector<int> basis;

    RationalSimplex(const std::vector<std::vector<int>>& sets, int vertices)
        : m(static_cast<int>(sets.size())), n(vertices) {
        t.assign(m, std::vector<Rational>(n + m + 1, Rational(0)));
        cost.assign(n + m + 1, Rational(0));
        basis.resize(m);
        for (int i = 0; i < m; ++i) {
            for (int v : sets[i]) t[i][v] = 1;
            t[i][n + i] = 1;
            t[i][n + m] = 1;
            basis[i] = n + i;
        }
        for (int j = 0; j < n; ++j) cost[j] = -1;
    }

    void pivot(int row, int col) {
        const Rational piv = t[row][col];
        for (auto& e : t[row]) e /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == row || t[i][col] == 0) continue;
            const Rational f = t[i][col];
            for (int j = 0; j <= n + m; ++j) t[i][j] -= f * t[row][j];
        }
        if (cost[col] != 0) {
            const Rational f = cost[col];
            for (int j = 0; j <= n + m; ++j) cost[j] -= f * t[row][j];
        }
        basis[row] = col;
    }

    void solve() {
        for (;;) {
            int col = -1;
            for (int j = 0; j < n + m; ++j) {
                if (cost[j] < 0) {  // Bland: lowest eligible index enters
                    col = j;
                    break;
                }
            }
            if (col == -1) return;
            int row = -1;
            Rational best_ratio(0);
            for (int i = 0; i < m; ++i) {
                if (t[i][col] <= 0) continue;
                const Rational ratio = t[i][n + m] / t[i][col];
                if (row == -1 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[row])) {
                    row = i;
                    best_ratio = ratio;
                }
            }
            if (row == -1)
                throw std::logic_error("fractional_chromatic: LP unbounded");
            pivot(row, col);
        }
    }
};

}  // namespace detail

// Exact fractional chromatic number over all maximal independent sets.
// chi_f(K_0) = 0 and chi_f(edgeless on n >= 1) = 1 by convention.
inline FractionalChromaticResult fractional_chromatic(const Graph& g,
                                                      const Caps& caps = default_caps()) {
    if (g.n() > caps.fractional_max)
        throw CapError("fractional_chromatic: graph exceeds exact-LP cap");
    FractionalChromaticResult out;
    if (g.n() == 0) {
        out.value = 0;
        return out;
    }
    const auto sets = maximal_independent_sets(g);
    detail::RationalSimplex lp(sets, g.n());
    lp.solve();
    out.value = lp.cost[lp.n + lp.m];

    BigInt lcm_den = 1;
    for (int i = 0; i < lp.m; ++i) {
        const Rational w = lp.cost[lp.n + i];  // dual value on slack column
        if (w > 0) {
            out.weights.emplace_back(sets[i], w);
            lcm_den = boost::multiprecision::lcm(lcm_den, denominator(w));
        }
    }
    out.kneser_r = lcm_den;
    const Rational scaled_total = Rational(out.value) * Rational(lcm_den);
    if (denominator(scaled_total) != 1)
        throw std::logic_error("fractional_chromatic: non-integral scaled total");
    out.kneser_d = numerator(scaled_total);

    // For vertex-transitive inputs chi_f = n / alpha; cross-check the LP.
    if (g.n() <= caps.transitivity_max && is_vertex_transitive(g, caps)) {
        const Rational expected(g.n(), independence_number(g, caps).size);
        if (out.value != expected)
            throw std::logic_error("fractional_chromatic: vertex-transitive cross-check failed");
    }
    return out;
}

// Checks the scaled cover behind the Kneser parameters: total weight d and
// every vertex covered at least r times.
inline bool verify_fractional_witness(const Graph& g, const FractionalChromaticResult& fc) {
    BigInt total = 0;
    std::vector<BigInt> cover(g.n(), 0);
    for (const auto& [set, w] : fc.weights) {
        const Rational scaled = w * Rational(fc.kneser_r);
        if (denominator(scaled) != 1) return false;
        const BigInt ws = numerator(scaled);
        total += ws;
        for (int v : set) cover[v] += ws;
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = i + 1; j < set.size(); ++j)
                if (g.adjacent(set[i], set[j])) return false;
    }
    if (total != fc.kneser_d) return false;
    for (int v = 0; v < g.n(); ++v)
        if (cover[v] < fc.kneser_r) return false;
    return true;
}

}  // namespace qgraph
