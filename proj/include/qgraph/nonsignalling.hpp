#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qgraph/graph.hpp"

namespace qgraph {

// Joint conditional distribution P(y_a, y_b | x_a, x_b) with both parties
// sharing the input alphabet (graph vertices) and the output alphabet.
struct NSCorrelation {
    int n_inputs = 0;
    int n_outputs = 0;
    std::vector<double> table;  // [((xa * n_in + xb) * n_out + ya) * n_out + yb]

    double p(int xa, int xb, int ya, int yb) const {
        return table[((static_cast<std::size_t>(xa) * n_inputs + xb) * n_outputs + ya) *
                         n_outputs +
                     yb];
    }

    void check_shape() const {
        const std::size_t want = static_cast<std::size_t>(n_inputs) * n_inputs * n_outputs *
                                 n_outputs;
        if (table.size() != want || n_inputs < 1 || n_outputs < 1)
            throw std::invalid_argument("correlation: malformed table");
        for (double v : table)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::invalid_argument("correlation: negative or non-finite entry");
    }
};

// Normalization plus both marginal conditions: Alice's marginal must not
// depend on Bob's input and vice versa.
inline bool ns_check(const NSCorrelation& c, double tol = 1e-12) {
    c.check_shape();
    for (int xa = 0; xa < c.n_inputs; ++xa)
        for (int xb = 0; xb < c.n_inputs; ++xb) {
            double total = 0.0;
            for (int ya = 0; ya < c.n_outputs; ++ya)
                for (int yb = 0; yb < c.n_outputs; ++yb) total += c.p(xa, xb, ya, yb);
            if (std::abs(total - 1.0) > tol) return false;
        }
    for (int xa = 0; xa < c.n_inputs; ++xa)
        for (int ya = 0; ya < c.n_outputs; ++ya) {
            double first = 0.0;
            for (int xb = 0; xb < c.n_inputs; ++xb) {
                double marg = 0.0;
                for (int yb = 0; yb < c.n_outputs; ++yb) marg += c.p(xa, xb, ya, yb);
                if (xb == 0)
                    first = marg;
                else if (std::abs(marg - first) > tol)
                    return false;
            }
        }
    for (int xb = 0; xb < c.n_inputs; ++xb)
        for (int yb = 0; yb < c.n_outputs; ++yb) {
            double first = 0.0;
            for (int xa = 0; xa < c.n_inputs; ++xa) {
                double marg = 0.0;
                for (int ya = 0; ya < c.n_outputs; ++ya) marg += c.p(xa, xb, ya, yb);
                if (xa == 0)
                    first = marg;
                else if (std::abs(marg - first) > tol)
                    return false;
            }
        }
    return true;
}

// The correlation winning the (X, K_2)-homomorphism game: weight 1/2 on
// output pairs whose equality pattern matches the input pair's.
inline NSCorrelation k2_correlation(const Graph& x) {
    NSCorrelation c;
    c.n_inputs = x.n();
    c.n_outputs = 2;
    c.table.assign(static_cast<std::size_t>(x.n()) * x.n() * 4, 0.0);
    for (int xa = 0; xa < x.n(); ++xa)
        for (int xb = 0; xb < x.n(); ++xb)
            for (int ya = 0; ya < 2; ++ya)
                for (int yb = 0; yb < 2; ++yb) {
                    const bool in_eq = xa == xb, out_eq = ya == yb;
                    if (in_eq == out_eq)
                        c.table[((static_cast<std::size_t>(xa) * x.n() + xb) * 2 + ya) * 2 +
                                yb] = 0.5;
                }
    return c;
}

// Zero weight on losing outcome pairs of the (X, K_2) game: same inputs
// need equal outputs; adjacent inputs need distinct outputs (adjacency
// in K_2 is inequality).
inline bool wins_k2_game(const NSCorrelation& c, const Graph& x, double tol = 1e-12) {
    c.check_shape();
    if (c.n_inputs != x.n() || c.n_outputs != 2) return false;
    for (int xa = 0; xa < x.n(); ++xa)
        for (int xb = 0; xb < x.n(); ++xb)
            for (int ya = 0; ya < 2; ++ya)
                for (int yb = 0; yb < 2; ++yb) {
                    const bool losing =
                        (xa == xb && ya != yb) || (x.adjacent(xa, xb) && ya == yb);
                    if (losing && c.p(xa, xb, ya, yb) > tol) return false;
                }
    return true;
}

}  // namespace qgraph
