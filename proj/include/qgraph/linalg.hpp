#pragma once

#include <cmath>
#include <stdexcept>

#include "qgraph/matrix.hpp"

namespace qgraph {

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const Complex s = a.at(i, j);
            if (s == 0.0) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    c.at(i * b.rows() + k, j * b.cols() + l) = s * b.at(k, l);
        }
    return c;
}

// Row-stacking vectorization: vec(M) is the column whose blocks are the
// rows of M in order.
inline ComplexMatrix vec(const ComplexMatrix& m) {
    ComplexMatrix v(m.rows() * m.cols(), 1);
    int idx = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) v.at(idx++, 0) = m.at(i, j);
    return v;
}

// tr_A on a (dA*dB) x (dA*dB) matrix with the A factor first:
// tr_A(M (x) N) = tr(M) N, extended linearly.
inline ComplexMatrix partial_trace_first(const ComplexMatrix& m, int d_a, int d_b) {
    if (m.rows() != d_a * d_b || m.cols() != d_a * d_b)
        throw std::invalid_argument("partial_trace_first: shape mismatch");
    ComplexMatrix out(d_b, d_b);
    for (int j = 0; j < d_b; ++j)
        for (int l = 0; l < d_b; ++l) {
            Complex s = 0.0;
            for (int i = 0; i < d_a; ++i) s += m.at(i * d_b + j, i * d_b + l);
            out.at(j, l) = s;
        }
    return out;
}

// The block map [[Re, Im], [-Im, Re]]: a ring homomorphism into real
// matrices that doubles projector ranks and keeps Hermitian inputs
// symmetric.
inline ComplexMatrix realify(const ComplexMatrix& a) {
    if (!a.square()) throw std::invalid_argument("realify: non-square input");
    const int d = a.rows();
    ComplexMatrix out(2 * d, 2 * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const double re = a.at(i, j).real(), im = a.at(i, j).imag();
            out.at(i, j) = re;
            out.at(i, j + d) = im;
            out.at(i + d, j) = -im;
            out.at(i + d, j + d) = re;
        }
    return out;
}

// Canonical maximally entangled state (1/sqrt(d)) sum e_i (x) e_i as a
// d^2 x 1 column.
inline ComplexMatrix max_entangled_vector(int d) {
    if (d < 1) throw std::invalid_argument("max_entangled_vector: d must be >= 1");
    ComplexMatrix v(d * d, 1);
    const double inv = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) v.at(i * d + i, 0) = inv;
    return v;
}

}  // namespace qgraph
