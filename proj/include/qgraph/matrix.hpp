#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qgraph/graph.hpp"

namespace qgraph {

using Complex = std::complex<double>;

// Dense complex matrix, row-major. Entries are plain (re, im) binary64
// pairs; serialization writes them explicitly.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("matrix: negative shape");
    }

    static ComplexMatrix zeros(int r, int c) { return ComplexMatrix(r, c); }

    static ComplexMatrix identity(int d) {
        ComplexMatrix m(d, d);
        for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix from_data(int rows, int cols, std::vector<Complex> data) {
        if (static_cast<std::size_t>(rows) * cols != data.size())
            throw std::invalid_argument("matrix: data size mismatch");
        for (const auto& z : data)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw std::invalid_argument("matrix: NaN/Inf entry rejected");
        ComplexMatrix m;
        m.rows_ = rows;
        m.cols_ = cols;
        m.a_ = std::move(data);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    Complex& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Complex& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const std::vector<Complex>& data() const { return a_; }
    std::vector<Complex>& data() { return a_; }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m.at(j, i) = std::conj(at(i, j));
        return m;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix m = *this;
        for (auto& z : m.a_) z = std::conj(z);
        return m;
    }

    Complex trace() const {
        Complex t = 0.0;
        for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_imag_abs() const {
        double s = 0.0;
        for (const auto& z : a_) s = std::max(s, std::abs(z.imag()));
        return s;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_shape(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    ComplexMatrix& operator*=(Complex s) {
        for (auto& z : a_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix multiply: shape mismatch");
        ComplexMatrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int k = 0; k < a.cols_; ++k) {
                const Complex v = a.at(i, k);
                if (v == 0.0) continue;
                for (int j = 0; j < b.cols_; ++j) c.at(i, j) += v * b.at(k, j);
            }
        }
        return c;
    }

private:
    void check_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix: shape mismatch");
    }

    int rows_ = 0, cols_ = 0;
    std::vector<Complex> a_;
};

inline double hermitian_deviation(const ComplexMatrix& m) {
    if (!m.square()) throw std::invalid_argument("hermitian_deviation: non-square");
    double s = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s += std::norm(m.at(i, j) - std::conj(m.at(j, i)));
    return std::sqrt(s);
}

inline bool is_hermitian(const ComplexMatrix& m, double tol) {
    return hermitian_deviation(m) <= tol * (1.0 + m.frobenius_norm());
}

inline double idempotency_deviation(const ComplexMatrix& m) {
    return (m * m - m).frobenius_norm();
}

// tr(A B) without forming the product; both square of equal dimension.
inline Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw std::invalid_argument("trace_of_product: shape mismatch");
    Complex t = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) t += a.at(i, k) * b.at(k, i);
    return t;
}

inline ComplexMatrix adjacency_matrix(const Graph& g) {
    ComplexMatrix m(g.n(), g.n());
    for (const auto& [u, v] : g.edges()) {
        m.at(u, v) = 1.0;
        m.at(v, u) = 1.0;
    }
    return m;
}

}  // namespace qgraph
