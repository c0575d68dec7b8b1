#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace duc {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major storage. The universal numeric carrier
/// for gates, channels, operators and state-space matrices.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_)
            throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    cplx& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }
    const cplx& operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return data_[i * cols_ + j];
    }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    ComplexMatrix& operator*=(cplx s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }
    ComplexMatrix transpose() const {
        ComplexMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    ComplexMatrix conjugate() const {
        ComplexMatrix r(rows_, cols_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = std::conj(data_[k]);
        return r;
    }

    cplx trace() const {
        if (rows_ != cols_) throw std::invalid_argument("trace: non-square matrix");
        cplx t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, std::abs(v));
        return m;
    }
    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }
    bool all_finite() const {
        for (const auto& v : data_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    bool same_shape(const ComplexMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_;
    }

private:
    void check_same_shape(const ComplexMatrix& o) const {
        if (!same_shape(o)) throw std::invalid_argument("ComplexMatrix: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Max-norm distance, used by all structural validations.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

/// Trace inner product tr(A† B).
inline cplx trace_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("trace_inner: shape mismatch");
    cplx s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a.data()[k]) * b.data()[k];
    return s;
}

/// Real q x q matrix of phases driving the entangling core.
struct PhaseMatrix {
    std::size_t q = 0;
    std::vector<double> entries;  // row-major, q*q

    PhaseMatrix() = default;
    explicit PhaseMatrix(std::size_t q_) : q(q_), entries(q_ * q_, 0.0) {}

    double& at(std::size_t a, std::size_t b) { return entries[a * q + b]; }
    double at(std::size_t a, std::size_t b) const { return entries[a * q + b]; }
};

}  // namespace duc
