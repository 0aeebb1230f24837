#include "bggforge/field_matrix.hpp"

#include <ostream>
#include <stdexcept>

namespace bggforge {

FieldMatrix::FieldMatrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

FieldMatrix FieldMatrix::identity(std::size_t n) { return scalar(n, Scalar(1)); }

FieldMatrix FieldMatrix::scalar(std::size_t n, const Scalar& s) {
    FieldMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
}

bool FieldMatrix::is_zero() const {
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

bool FieldMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
    return true;
}

FieldMatrix FieldMatrix::transpose() const {
    FieldMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

FieldMatrix FieldMatrix::conjugate() const {
    FieldMatrix c(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] = data_[i].conjugate();
    return c;
}

FieldMatrix FieldMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("FieldMatrix::block");
    FieldMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void FieldMatrix::set_block(std::size_t r0, std::size_t c0, const FieldMatrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("FieldMatrix::set_block");
    for (std::size_t i = 0; i < b.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

FieldMatrix FieldMatrix::select_rows(std::span<const std::size_t> idx) const {
    FieldMatrix s(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(idx[i], j);
    return s;
}

FieldMatrix FieldMatrix::select_cols(std::span<const std::size_t> idx) const {
    FieldMatrix s(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = (*this)(i, idx[j]);
    return s;
}

FieldMatrix& FieldMatrix::operator+=(const FieldMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in +");
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (!o.data_[i].is_zero()) data_[i] += o.data_[i];
    return *this;
}

FieldMatrix& FieldMatrix::operator-=(const FieldMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch in -");
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (!o.data_[i].is_zero()) data_[i] -= o.data_[i];
    return *this;
}

FieldMatrix& FieldMatrix::operator*=(const Scalar& s) {
    for (auto& x : data_)
        if (!x.is_zero()) x *= s;
    return *this;
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in *");
    FieldMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        auto crow = c.row(i);
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& aik = a(i, k);
            if (aik.is_zero()) continue;
            auto brow = b.row(k);
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (!brow[j].is_zero()) crow[j].add_mul(aik, brow[j]);
        }
    }
    return c;
}

Scalar FieldMatrix::trace() const {
    Scalar t;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

FieldMatrix kron(const FieldMatrix& a, const FieldMatrix& b) {
    FieldMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar& x = a(i, j);
            if (x.is_zero()) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    if (!b(p, q).is_zero()) k(i * b.rows() + p, j * b.cols() + q) = x * b(p, q);
        }
    return k;
}

FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    FieldMatrix m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
    FieldMatrix m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

FieldMatrix direct_sum(const FieldMatrix& a, const FieldMatrix& b) {
    FieldMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

FieldMatrix galois_conjugate(const FieldMatrix& m) { return m.conjugate(); }

std::ostream& operator<<(std::ostream& os, const FieldMatrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    }
    return os << "]";
}

}  // namespace bggforge
