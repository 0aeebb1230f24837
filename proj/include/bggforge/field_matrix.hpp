#pragma once

#include "bggforge/quadratic_field.hpp"

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace bggforge {

/// Dense row-major matrix over Q(sqrt 5).
class FieldMatrix {
public:
    FieldMatrix() = default;
    FieldMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    FieldMatrix(std::initializer_list<std::initializer_list<Scalar>> rows);

    static FieldMatrix identity(std::size_t n);
    static FieldMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static FieldMatrix scalar(std::size_t n, const Scalar& s);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Scalar> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Scalar> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    bool is_zero() const;
    bool is_identity() const;

    FieldMatrix transpose() const;
    FieldMatrix conjugate() const;

    /// Rows [r0, r0+nr) and columns [c0, c0+nc).
    FieldMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const FieldMatrix& b);
    FieldMatrix select_rows(std::span<const std::size_t> idx) const;
    FieldMatrix select_cols(std::span<const std::size_t> idx) const;

    FieldMatrix& operator+=(const FieldMatrix& o);
    FieldMatrix& operator-=(const FieldMatrix& o);
    FieldMatrix& operator*=(const Scalar& s);

    friend FieldMatrix operator+(FieldMatrix a, const FieldMatrix& b) { return a += b; }
    friend FieldMatrix operator-(FieldMatrix a, const FieldMatrix& b) { return a -= b; }
    friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
    friend FieldMatrix operator*(FieldMatrix a, const Scalar& s) { return a *= s; }
    friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Scalar trace() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

FieldMatrix kron(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix vstack(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix direct_sum(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix galois_conjugate(const FieldMatrix& m);

std::ostream& operator<<(std::ostream& os, const FieldMatrix& m);

}  // namespace bggforge
