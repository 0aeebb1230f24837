#include "bggforge/linalg.hpp"

#include <utility>

namespace bggforge {

namespace {

// Reduces m in place, mirroring every row operation on aux (same row count).
// Returns pivot columns; m keeps all rows, rank rows come first.
std::vector<std::size_t> reduce(FieldMatrix& m, FieldMatrix* aux) {
    std::vector<std::size_t> pivots;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r) {
            auto a = m.row(p), b = m.row(r);
            for (std::size_t j = 0; j < cols; ++j) std::swap(a[j], b[j]);
            if (aux) {
                auto x = aux->row(p), y = aux->row(r);
                for (std::size_t j = 0; j < aux->cols(); ++j) std::swap(x[j], y[j]);
            }
        }
        const Scalar inv = m(r, c).inverse();
        if (!inv.is_one()) {
            auto pr = m.row(r);
            for (std::size_t j = c; j < cols; ++j)
                if (!pr[j].is_zero()) pr[j] *= inv;
            if (aux)
                for (auto& x : aux->row(r))
                    if (!x.is_zero()) x *= inv;
        }
        auto pr = m.row(r);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Scalar f = m(i, c);
            auto ri = m.row(i);
            for (std::size_t j = c; j < cols; ++j)
                if (!pr[j].is_zero()) ri[j].sub_mul(f, pr[j]);
            if (aux) {
                auto ar = aux->row(r), ai = aux->row(i);
                for (std::size_t j = 0; j < aux->cols(); ++j)
                    if (!ar[j].is_zero()) ai[j].sub_mul(f, ar[j]);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

RowEchelon rref(FieldMatrix m) {
    auto pivots = reduce(m, nullptr);
    return {m.block(0, 0, pivots.size(), m.cols()), std::move(pivots)};
}

std::size_t rank(const FieldMatrix& m) { return rref(m).pivots.size(); }

FieldMatrix kernel_from_rref(const RowEchelon& e, std::size_t cols) {
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots) is_pivot[p] = true;
    FieldMatrix k(cols, cols - e.pivots.size());
    std::size_t f = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        k(c, f) = Scalar(1);
        for (std::size_t s = 0; s < e.pivots.size(); ++s)
            if (!e.reduced(s, c).is_zero()) k(e.pivots[s], f) = -e.reduced(s, c);
        ++f;
    }
    return k;
}

FieldMatrix kernel_basis(const FieldMatrix& m) { return kernel_from_rref(rref(m), m.cols()); }

std::optional<FieldMatrix> solve(const FieldMatrix& m, const FieldMatrix& rhs) {
    if (m.rows() != rhs.rows()) throw std::invalid_argument("solve: row mismatch");
    FieldMatrix a = m, b = rhs;
    auto pivots = reduce(a, &b);
    for (std::size_t i = pivots.size(); i < b.rows(); ++i)
        for (const auto& x : b.row(i))
            if (!x.is_zero()) return std::nullopt;
    FieldMatrix x(m.cols(), rhs.cols());
    for (std::size_t s = 0; s < pivots.size(); ++s)
        for (std::size_t j = 0; j < rhs.cols(); ++j) x(pivots[s], j) = b(s, j);
    return x;
}

FieldMatrix inverse(const FieldMatrix& m) {
    if (m.rows() != m.cols()) throw SingularMatrix("inverse of non-square matrix");
    FieldMatrix a = m, b = FieldMatrix::identity(m.rows());
    auto pivots = reduce(a, &b);
    if (pivots.size() != m.rows()) throw SingularMatrix("matrix is singular");
    return b;
}

FieldMatrix right_inverse(const FieldMatrix& m) {
    auto x = solve(m, FieldMatrix::identity(m.rows()));
    if (!x) throw SingularMatrix("right inverse: matrix is not of full row rank");
    return *x;
}

}  // namespace bggforge
