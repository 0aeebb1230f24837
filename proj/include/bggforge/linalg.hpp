#pragma once

#include "bggforge/field_matrix.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace bggforge {

struct SingularMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reduced row echelon form. Pivot rule: first nonzero entry scanning
/// columns left to right, rows top to bottom.
struct RowEchelon {
    FieldMatrix reduced;               // rank rows only
    std::vector<std::size_t> pivots;   // pivot column of each row
};

RowEchelon rref(FieldMatrix m);
std::size_t rank(const FieldMatrix& m);

/// Columns span the right null space; free column f carries e_f.
FieldMatrix kernel_basis(const FieldMatrix& m);
/// Kernel basis from an already reduced matrix with `cols` columns.
FieldMatrix kernel_from_rref(const RowEchelon& e, std::size_t cols);

/// Pivot-canonical particular solution (free variables zero), or nullopt.
std::optional<FieldMatrix> solve(const FieldMatrix& m, const FieldMatrix& rhs);

FieldMatrix inverse(const FieldMatrix& m);
/// X with m * X = I for m of full row rank; rows of X outside the pivot
/// columns are zero.
FieldMatrix right_inverse(const FieldMatrix& m);

}  // namespace bggforge
