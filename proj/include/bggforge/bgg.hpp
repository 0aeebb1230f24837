#pragma once

#include "bggforge/ext_module.hpp"
#include "bggforge/truncated_polynomial.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bggforge {

inline constexpr int kProjectiveDim = 4;  // n, with dim V = n + 1

/// T = phi in degree t, U = psi in degree u.
struct BggSpaceSpec {
    int phi = 0;
    int t = 0;
    int psi = 0;
    int u = 0;
};

/// Graded equivariant Hom from Lambda^5 W (x) T into E (x) (Lambda^5 W (x) U).
std::size_t hom_space_dimension(const Fixture& fx, const BggSpaceSpec& spec);

struct NotSingleton : std::runtime_error {
    explicit NotSingleton(std::size_t d) : std::runtime_error("BGG space is not a single point: hom dimension " + std::to_string(d)), dimension(d) {}
    std::size_t dimension;
};

struct NotMono : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BggPoint {
    ModulePtr source, target;  // E (x) T at t+5, E (x) U at u+5
    IsotypicMorphism basis_map;  // T -> target component t+5
    ModuleMorphism phi_hat;
};

/// Throws NotSingleton / NotMono.
BggPoint bgg_point(const ExteriorContext& ctx, const BggSpaceSpec& spec);

/// h^i_j, stored sparsely. Entry (i, j) is read from the Tate term at
/// position p = i + j, which is also its display column.
struct CohomologyTable {
    int position_min = 0;
    int position_max = -1;  // empty when max < min
    std::map<std::pair<int, int>, std::size_t> entries;  // (row i, twist j), nonzero only

    std::size_t at(int i, int j) const;
    bool has_position(int p) const { return p >= position_min && p <= position_max; }
    /// Nonzero entries of display column c, row -> value.
    std::map<int, std::size_t> column(int c) const;
    /// Rows lo..lo+n of twist column j were all read from computed positions.
    bool twist_certified(int j, int row_lo) const;
    int min_row() const;
    int max_row() const;
};

/// Cogenerator of degree j with dimension m at position p adds m to h^{p-j}_j.
CohomologyTable table_from_window(const TateWindow& w);
CohomologyTable cohomology_excerpt(const ExteriorContext& ctx, ModulePtr m, int depth_left, int depth_right);

/// Rows top to bottom (at least h^4..h^0), display columns lo..hi; '.' for
/// zero, '?' outside the computed positions.
std::string render_table(const CohomologyTable& t, int col_lo, int col_hi);

struct ChernData {
    long r = 0;  // alternating sum of dimensions of M
    int e = 0;   // 1 iff r < 0
    /// Chern polynomial of the twist of M with -|r| < c_1 <= 0.
    TruncatedPolynomial chern;
    int shift = 0;  // the twist: chern is computed from M_{d + shift}
    TruncatedPolynomial raw_chern;  // shift 0
    long abs_rank() const { return r < 0 ? -r : r; }
};

/// Product over i of (1 + i h)^{(-1)^{i+e} dim M_{-i}} for the dimension
/// series of M, e taken from the same series.
TruncatedPolynomial chern_polynomial(const std::map<int, std::size_t>& dims, int* e_out = nullptr, long* r_out = nullptr);
ChernData rank_and_chern(const GradedModule& m);
ChernData rank_and_chern(const std::map<int, std::size_t>& dims);
bool necessary_condition(const ChernData& c);

struct SparseMatch {
    int left_col = 0, right_col = 0;
    int left_row = 0, right_row = 0;
    int shift = 0;  // e* = -right_row
};

std::optional<SparseMatch> find_sparse_columns(const CohomologyTable& t);

using RootSequence = std::vector<long>;

Rational hilbert_polynomial_value(const RootSequence& z, long t);
Rational gamma(const RootSequence& z, long p, int q);

struct SupernaturalResult {
    RootSequence roots;  // z_1 = 0
    long twist = 0;      // twist column of z_1 in the table
};

/// Certified all-zero twist columns after translating rows by the match
/// shift give the roots; every certified entry is then checked against
/// rank * gamma. nullopt on any failure.
std::optional<SupernaturalResult> supernatural_match(const CohomologyTable& t, const SparseMatch& m, long rank);

}  // namespace bggforge
