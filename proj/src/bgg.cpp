#include "bggforge/bgg.hpp"

#include "bggforge/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace bggforge {

std::size_t hom_space_dimension(const Fixture& fx, const BggSpaceSpec& spec) {
    const int k = spec.u - spec.t;
    if (k < 0 || k > kProjectiveDim + 1) return 0;
    const auto& ch = fx.characters;
    Character wedge = exterior_power_character(fx.group, ch[kV], k);
    Rational ip = inner_product(fx.group, ch[static_cast<std::size_t>(spec.phi)], wedge * ch[static_cast<std::size_t>(spec.psi)]);
    if (ip.get_den() != 1 || ip < 0) throw StructureFailure("hom dimension is not a non-negative integer");
    return ip.get_num().get_ui();
}

BggPoint bgg_point(const ExteriorContext& ctx, const BggSpaceSpec& spec) {
    const std::size_t dim = spec.t == spec.u ? 0 : hom_space_dimension(*ctx.rep().fixture, spec);
    if (dim != 1) throw NotSingleton(dim);
    const int gs = spec.t + kProjectiveDim + 1, gt = spec.u + kProjectiveDim + 1;
    GradedRep ns{{gs, IsotypicObject::single(spec.phi)}};
    GradedRep nt{{gt, IsotypicObject::single(spec.psi)}};
    BggPoint b;
    b.source = std::make_shared<GradedModule>(free_module(ctx, ns));
    b.target = std::make_shared<GradedModule>(free_module(ctx, nt));
    const IsotypicObject comp = b.target->component(gs);
    if (comp[spec.phi] != dim) throw StructureFailure("hom dimension disagrees with the target component");
    // the unique copy of phi sits in the Lambda^{u-t} V (x) psi segment
    IsotypicMorphism g(ns.at(gs), comp);
    g[spec.phi](free_offset(ctx, nt, gs, spec.phi, spec.u - spec.t, spec.psi, 0), 0) = Scalar(1);
    if (g.dense_rank() != ns.at(gs).dense_dimension()) throw NotMono("basis map is not injective");
    b.basis_map = g;
    b.phi_hat = extend_to_module_morphism(ctx, b.source, b.target, {{gs, g}});
    return b;
}

// ---- cohomology tables ----

std::size_t CohomologyTable::at(int i, int j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? 0 : it->second;
}

std::map<int, std::size_t> CohomologyTable::column(int c) const {
    std::map<int, std::size_t> out;
    for (const auto& [key, v] : entries)
        if (key.first + key.second == c) out[key.first] = v;
    return out;
}

bool CohomologyTable::twist_certified(int j, int row_lo) const {
    return has_position(j + row_lo) && has_position(j + row_lo + kProjectiveDim);
}

int CohomologyTable::min_row() const {
    int r = 0;
    for (const auto& [key, v] : entries) r = std::min(r, key.first);
    return r;
}

int CohomologyTable::max_row() const {
    int r = kProjectiveDim;
    for (const auto& [key, v] : entries) r = std::max(r, key.first);
    return r;
}

CohomologyTable table_from_window(const TateWindow& w) {
    CohomologyTable t;
    if (w.terms.empty()) return t;
    t.position_min = w.terms.begin()->first;
    t.position_max = w.terms.rbegin()->first;
    for (const auto& [p, term] : w.terms)
        for (const auto& [j, x] : term.cogenerators) {
            const std::size_t m = x.dense_dimension();
            if (m) t.entries[{p - j, j}] += m;
        }
    return t;
}

CohomologyTable cohomology_excerpt(const ExteriorContext& ctx, ModulePtr m, int depth_left, int depth_right) {
    return table_from_window(minimal_resolutions(ctx, std::move(m), depth_left, depth_right));
}

std::string render_table(const CohomologyTable& t, int col_lo, int col_hi) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> labels;
    const int top = t.max_row(), bottom = t.min_row();
    for (int i = top; i >= bottom; --i) {
        labels.push_back("h^" + std::to_string(i));
        std::vector<std::string> row;
        for (int c = col_lo; c <= col_hi; ++c) {
            if (!t.has_position(c)) row.push_back("?");
            else {
                const std::size_t v = t.at(i, c - i);
                row.push_back(v ? std::to_string(v) : ".");
            }
        }
        cells.push_back(std::move(row));
    }
    std::size_t width = 1;
    for (const auto& row : cells)
        for (const auto& c : row) width = std::max(width, c.size());
    for (int c = col_lo; c <= col_hi; ++c) width = std::max(width, std::to_string(c).size());
    std::ostringstream os;
    auto pad = [&](const std::string& s) { return std::string(width + 1 - s.size(), ' ') + s; };
    os << "     ";
    for (int c = col_lo; c <= col_hi; ++c) os << pad(std::to_string(c));
    os << '\n';
    for (std::size_t r = 0; r < cells.size(); ++r) {
        os << labels[r] << std::string(5 - std::min<std::size_t>(5, labels[r].size()), ' ');
        for (const auto& c : cells[r]) os << pad(c);
        os << '\n';
    }
    return os.str();
}

// ---- Chern data ----

TruncatedPolynomial chern_polynomial(const std::map<int, std::size_t>& dims, int* e_out, long* r_out) {
    long r = 0;
    for (const auto& [d, n] : dims) r += (d % 2 == 0 ? 1 : -1) * static_cast<long>(n);
    const int e = r < 0 ? 1 : 0;
    TruncatedPolynomial c = TruncatedPolynomial::one(kProjectiveDim);
    for (const auto& [d, n] : dims) {
        const long i = -d;
        if (i == 0 || n == 0) continue;
        const long sign = ((i + e) % 2 == 0) ? 1 : -1;
        c = c * truncated_power(TruncatedPolynomial::linear(i, kProjectiveDim), sign * static_cast<long>(n));
    }
    if (e_out) *e_out = e;
    if (r_out) *r_out = r;
    return c;
}

ChernData rank_and_chern(const std::map<int, std::size_t>& dims) {
    ChernData out;
    out.raw_chern = chern_polynomial(dims, &out.e, &out.r);
    out.chern = out.raw_chern;
    const long ar = out.abs_rank();
    if (ar == 0) return out;
    for (int step = 0; step <= 200; ++step) {
        const int s = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
        const int shift = -s;  // order 0, -1, 1, -2, ...
        std::map<int, std::size_t> shifted;
        for (const auto& [d, n] : dims) shifted[d - shift] = n;
        TruncatedPolynomial c = chern_polynomial(shifted);
        const mpz_class& c1 = c[1];
        if (c1 <= 0 && c1 > -ar) {
            out.chern = c;
            out.shift = shift;
            return out;
        }
    }
    return out;
}

ChernData rank_and_chern(const GradedModule& m) { return rank_and_chern(m.hilbert_series()); }

bool necessary_condition(const ChernData& c) {
    const long ar = c.abs_rank();
    for (long j = ar + 1; j <= kProjectiveDim; ++j)
        if (c.chern[static_cast<std::size_t>(j)] != 0) return false;
    return true;
}

// ---- vector bundle criterion ----

std::optional<SparseMatch> find_sparse_columns(const CohomologyTable& t) {
    std::vector<std::pair<int, int>> singles;  // (column, row)
    for (int c = t.position_min; c <= t.position_max; ++c) {
        auto col = t.column(c);
        if (col.size() == 1) singles.emplace_back(c, col.begin()->first);
    }
    // closest pair, leftmost on ties
    std::optional<SparseMatch> best;
    for (std::size_t a = 0; a < singles.size(); ++a)
        for (std::size_t b = a + 1; b < singles.size(); ++b)
            if (singles[a].second - singles[b].second == kProjectiveDim &&
                (!best || singles[b].first - singles[a].first < best->right_col - best->left_col))
                best = SparseMatch{singles[a].first, singles[b].first, singles[a].second, singles[b].second, -singles[b].second};
    return best;
}

Rational hilbert_polynomial_value(const RootSequence& z, long t) {
    Rational v(1);
    for (std::size_t i = 0; i < z.size(); ++i) v *= Rational(t - z[i]) / Rational(static_cast<long>(i + 1));
    return v;
}

Rational gamma(const RootSequence& z, long p, int q) {
    const int s = static_cast<int>(z.size());
    if (q < 0 || q > s) return Rational(0);
    const bool above = q == 0 || z[static_cast<std::size_t>(q - 1)] > p;
    const bool below = q == s || p > z[static_cast<std::size_t>(q)];
    if (!above || !below) return Rational(0);
    return abs(hilbert_polynomial_value(z, p));
}

std::optional<SupernaturalResult> supernatural_match(const CohomologyTable& t, const SparseMatch& m, long rank) {
    const int lo = m.right_row, hi = m.right_row + kProjectiveDim;
    for (const auto& [key, v] : t.entries)
        if (key.first < lo || key.first > hi) return std::nullopt;
    // certified twist columns j: positions j+lo .. j+hi inside the window
    const int jmin = t.position_min - lo, jmax = t.position_max - hi;
    std::vector<long> zero_cols;
    for (int j = jmax; j >= jmin; --j) {
        bool all_zero = true;
        for (int i = lo; i <= hi; ++i)
            if (t.at(i, j)) all_zero = false;
        if (all_zero) zero_cols.push_back(j);
    }
    if (zero_cols.size() != static_cast<std::size_t>(kProjectiveDim)) return std::nullopt;
    SupernaturalResult r;
    r.twist = zero_cols.front();
    for (long z : zero_cols) r.roots.push_back(z - r.twist);
    for (int j = jmin; j <= jmax; ++j)
        for (int q = 0; q <= kProjectiveDim; ++q) {
            const Rational expect = Rational(rank) * gamma(r.roots, j - r.twist, q);
            if (expect != Rational(static_cast<long>(t.at(lo + q, j)))) return std::nullopt;
        }
    return r;
}

}  // namespace bggforge
