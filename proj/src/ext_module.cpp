#include "bggforge/ext_module.hpp"

#include "bggforge/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace bggforge {

namespace {

std::size_t sz(int k) { return static_cast<std::size_t>(k); }

std::vector<std::vector<int>> subsets(int n, int j) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == j) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

Scalar det_small(const FieldMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0) return Scalar(1);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Scalar total;
    do {
        Scalar term(1);
        for (std::size_t i = 0; i < n && !term.is_zero(); ++i) term = term * m(i, perm[i]);
        if (term.is_zero()) continue;
        int inversions = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (perm[a] > perm[b]) ++inversions;
        if (inversions % 2) total = total - term;
        else total = total + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

FieldMatrix compound(const FieldMatrix& g, const std::vector<std::vector<int>>& sets) {
    FieldMatrix out(sets.size(), sets.size());
    for (std::size_t r = 0; r < sets.size(); ++r)
        for (std::size_t c = 0; c < sets.size(); ++c) {
            FieldMatrix sub(sets[r].size(), sets[c].size());
            for (std::size_t a = 0; a < sets[r].size(); ++a)
                for (std::size_t b = 0; b < sets[c].size(); ++b) sub(a, b) = g(sz(sets[r][a]), sz(sets[c][b]));
            out(r, c) = det_small(sub);
        }
    return out;
}

IsotypicObject free_component(const ExteriorContext& ctx, const GradedRep& n, int d) {
    IsotypicObject out;
    for (int j = 0; j <= ExteriorContext::kTop; ++j) {
        auto it = n.find(d + j);
        if (it == n.end()) continue;
        for (int k = 0; k < kNumIrreps; ++k)
            for (int l = 0; l < kNumIrreps; ++l) out[l] += it->second[k] * ctx.piece(k, j)[l];
    }
    return out;
}

/// A o (V (x) f) for A : V (x) X -> T and f : Y -> X.
IsotypicMorphism act_after_tensor(const RepContext& ctx, const IsotypicMorphism& a, const IsotypicMorphism& f) {
    const IsotypicObject vy = tensor_by_V(ctx, f.source);
    IsotypicMorphism out(vy, a.target);
    for (int m = 0; m < kNumIrreps; ++m) {
        if (a.target[m] == 0 || vy[m] == 0) continue;
        for (int l = 0; l < kNumIrreps; ++l) {
            const std::size_t c = ctx.cV(l, m);
            if (c == 0 || f.source[l] == 0 || f.target[l] == 0) continue;
            for (std::size_t b = 0; b < c; ++b) {
                std::vector<std::size_t> src(f.target[l]), dst(f.source[l]);
                for (std::size_t i = 0; i < src.size(); ++i) src[i] = tensor_index(ctx, f.target, m, l, i, b);
                for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = tensor_index(ctx, f.source, m, l, i, b);
                FieldMatrix prod = a[m].select_cols(src) * f[l];
                for (std::size_t r = 0; r < prod.rows(); ++r)
                    for (std::size_t i = 0; i < dst.size(); ++i) out[m](r, dst[i]) = prod(r, i);
            }
        }
    }
    return out;
}

}  // namespace

// ---- graded representations ----

GradedRep normalized(const GradedRep& r) {
    GradedRep out;
    for (const auto& [d, x] : r)
        if (!x.is_zero()) out[d] = x;
    return out;
}

GradedRep operator+(const GradedRep& a, const GradedRep& b) {
    GradedRep out = a;
    for (const auto& [d, x] : b) out[d] = out[d] + x;
    return normalized(out);
}

std::size_t total_dimension(const GradedRep& r) {
    std::size_t n = 0;
    for (const auto& [d, x] : r) n += x.dense_dimension();
    return n;
}

std::string graded_rep_to_json(const GradedRep& r) {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [d, x] : r) {
        if (!first) os << ',';
        first = false;
        os << '"' << d << "\":[";
        for (int l = 0; l < kNumIrreps; ++l) os << (l ? "," : "") << x[l];
        os << ']';
    }
    os << '}';
    return os.str();
}

std::string graded_rep_to_string(const GradedRep& r) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, x] : r) {
        if (!first) os << "; ";
        first = false;
        os << d << ": " << x.to_string();
    }
    return first ? "0" : os.str();
}

// ---- exterior context ----

std::size_t tensor_index(const RepContext& ctx, const IsotypicObject& x, int m, int l, std::size_t i, std::size_t b) {
    return tensor_offset(ctx, x, m, l, i) + b;
}

ExteriorContext ExteriorContext::build(const Fixture& fx, TensorStructure ts) {
    ExteriorContext e;
    e.rep_ = RepContext{&fx, std::move(ts)};
    const RepContext& rc = e.rep_;
    const auto& vg = rc.gens(kV);
    const std::size_t ngen = rc.num_generators();

    std::vector<std::vector<std::vector<int>>> sets(kTop + 1);
    for (int j = 0; j <= kTop; ++j) {
        sets[sz(j)] = subsets(kTop, j);
        std::vector<FieldMatrix> g;
        for (std::size_t s = 0; s < ngen; ++s) g.push_back(compound(vg[s], sets[sz(j)]));
        e.wedge_gens_.push_back(std::move(g));
    }
    for (int j = 0; j < kTop; ++j) {
        const auto& src = sets[sz(j)];
        const auto& dst = sets[sz(j + 1)];
        FieldMatrix w(dst.size(), kTop * src.size());
        for (int i = 0; i < kTop; ++i)
            for (std::size_t s = 0; s < src.size(); ++s) {
                const auto& set = src[s];
                if (std::find(set.begin(), set.end(), i) != set.end()) continue;
                int smaller = 0;
                for (int x : set)
                    if (x < i) ++smaller;
                std::vector<int> u = set;
                u.insert(std::lower_bound(u.begin(), u.end(), i), i);
                const std::size_t r = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), u) - dst.begin());
                w(r, sz(i) * src.size() + s) = Scalar(smaller % 2 ? -1 : 1);
            }
        e.wedge_dense_.push_back(std::move(w));
    }

    const std::size_t npieces = static_cast<std::size_t>(kNumIrreps * (kTop + 1));
    e.piece_.resize(npieces);
    e.piece_basis_.resize(npieces);
    e.wedge_.resize(npieces);
    e.wedge_rinv_.resize(npieces);
    for (int k = 0; k < kNumIrreps; ++k) {
        for (int j = 0; j <= kTop; ++j) {
            std::vector<FieldMatrix> rho;
            for (std::size_t s = 0; s < ngen; ++s) rho.push_back(kron(e.wedge_gens_[sz(j)][s], rc.gens(k)[s]));
            const std::size_t n = rho.front().rows();
            FieldMatrix q(n, n);
            IsotypicObject x;
            std::size_t col = 0;
            for (int m = 0; m < kNumIrreps; ++m) {
                auto basis = intertwiner_basis(rc.gens(m), rho);
                x[m] = basis.size();
                for (const auto& b : basis) {
                    if (col + b.cols() > n) throw StructureFailure("exterior piece: too many intertwiners");
                    q.set_block(0, col, b);
                    col += b.cols();
                }
            }
            if (col != n) throw StructureFailure("exterior piece: decomposition incomplete");
            if (j == 0 && !q.is_identity()) throw StructureFailure("exterior piece: degree zero basis is not the identity");
            e.piece_[idx(k, j)] = x;
            e.piece_basis_[idx(k, j)] = std::move(q);
        }
        const FieldMatrix idk = FieldMatrix::identity(kIrrepDims[sz(k)]);
        for (int j = 0; j < kTop; ++j) {
            const IsotypicObject& xj = e.piece_[idx(k, j)];
            const IsotypicObject& xj1 = e.piece_[idx(k, j + 1)];
            FieldMatrix dense = inverse(e.piece_basis_[idx(k, j + 1)]) * kron(e.wedge_dense_[sz(j)], idk) *
                                kron(FieldMatrix::identity(kTop), e.piece_basis_[idx(k, j)]) * tensor_iso_dense_inverse(rc, xj);
            IsotypicMorphism a = dense_to_isotypic(rc, dense, tensor_by_V(rc, xj), xj1);
            IsotypicMorphism r(a.target, a.source);
            for (int m = 0; m < kNumIrreps; ++m) {
                if (a.target[m] == 0) continue;
                r[m] = right_inverse(a[m]);
            }
            e.wedge_[idx(k, j)] = std::move(a);
            e.wedge_rinv_[idx(k, j)] = std::move(r);
        }
    }

    for (int k = 0; k < kNumIrreps; ++k) {
        std::vector<FieldMatrix> contra;
        for (const auto& g : rc.gens(k)) contra.push_back(inverse(g).transpose());
        auto basis = intertwiner_basis(rc.gens(k), contra);
        if (basis.size() != 1) throw StructureFailure("invariant form is not unique");
        if (!(basis[0] == basis[0].transpose())) throw StructureFailure("invariant form is not symmetric");
        e.form_.push_back(basis[0]);
    }

    // Theta: the dual of the component pi^{k->l}_b of V (x) chi_k -> chi_l,
    // J_k^{-1} P_i^T J_l, written in the components pi^{l->k}_{b'}.
    auto component = [&](int k, int l, std::size_t b) {
        const FieldMatrix& dvk = rc.tensor.pair(kV, k).decomposition;
        std::size_t off = 0;
        for (int l2 = 0; l2 < l; ++l2) off += rc.cV(k, l2) * kIrrepDims[sz(l2)];
        const std::size_t dl = kIrrepDims[sz(l)];
        return dvk.block(off + b * dl, 0, dl, dvk.cols());
    };
    e.theta_.resize(sz(kNumIrreps * kNumIrreps));
    for (int k = 0; k < kNumIrreps; ++k)
        for (int l = 0; l < kNumIrreps; ++l) {
            const std::size_t ckl = rc.cV(k, l), clk = rc.cV(l, k);
            const std::size_t dk = kIrrepDims[sz(k)], dl = kIrrepDims[sz(l)];
            FieldMatrix th(ckl, clk);
            if (ckl) {
                FieldMatrix basis(dk * kTop * dl, clk);
                for (std::size_t b = 0; b < clk; ++b) {
                    FieldMatrix p = component(l, k, b);
                    for (std::size_t r = 0; r < p.rows(); ++r)
                        for (std::size_t c = 0; c < p.cols(); ++c) basis(r * p.cols() + c, b) = p(r, c);
                }
                FieldMatrix rhs(dk * kTop * dl, ckl);
                const FieldMatrix jk_inv = inverse(e.form_[sz(k)]);
                for (std::size_t b = 0; b < ckl; ++b) {
                    FieldMatrix pi = component(k, l, b);
                    for (int i = 0; i < kTop; ++i) {
                        FieldMatrix pt = pi.block(0, sz(i) * dk, dl, dk).transpose();
                        FieldMatrix delta = jk_inv * pt * e.form_[sz(l)];
                        for (std::size_t r = 0; r < dk; ++r)
                            for (std::size_t c = 0; c < dl; ++c) rhs(r * kTop * dl + sz(i) * dl + c, b) = delta(r, c);
                    }
                }
                auto sol = solve(basis, rhs);
                if (!sol) throw StructureFailure("dual action transport does not exist");
                th = sol->transpose();
            }
            e.theta_[sz(k * kNumIrreps + l)] = std::move(th);
        }

    for (int k = 0; k < kNumIrreps; ++k) {
        const std::size_t dk = kIrrepDims[sz(k)];
        const IsotypicObject y = tensor_by_V(rc, IsotypicObject::single(k));
        const FieldMatrix c = tensor_iso_dense(rc, y) * kron(FieldMatrix::identity(kTop), rc.tensor.pair(kV, k).decomposition);
        const std::size_t n = kTop * kTop * dk;
        FieldMatrix p(n, n);
        for (std::size_t v = 0; v < kTop; ++v)
            for (std::size_t w = 0; w < kTop; ++w)
                for (std::size_t z = 0; z < dk; ++z) p(w * kTop * dk + v * dk + z, v * kTop * dk + w * dk + z) = Scalar(1);
        const IsotypicObject vy = tensor_by_V(rc, y);
        e.swap_.push_back(dense_to_isotypic(rc, c * p * inverse(c), vy, vy));
    }
    return e;
}

IsotypicMorphism ExteriorContext::swap_on(const IsotypicObject& x) const {
    const RepContext& rc = rep_;
    const IsotypicObject y = tensor_by_V(rc, x);
    const IsotypicObject w = tensor_by_V(rc, y);
    IsotypicMorphism out(w, w);
    struct Idx {
        int l;
        std::size_t b1, b2;
    };
    for (int k = 0; k < kNumIrreps; ++k) {
        if (x[k] == 0) continue;
        const IsotypicObject yk = tensor_by_V(rc, IsotypicObject::single(k));
        const IsotypicMorphism& s = swap_[sz(k)];
        for (int m = 0; m < kNumIrreps; ++m) {
            std::vector<Idx> dec;
            for (int l = 0; l < kNumIrreps; ++l)
                for (std::size_t b1 = 0; b1 < rc.cV(k, l); ++b1)
                    for (std::size_t b2 = 0; b2 < rc.cV(l, m); ++b2) dec.push_back({l, b1, b2});
            if (dec.size() != s[m].rows()) throw StructureFailure("swap: index mismatch");
            for (std::size_t a = 0; a < x[k]; ++a) {
                auto place = [&](const Idx& i) {
                    return tensor_index(rc, y, m, i.l, tensor_index(rc, x, i.l, k, a, i.b1), i.b2);
                };
                for (std::size_t r = 0; r < dec.size(); ++r)
                    for (std::size_t c = 0; c < dec.size(); ++c)
                        if (!s[m](r, c).is_zero()) out[m](place(dec[r]), place(dec[c])) = s[m](r, c);
            }
        }
        (void)yk;
    }
    return out;
}

// ---- graded modules ----

IsotypicObject GradedModule::component(int d) const {
    auto it = components.find(d);
    return it == components.end() ? IsotypicObject{} : it->second;
}

IsotypicMorphism GradedModule::action(const RepContext& ctx, int d) const {
    auto it = actions.find(d);
    if (it != actions.end()) return it->second;
    return IsotypicMorphism::zero(tensor_by_V(ctx, component(d)), component(d - 1));
}

bool GradedModule::is_zero() const { return components.empty(); }
int GradedModule::min_degree() const { return components.empty() ? 0 : components.begin()->first; }
int GradedModule::max_degree() const { return components.empty() ? 0 : components.rbegin()->first; }

std::map<int, std::size_t> GradedModule::hilbert_series() const {
    std::map<int, std::size_t> out;
    for (const auto& [d, x] : components) out[d] = x.dense_dimension();
    return out;
}

GradedRep GradedModule::character_series() const { return normalized(components); }

bool GradedModule::same_data(const GradedModule& o) const {
    if (!(components == o.components)) return false;
    for (const auto& [d, a] : actions) {
        auto it = o.actions.find(d);
        if (it == o.actions.end()) {
            if (!a.is_zero()) return false;
        } else if (!(it->second == a)) {
            return false;
        }
    }
    for (const auto& [d, a] : o.actions)
        if (!actions.count(d) && !a.is_zero()) return false;
    return true;
}

IsotypicMorphism ModuleMorphism::at(int d) const {
    auto it = maps.find(d);
    if (it != maps.end()) return it->second;
    return IsotypicMorphism::zero(source->component(d), target->component(d));
}

// ---- invariants ----

std::optional<std::string> check_square_zero(const ExteriorContext& ctx, const GradedModule& m) {
    const RepContext& rc = ctx.rep();
    for (const auto& [d, x] : m.components) {
        if (m.component(d - 1).is_zero() || m.component(d - 2).is_zero()) continue;
        IsotypicMorphism z = act_after_tensor(rc, m.action(rc, d - 1), m.action(rc, d));
        IsotypicMorphism sym = z + compose(z, ctx.swap_on(x));
        if (!sym.is_zero()) return "action does not square to zero at degree " + std::to_string(d);
    }
    return std::nullopt;
}

std::optional<std::string> check_commutation(const ExteriorContext& ctx, const ModuleMorphism& f) {
    const RepContext& rc = ctx.rep();
    std::set<int> degs;
    for (const auto& [d, x] : f.source->components) degs.insert(d);
    for (int d : degs) {
        IsotypicMorphism lhs = act_after_tensor(rc, f.target->action(rc, d), f.at(d));
        IsotypicMorphism rhs = compose(f.at(d - 1), f.source->action(rc, d));
        if (!(lhs == rhs)) return "module map does not commute with the action at degree " + std::to_string(d);
    }
    return std::nullopt;
}

bool image_in_radical(const ExteriorContext& ctx, const ModuleMorphism& f) {
    const RepContext& rc = ctx.rep();
    for (const auto& [d, g] : f.maps) {
        IsotypicMorphism act = f.target->action(rc, d + 1);
        for (int l = 0; l < kNumIrreps; ++l) {
            if (g[l].empty()) continue;
            if (act[l].empty()) {
                if (!g[l].is_zero()) return false;
                continue;
            }
            if (rank(hstack(act[l], g[l])) != rank(act[l])) return false;
        }
    }
    return true;
}

// ---- constructions ----

std::size_t free_offset(const ExteriorContext& ctx, const GradedRep& n, int d, int l, int j, int k, std::size_t copy) {
    auto gens = [&](int deg, int kk) -> std::size_t {
        auto it = n.find(deg);
        return it == n.end() ? 0 : it->second[kk];
    };
    std::size_t off = 0;
    for (int j2 = 0; j2 < j; ++j2)
        for (int k2 = 0; k2 < kNumIrreps; ++k2) off += gens(d + j2, k2) * ctx.piece(k2, j2)[l];
    for (int k2 = 0; k2 < k; ++k2) off += gens(d + j, k2) * ctx.piece(k2, j)[l];
    return off + copy * ctx.piece(k, j)[l];
}

GradedModule free_module(const ExteriorContext& ctx, const GradedRep& n0) {
    const RepContext& rc = ctx.rep();
    const GradedRep n = normalized(n0);
    GradedModule f;
    f.free_generators = n;
    if (n.empty()) return f;
    const int lo = n.begin()->first - ExteriorContext::kTop, hi = n.rbegin()->first;
    for (int d = lo; d <= hi; ++d) {
        IsotypicObject x = free_component(ctx, n, d);
        if (!x.is_zero()) f.components[d] = x;
    }
    for (const auto& [d, x] : f.components) {
        const IsotypicObject t = f.component(d - 1);
        IsotypicMorphism act(tensor_by_V(rc, x), t);
        for (int j = 0; j < ExteriorContext::kTop; ++j) {
            auto it = n.find(d + j);
            if (it == n.end()) continue;
            for (int k = 0; k < kNumIrreps; ++k)
                for (std::size_t c = 0; c < it->second[k]; ++c) {
                    const IsotypicObject& pj = ctx.piece(k, j);
                    const IsotypicMorphism& w = ctx.wedge(k, j);
                    for (int m = 0; m < kNumIrreps; ++m) {
                        if (w[m].empty()) continue;
                        const std::size_t row0 = free_offset(ctx, n, d - 1, m, j + 1, k, c);
                        for (int l = 0; l < kNumIrreps; ++l)
                            for (std::size_t b = 0; b < pj[l]; ++b) {
                                const std::size_t src = free_offset(ctx, n, d, l, j, k, c) + b;
                                for (std::size_t b1 = 0; b1 < rc.cV(l, m); ++b1) {
                                    const std::size_t wc = tensor_index(rc, pj, m, l, b, b1);
                                    const std::size_t ac = tensor_index(rc, x, m, l, src, b1);
                                    for (std::size_t r = 0; r < w[m].rows(); ++r)
                                        if (!w[m](r, wc).is_zero()) act[m](row0 + r, ac) = w[m](r, wc);
                                }
                            }
                    }
                }
        }
        f.actions[d] = std::move(act);
    }
    return f;
}

GradedModule trivial_action_module(const RepContext& ctx, const GradedRep& comps) {
    GradedModule m;
    m.components = normalized(comps);
    for (const auto& [d, x] : m.components) m.actions[d] = IsotypicMorphism::zero(tensor_by_V(ctx, x), m.component(d - 1));
    return m;
}

GradedModule shift(const GradedModule& m, int s) {
    GradedModule out;
    for (const auto& [d, x] : m.components) out.components[d - s] = x;
    for (const auto& [d, a] : m.actions) out.actions[d - s] = a;
    if (m.free_generators) {
        GradedRep g;
        for (const auto& [d, x] : *m.free_generators) g[d - s] = x;
        out.free_generators = g;
    }
    return out;
}

ModuleMorphism extend_to_module_morphism(const ExteriorContext& ctx, ModulePtr free_source, ModulePtr target,
                                         const std::map<int, IsotypicMorphism>& generator_maps) {
    if (!free_source->free_generators) throw DegreeMismatch("extension source is not a free module");
    const RepContext& rc = ctx.rep();
    const GradedRep& n = *free_source->free_generators;
    for (const auto& [d, g] : generator_maps)
        if (!n.count(d) && !g.source.is_zero()) throw DegreeMismatch("generator map in degree " + std::to_string(d) + " has no generators");
    for (const auto& [d, x] : n) {
        auto it = generator_maps.find(d);
        if (it == generator_maps.end()) throw DegreeMismatch("missing generator map in degree " + std::to_string(d));
        if (!(it->second.source == x) || !(it->second.target == target->component(d)) || !it->second.well_formed())
            throw DegreeMismatch("generator map in degree " + std::to_string(d) + " has the wrong shape");
    }
    ModuleMorphism f{free_source, target, {}};
    for (auto it = free_source->components.rbegin(); it != free_source->components.rend(); ++it) {
        const int d = it->first;
        const IsotypicObject& fd = it->second;
        const IsotypicObject md = target->component(d);
        IsotypicMorphism h(fd, md);
        auto g = generator_maps.find(d);
        if (g != generator_maps.end())
            for (int l = 0; l < kNumIrreps; ++l)
                for (std::size_t c = 0; c < g->second.source[l]; ++c) {
                    const std::size_t col = free_offset(ctx, n, d, l, 0, l, c);
                    for (std::size_t r = 0; r < md[l]; ++r) h[l](r, col) = g->second[l](r, c);
                }
        const IsotypicObject fd1 = free_source->component(d + 1);
        if (!fd1.is_zero() && !md.is_zero()) {
            // h = act o (V (x) f_{d+1}) o r with r assembled from the basic right inverses
            IsotypicMorphism z = act_after_tensor(rc, target->action(rc, d + 1), f.at(d + 1));
            for (int j = 1; j <= ExteriorContext::kTop; ++j) {
                auto gj = n.find(d + j);
                if (gj == n.end()) continue;
                for (int k = 0; k < kNumIrreps; ++k)
                    for (std::size_t c = 0; c < gj->second[k]; ++c) {
                        const IsotypicObject& prev = ctx.piece(k, j - 1);
                        const IsotypicMorphism& rinv = ctx.wedge_right_inverse(k, j - 1);
                        for (int m = 0; m < kNumIrreps; ++m) {
                            if (rinv[m].empty() || md[m] == 0) continue;
                            std::vector<std::size_t> cols;
                            cols.reserve(rinv[m].rows());
                            for (int l = 0; l < kNumIrreps; ++l)
                                for (std::size_t b = 0; b < prev[l]; ++b) {
                                    const std::size_t src = free_offset(ctx, n, d + 1, l, j - 1, k, c) + b;
                                    for (std::size_t b1 = 0; b1 < rc.cV(l, m); ++b1) cols.push_back(tensor_index(rc, fd1, m, l, src, b1));
                                }
                            FieldMatrix part = z[m].select_cols(cols) * rinv[m];
                            h[m].set_block(0, free_offset(ctx, n, d, m, j, k, c), part);
                        }
                    }
            }
        }
        f.maps[d] = std::move(h);
    }
    return f;
}

KernelModule kernel_module(const ExteriorContext& ctx, const ModuleMorphism& f) {
    const RepContext& rc = ctx.rep();
    auto k = std::make_shared<GradedModule>();
    std::map<int, KernelResult> kers;
    for (const auto& [d, x] : f.source->components) kers.emplace(d, kernel(f.at(d)));
    ModuleMorphism inc;
    inc.source = k;
    inc.target = f.source;
    for (const auto& [d, kr] : kers) {
        if (kr.object.is_zero()) continue;
        k->components[d] = kr.object;
        inc.maps[d] = kr.inclusion;
    }
    for (const auto& [d, x] : k->components) {
        auto below = kers.find(d - 1);
        if (below == kers.end() || below->second.object.is_zero()) continue;
        IsotypicMorphism a = act_after_tensor(rc, f.source->action(rc, d), kers.at(d).inclusion);
        k->actions[d] = lift_through_kernel(a, below->second);
    }
    return {k, inc};
}

GradedRep socle(const ExteriorContext& ctx, const GradedModule& m) {
    const RepContext& rc = ctx.rep();
    GradedRep out;
    for (const auto& [d, x] : m.components) {
        IsotypicObject s;
        const IsotypicMorphism act = m.action(rc, d);
        for (int k = 0; k < kNumIrreps; ++k) {
            if (x[k] == 0) continue;
            std::size_t rows = 0;
            for (int l = 0; l < kNumIrreps; ++l) rows += act.target[l] * rc.cV(k, l);
            FieldMatrix stacked(rows, x[k]);
            std::size_t r0 = 0;
            for (int l = 0; l < kNumIrreps; ++l)
                for (std::size_t b = 0; b < rc.cV(k, l); ++b) {
                    for (std::size_t a = 0; a < x[k]; ++a) {
                        const std::size_t col = tensor_index(rc, x, l, k, a, b);
                        for (std::size_t r = 0; r < act.target[l]; ++r) stacked(r0 + r, a) = act[l](r, col);
                    }
                    r0 += act.target[l];
                }
            s[k] = x[k] - rank(stacked);
        }
        if (!s.is_zero()) out[d] = s;
    }
    return out;
}

GradedRep radical(const ExteriorContext& ctx, const GradedModule& m) {
    const RepContext& rc = ctx.rep();
    GradedRep out;
    for (const auto& [d, x] : m.components) {
        const IsotypicMorphism act = m.action(rc, d + 1);
        IsotypicObject r;
        for (int l = 0; l < kNumIrreps; ++l) r[l] = act[l].empty() ? 0 : rank(act[l]);
        if (!r.is_zero()) out[d] = r;
    }
    return out;
}

TopResult top(const ExteriorContext& ctx, const GradedModule& m) {
    const RepContext& rc = ctx.rep();
    TopResult t;
    for (const auto& [d, x] : m.components) {
        CokernelResult c = cokernel(m.action(rc, d + 1));
        if (c.object.is_zero()) continue;
        t.top[d] = c.object;
        t.projection[d] = std::move(c.projection);
        t.section[d] = std::move(c.section);
    }
    return t;
}

ModuleMorphism projective_cover(const ExteriorContext& ctx, ModulePtr m) {
    TopResult t = top(ctx, *m);
    auto f = std::make_shared<GradedModule>(free_module(ctx, t.top));
    return extend_to_module_morphism(ctx, f, m, t.section);
}

GradedModule dual(const ExteriorContext& ctx, const GradedModule& m) {
    const RepContext& rc = ctx.rep();
    GradedModule out;
    for (const auto& [d, x] : m.components) out.components[-d] = x;
    for (const auto& [d, x] : out.components) {
        // act*_d comes from act_{1-d} : V (x) M_{1-d} -> M_{-d}
        const IsotypicObject below = out.component(d - 1);
        IsotypicMorphism a(tensor_by_V(rc, x), below);
        if (!below.is_zero()) {
            const IsotypicMorphism src = m.action(rc, 1 - d);
            const IsotypicObject& m1 = below;
            for (int k = 0; k < kNumIrreps; ++k)
                for (int l = 0; l < kNumIrreps; ++l) {
                    const FieldMatrix& th = ctx.theta(k, l);
                    if (th.empty()) continue;
                    for (std::size_t r = 0; r < below[k]; ++r)
                        for (std::size_t a1 = 0; a1 < x[l]; ++a1)
                            for (std::size_t b = 0; b < th.rows(); ++b) {
                                const Scalar& e = src[l](a1, tensor_index(rc, m1, l, k, r, b));
                                if (e.is_zero()) continue;
                                for (std::size_t b1 = 0; b1 < th.cols(); ++b1)
                                    if (!th(b, b1).is_zero()) a[k](r, tensor_index(rc, x, k, l, a1, b1)).add_mul(e, th(b, b1));
                            }
                }
        }
        out.actions[d] = std::move(a);
    }
    return out;
}

ModuleMorphism dual(const ModuleMorphism& f, ModulePtr dual_target, ModulePtr dual_source) {
    ModuleMorphism g{dual_target, dual_source, {}};
    for (const auto& [d, h] : f.maps) g.maps[-d] = transpose(h);
    return g;
}

ModuleMorphism injective_hull(const ExteriorContext& ctx, ModulePtr m) {
    auto d = std::make_shared<GradedModule>(dual(ctx, *m));
    ModuleMorphism cover = projective_cover(ctx, d);
    auto fd = std::make_shared<GradedModule>(dual(ctx, *cover.source));
    return dual(cover, m, fd);
}

GradedRep free_cogenerators(const GradedRep& generators) {
    GradedRep out;
    for (const auto& [d, x] : normalized(generators)) out[d - ExteriorContext::kTop] = x;
    return out;
}

GradedRep dual_free_cogenerators(const GradedRep& generators) {
    GradedRep out;
    for (const auto& [d, x] : normalized(generators)) out[-d] = x;
    return out;
}

namespace {

ModuleMorphism compose(const ModuleMorphism& f, const ModuleMorphism& g) {
    ModuleMorphism h{g.source, f.target, {}};
    for (const auto& [d, x] : g.source->components) h.maps[d] = bggforge::compose(f.at(d), g.at(d));
    return h;
}

}  // namespace

ProjectiveResolution::ProjectiveResolution(const ExteriorContext& ctx, ModulePtr m, bool keep_modules, bool check_invariants)
    : ctx_(&ctx), keep_(keep_modules), check_(check_invariants), pending_(std::move(m)) {}

void ProjectiveResolution::build_cover() {
    if (last_cover_) return;
    auto f = std::make_shared<GradedModule>(free_module(*ctx_, pending_top_.top));
    ModuleMorphism c = extend_to_module_morphism(*ctx_, f, pending_, pending_top_.section);
    if (check_) {
        if (auto err = check_commutation(*ctx_, c)) throw StructureFailure(*err);
    }
    last_cover_ = std::move(c);
}

void ProjectiveResolution::extend() {
    if (!generators_.empty()) {
        build_cover();
        KernelModule km = kernel_module(*ctx_, *last_cover_);
        if (check_) {
            if (auto err = check_square_zero(*ctx_, *km.module)) throw StructureFailure(*err);
        }
        if (keep_) {
            covers_.push_back(*last_cover_);
            inclusions_.push_back(km.inclusion);
        }
        last_cover_.reset();
        pending_ = km.module;
    }
    pending_top_ = top(*ctx_, *pending_);
    generators_.push_back(pending_top_.top);
}

const ModuleMorphism& ProjectiveResolution::cover(std::size_t k) {
    if (!keep_) throw std::logic_error("resolution does not keep modules");
    if (k < covers_.size()) return covers_[k];
    if (k + 1 != generators_.size()) throw std::out_of_range("cover index");
    build_cover();
    return *last_cover_;
}

TateWindow assemble_window(const ExteriorContext& ctx, ProjectiveResolution& p, ProjectiveResolution& q, ModulePtr m, bool keep_modules) {
    TateWindow w;
    w.depth_left = static_cast<int>(p.length()) - 1;
    w.depth_right = static_cast<int>(q.length()) - 1;
    w.base = m;
    for (int k = 0; k <= w.depth_left; ++k) {
        TateTerm t;
        t.position = -k;
        t.cogenerators = free_cogenerators(p.generators(sz(k)));
        if (keep_modules) t.module = p.cover(sz(k)).source;
        w.terms[-k] = std::move(t);
    }
    std::vector<ModulePtr> duals;
    for (int k = 0; k <= w.depth_right; ++k) {
        TateTerm t;
        t.position = k + 1;
        t.cogenerators = dual_free_cogenerators(q.generators(sz(k)));
        if (keep_modules) {
            duals.push_back(std::make_shared<GradedModule>(dual(ctx, *q.cover(sz(k)).source)));
            t.module = duals.back();
        }
        w.terms[k + 1] = std::move(t);
    }
    if (keep_modules) {
        w.cover = p.cover(0);
        for (int k = 0; k < w.depth_left; ++k) w.differentials[-k - 1] = compose(p.inclusion(sz(k)), p.cover(sz(k + 1)));
        w.hull = dual(q.cover(0), m, duals[0]);
        w.differentials[0] = compose(w.hull, w.cover);
        for (int k = 0; k < w.depth_right; ++k) {
            // (Q_{k+1} -> K_{k+1} -> Q_k)^* : I^k -> I^{k+1}
            ModuleMorphism qd = compose(q.inclusion(sz(k)), q.cover(sz(k + 1)));
            w.differentials[k + 1] = dual(qd, duals[sz(k)], duals[sz(k + 1)]);
        }
    }
    return w;
}

TateWindow minimal_resolutions(const ExteriorContext& ctx, ModulePtr m, int depth_left, int depth_right,
                               const ResolutionOptions& opt) {
    if (depth_left < 0 || depth_right < 0) throw std::invalid_argument("negative resolution depth");
    ProjectiveResolution p(ctx, m, opt.keep_modules, opt.check_invariants);
    for (int k = 0; k <= depth_left; ++k) p.extend();
    auto dm = std::make_shared<GradedModule>(dual(ctx, *m));
    ProjectiveResolution q(ctx, dm, opt.keep_modules, opt.check_invariants);
    for (int k = 0; k <= depth_right; ++k) q.extend();
    return assemble_window(ctx, p, q, m, opt.keep_modules);
}

}  // namespace bggforge
