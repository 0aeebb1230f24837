#include "bggforge/isotypic.hpp"

#include "bggforge/linalg.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace bggforge {

// ---- objects ----

bool IsotypicObject::is_zero() const {
    for (auto m : mult)
        if (m) return false;
    return true;
}

std::size_t IsotypicObject::dense_dimension() const {
    std::size_t d = 0;
    for (int l = 0; l < kNumIrreps; ++l) d += mult[static_cast<std::size_t>(l)] * kIrrepDims[static_cast<std::size_t>(l)];
    return d;
}

IsotypicObject operator+(IsotypicObject a, const IsotypicObject& b) {
    for (std::size_t l = 0; l < a.mult.size(); ++l) a.mult[l] += b.mult[l];
    return a;
}

std::string IsotypicObject::to_string() const {
    std::string s;
    for (int l = 0; l < kNumIrreps; ++l) {
        auto m = mult[static_cast<std::size_t>(l)];
        if (!m) continue;
        if (!s.empty()) s += " + ";
        if (m > 1) s += std::to_string(m);
        s += irrep_pretty(l);
    }
    return s.empty() ? "0" : s;
}

std::ostream& operator<<(std::ostream& os, const IsotypicObject& x) { return os << x.to_string(); }

// ---- morphisms ----

IsotypicMorphism::IsotypicMorphism(IsotypicObject s, IsotypicObject t) : source(s), target(t) {
    for (int l = 0; l < kNumIrreps; ++l) blocks[static_cast<std::size_t>(l)] = FieldMatrix(t[l], s[l]);
}

IsotypicMorphism IsotypicMorphism::identity(const IsotypicObject& x) {
    IsotypicMorphism f(x, x);
    for (int l = 0; l < kNumIrreps; ++l) f[l] = FieldMatrix::identity(x[l]);
    return f;
}

bool IsotypicMorphism::is_zero() const {
    for (const auto& b : blocks)
        if (!b.is_zero()) return false;
    return true;
}

std::size_t IsotypicMorphism::dense_rank() const {
    std::size_t r = 0;
    for (int l = 0; l < kNumIrreps; ++l) r += rank((*this)[l]) * kIrrepDims[static_cast<std::size_t>(l)];
    return r;
}

bool IsotypicMorphism::well_formed() const {
    for (int l = 0; l < kNumIrreps; ++l)
        if ((*this)[l].rows() != target[l] || (*this)[l].cols() != source[l]) return false;
    return true;
}

IsotypicMorphism operator+(IsotypicMorphism a, const IsotypicMorphism& b) {
    for (int l = 0; l < kNumIrreps; ++l) a[l] += b[l];
    return a;
}

IsotypicMorphism operator-(IsotypicMorphism a, const IsotypicMorphism& b) {
    for (int l = 0; l < kNumIrreps; ++l) a[l] -= b[l];
    return a;
}

IsotypicMorphism compose(const IsotypicMorphism& f, const IsotypicMorphism& g) {
    if (!(f.source == g.target)) throw std::invalid_argument("compose: object mismatch");
    IsotypicMorphism h(g.source, f.target);
    for (int l = 0; l < kNumIrreps; ++l) h[l] = f[l] * g[l];
    return h;
}

IsotypicMorphism direct_sum(const IsotypicMorphism& f, const IsotypicMorphism& g) {
    IsotypicMorphism h(f.source + g.source, f.target + g.target);
    for (int l = 0; l < kNumIrreps; ++l) h[l] = direct_sum(f[l], g[l]);
    return h;
}

IsotypicMorphism transpose(const IsotypicMorphism& f) {
    IsotypicMorphism h(f.target, f.source);
    for (int l = 0; l < kNumIrreps; ++l) h[l] = f[l].transpose();
    return h;
}

KernelResult kernel(const IsotypicMorphism& f) {
    KernelResult r;
    std::array<FieldMatrix, kNumIrreps> incl;
    for (int l = 0; l < kNumIrreps; ++l) {
        const FieldMatrix& b = f[l];
        auto e = rref(b);
        incl[static_cast<std::size_t>(l)] = kernel_from_rref(e, b.cols());
        std::vector<bool> piv(b.cols(), false);
        for (auto p : e.pivots) piv[p] = true;
        for (std::size_t c = 0; c < b.cols(); ++c)
            if (!piv[c]) r.free_rows[static_cast<std::size_t>(l)].push_back(c);
        r.object[l] = incl[static_cast<std::size_t>(l)].cols();
    }
    r.inclusion = IsotypicMorphism(r.object, f.source);
    r.inclusion.blocks = std::move(incl);
    return r;
}

CokernelResult cokernel(const IsotypicMorphism& f) {
    CokernelResult r;
    std::array<FieldMatrix, kNumIrreps> proj, sect;
    for (int l = 0; l < kNumIrreps; ++l) {
        const FieldMatrix& b = f[l];
        const std::size_t mt = b.rows();
        auto e = rref(b.transpose());
        std::vector<bool> piv(mt, false);
        for (auto p : e.pivots) piv[p] = true;
        std::vector<std::size_t> np;
        for (std::size_t i = 0; i < mt; ++i)
            if (!piv[i]) np.push_back(i);
        FieldMatrix p(np.size(), mt), s(mt, np.size());
        for (std::size_t i = 0; i < np.size(); ++i) {
            p(i, np[i]) = Scalar(1);
            s(np[i], i) = Scalar(1);
            for (std::size_t k = 0; k < e.pivots.size(); ++k)
                if (!e.reduced(k, np[i]).is_zero()) p(i, e.pivots[k]) = -e.reduced(k, np[i]);
        }
        r.object[l] = np.size();
        proj[static_cast<std::size_t>(l)] = std::move(p);
        sect[static_cast<std::size_t>(l)] = std::move(s);
    }
    r.projection = IsotypicMorphism(f.target, r.object);
    r.projection.blocks = std::move(proj);
    r.section = IsotypicMorphism(r.object, f.target);
    r.section.blocks = std::move(sect);
    return r;
}

IsotypicMorphism lift_through_mono(const IsotypicMorphism& f, const IsotypicMorphism& k) {
    if (!(f.target == k.target)) throw std::invalid_argument("lift_through_mono: target mismatch");
    IsotypicMorphism g(f.source, k.source);
    for (int l = 0; l < kNumIrreps; ++l) {
        auto x = solve(k[l], f[l]);
        if (!x) throw NotContained(std::string("image not contained in block ") + irrep_label(l));
        g[l] = std::move(*x);
    }
    return g;
}

IsotypicMorphism lift_through_kernel(const IsotypicMorphism& f, const KernelResult& k, bool check) {
    if (!(f.target == k.inclusion.target)) throw std::invalid_argument("lift_through_kernel: target mismatch");
    IsotypicMorphism g(f.source, k.object);
    for (int l = 0; l < kNumIrreps; ++l) g[l] = f[l].select_rows(k.free_rows[static_cast<std::size_t>(l)]);
    if (check && !(compose(k.inclusion, g) == f)) throw NotContained("image not contained in the kernel");
    return g;
}

// ---- intertwiners and tensor structure ----

std::vector<FieldMatrix> intertwiner_basis(const std::vector<FieldMatrix>& rho_k, const std::vector<FieldMatrix>& rho) {
    const std::size_t n = rho.front().rows(), d = rho_k.front().rows();
    FieldMatrix sys(rho.size() * n * d, n * d);
    for (std::size_t s = 0; s < rho.size(); ++s) {
        const FieldMatrix& a = rho[s];
        const FieldMatrix& b = rho_k[s];
        const std::size_t base = s * n * d;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < d; ++c) {
                const std::size_t eq = base + r * d + c;
                for (std::size_t p = 0; p < n; ++p)
                    if (!a(r, p).is_zero()) sys(eq, p * d + c) += a(r, p);
                for (std::size_t q = 0; q < d; ++q)
                    if (!b(q, c).is_zero()) sys(eq, r * d + q) -= b(q, c);
            }
    }
    FieldMatrix k = kernel_basis(sys);
    std::vector<FieldMatrix> out;
    for (std::size_t j = 0; j < k.cols(); ++j) {
        FieldMatrix x(n, d);
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < d; ++q) x(p, q) = k(p * d + q, j);
        out.push_back(std::move(x));
    }
    return out;
}

namespace {

std::vector<FieldMatrix> kron_gens(const std::vector<FieldMatrix>& a, const std::vector<FieldMatrix>& b) {
    std::vector<FieldMatrix> out;
    for (std::size_t s = 0; s < a.size(); ++s) out.push_back(kron(a[s], b[s]));
    return out;
}

std::vector<FieldMatrix> block_gens(const Fixture& fx, const std::array<std::size_t, kNumIrreps>& mult) {
    std::vector<FieldMatrix> out;
    for (std::size_t s = 0; s < fx.group.generators.size(); ++s) {
        std::size_t n = 0;
        for (int l = 0; l < kNumIrreps; ++l) n += mult[static_cast<std::size_t>(l)] * kIrrepDims[static_cast<std::size_t>(l)];
        FieldMatrix m(n, n);
        std::size_t off = 0;
        for (int l = 0; l < kNumIrreps; ++l) {
            const auto& g = fx.irreps[static_cast<std::size_t>(l)].generator_matrices[s];
            for (std::size_t a = 0; a < mult[static_cast<std::size_t>(l)]; ++a) {
                m.set_block(off, off, g);
                off += g.rows();
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::optional<std::string> validate_pair(const Fixture& fx, int i, int j, const TensorStructure::Pair& p) {
    const std::string who = std::string(irrep_label(i)) + " x " + irrep_label(j) + ": ";
    const std::size_t n = kIrrepDims[static_cast<std::size_t>(i)] * kIrrepDims[static_cast<std::size_t>(j)];
    if (p.decomposition.rows() != n || p.decomposition.cols() != n || p.inverse.rows() != n || p.inverse.cols() != n)
        return who + "wrong matrix shape";
    Character prod = fx.characters[static_cast<std::size_t>(i)] * fx.characters[static_cast<std::size_t>(j)];
    Multiplicities m = decompose(fx.group, fx.characters, prod);
    for (int k = 0; k < kNumIrreps; ++k)
        if (static_cast<std::size_t>(m[static_cast<std::size_t>(k)]) != p.mult[static_cast<std::size_t>(k)]) return who + "multiplicities disagree with characters";
    if (!(p.decomposition * p.inverse).is_identity() || !(p.inverse * p.decomposition).is_identity())
        return who + "decomposition matrix is not inverse to its stored inverse";
    auto dense = kron_gens(fx.irreps[static_cast<std::size_t>(i)].generator_matrices, fx.irreps[static_cast<std::size_t>(j)].generator_matrices);
    auto blocks = block_gens(fx, p.mult);
    for (std::size_t s = 0; s < dense.size(); ++s)
        if (!(p.decomposition * dense[s] == blocks[s] * p.decomposition)) return who + "decomposition is not equivariant";
    return std::nullopt;
}

}  // namespace

TensorStructure TensorStructure::build(const Fixture& fx) {
    TensorStructure ts;
    ts.digest_ = fx.digest;
    for (int i = 0; i < kNumIrreps; ++i)
        for (int j = 0; j < kNumIrreps; ++j) {
            auto dense = kron_gens(fx.irreps[static_cast<std::size_t>(i)].generator_matrices, fx.irreps[static_cast<std::size_t>(j)].generator_matrices);
            const std::size_t n = dense.front().rows();
            Pair p;
            FieldMatrix q(n, n);
            std::size_t col = 0;
            for (int k = 0; k < kNumIrreps; ++k) {
                auto basis = intertwiner_basis(fx.irreps[static_cast<std::size_t>(k)].generator_matrices, dense);
                p.mult[static_cast<std::size_t>(k)] = basis.size();
                for (const auto& x : basis) {
                    if (col + x.cols() > n) throw StructureFailure("too many intertwiners");
                    q.set_block(0, col, x);
                    col += x.cols();
                }
            }
            if (col != n) throw StructureFailure("intertwiners do not fill the tensor product");
            try {
                p.inverse = q;
                p.decomposition = inverse(q);
            } catch (const SingularMatrix&) {
                throw StructureFailure(std::string("singular decomposition for ") + irrep_label(i) + " x " + irrep_label(j));
            }
            if (auto err = validate_pair(fx, i, j, p)) throw StructureFailure(*err);
            ts.pairs_.push_back(std::move(p));
        }
    return ts;
}

std::optional<std::string> TensorStructure::validate(const Fixture& fx) const {
    if (pairs_.size() != static_cast<std::size_t>(kNumIrreps * kNumIrreps)) return "incomplete pair table";
    for (int i = 0; i < kNumIrreps; ++i)
        for (int j = 0; j < kNumIrreps; ++j)
            if (auto err = validate_pair(fx, i, j, pair(i, j))) return err;
    return std::nullopt;
}

namespace {

void write_matrix(std::ostringstream& os, const char* name, const FieldMatrix& m) {
    os << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c).to_string();
        os << '\n';
    }
}

std::optional<FieldMatrix> read_matrix(std::istream& is, const char* name) {
    std::string tag;
    std::size_t r = 0, c = 0;
    if (!(is >> tag >> r >> c) || tag != name) return std::nullopt;
    FieldMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            std::string tok;
            if (!(is >> tok)) return std::nullopt;
            m(i, j) = Scalar::parse(tok);
        }
    return m;
}

}  // namespace

std::string TensorStructure::serialize() const {
    std::ostringstream os;
    os << "bgg-forge-tensor-cache 1\n";
    os << "fixture " << digest_ << '\n';
    for (int i = 0; i < kNumIrreps; ++i)
        for (int j = 0; j < kNumIrreps; ++j) {
            const Pair& p = pair(i, j);
            os << "pair " << irrep_label(i) << ' ' << irrep_label(j) << " mult";
            for (auto m : p.mult) os << ' ' << m;
            os << '\n';
            write_matrix(os, "D", p.decomposition);
            write_matrix(os, "Dinv", p.inverse);
        }
    os << "end\n";
    return os.str();
}

std::optional<TensorStructure> TensorStructure::deserialize(const std::string& text, const Fixture& fx) {
    try {
        std::istringstream is(text);
        std::string a, b, c;
        if (!(is >> a >> b) || a != "bgg-forge-tensor-cache" || b != "1") return std::nullopt;
        if (!(is >> a >> b) || a != "fixture" || b != fx.digest) return std::nullopt;
        TensorStructure ts;
        ts.digest_ = b;
        for (int i = 0; i < kNumIrreps; ++i)
            for (int j = 0; j < kNumIrreps; ++j) {
                if (!(is >> a >> b >> c) || a != "pair" || b != irrep_label(i) || c != irrep_label(j)) return std::nullopt;
                if (!(is >> a) || a != "mult") return std::nullopt;
                Pair p;
                for (auto& m : p.mult)
                    if (!(is >> m)) return std::nullopt;
                auto d = read_matrix(is, "D");
                auto di = read_matrix(is, "Dinv");
                if (!d || !di) return std::nullopt;
                p.decomposition = std::move(*d);
                p.inverse = std::move(*di);
                ts.pairs_.push_back(std::move(p));
            }
        if (!(is >> a) || a != "end") return std::nullopt;
        if (ts.validate(fx)) return std::nullopt;
        return ts;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

TensorStructure load_or_build_tensor_structure(const Fixture& fx, const std::string& cache_dir, bool* rebuilt) {
    namespace fs = std::filesystem;
    if (rebuilt) *rebuilt = false;
    if (!cache_dir.empty()) {
        fs::path p = fs::path(cache_dir) / "tensor_structure.txt";
        std::ifstream in(p, std::ios::binary);
        if (in) {
            std::ostringstream ss;
            ss << in.rdbuf();
            if (auto ts = TensorStructure::deserialize(ss.str(), fx)) return std::move(*ts);
        }
    }
    TensorStructure ts = TensorStructure::build(fx);
    if (rebuilt) *rebuilt = true;
    if (!cache_dir.empty()) {
        std::error_code ec;
        fs::create_directories(cache_dir, ec);
        fs::path p = fs::path(cache_dir) / "tensor_structure.txt";
        fs::path tmp = p;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << ts.serialize();
        }
        fs::rename(tmp, p, ec);
    }
    return ts;
}

// ---- tensoring with V ----

IsotypicObject tensor_by_V(const RepContext& ctx, const IsotypicObject& x) {
    IsotypicObject y;
    for (int k = 0; k < kNumIrreps; ++k)
        for (int l = 0; l < kNumIrreps; ++l) y[l] += x[k] * ctx.cV(k, l);
    return y;
}

std::size_t tensor_offset(const RepContext& ctx, const IsotypicObject& x, int l, int k, std::size_t a) {
    std::size_t off = 0;
    for (int k2 = 0; k2 < k; ++k2) off += x[k2] * ctx.cV(k2, l);
    return off + a * ctx.cV(k, l);
}

IsotypicMorphism tensor_by_V_morphism(const RepContext& ctx, const IsotypicMorphism& f) {
    IsotypicMorphism g(tensor_by_V(ctx, f.source), tensor_by_V(ctx, f.target));
    for (int l = 0; l < kNumIrreps; ++l) {
        FieldMatrix& b = g[l];
        std::size_t r0 = 0, c0 = 0;
        for (int k = 0; k < kNumIrreps; ++k) {
            const std::size_t c = ctx.cV(k, l);
            const FieldMatrix& fk = f[k];
            if (c) {
                for (std::size_t i = 0; i < fk.rows(); ++i)
                    for (std::size_t j = 0; j < fk.cols(); ++j) {
                        if (fk(i, j).is_zero()) continue;
                        for (std::size_t t = 0; t < c; ++t) b(r0 + i * c + t, c0 + j * c + t) = fk(i, j);
                    }
            }
            r0 += fk.rows() * c;
            c0 += fk.cols() * c;
        }
    }
    return g;
}

// ---- dense models ----

std::vector<FieldMatrix> dense_representation(const RepContext& ctx, const IsotypicObject& x) {
    return block_gens(*ctx.fixture, x.mult);
}

namespace {

std::array<std::size_t, kNumIrreps + 1> dense_offsets(const IsotypicObject& x) {
    std::array<std::size_t, kNumIrreps + 1> off{};
    for (int l = 0; l < kNumIrreps; ++l) off[static_cast<std::size_t>(l) + 1] = off[static_cast<std::size_t>(l)] + x[l] * kIrrepDims[static_cast<std::size_t>(l)];
    return off;
}

}  // namespace

FieldMatrix isotypic_to_dense(const IsotypicMorphism& f) {
    auto ro = dense_offsets(f.target), co = dense_offsets(f.source);
    FieldMatrix m(f.target.dense_dimension(), f.source.dense_dimension());
    for (int l = 0; l < kNumIrreps; ++l) {
        const std::size_t d = kIrrepDims[static_cast<std::size_t>(l)];
        const FieldMatrix& b = f[l];
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (b(i, j).is_zero()) continue;
                for (std::size_t z = 0; z < d; ++z) m(ro[static_cast<std::size_t>(l)] + i * d + z, co[static_cast<std::size_t>(l)] + j * d + z) = b(i, j);
            }
    }
    return m;
}

IsotypicMorphism dense_to_isotypic(const RepContext& ctx, const FieldMatrix& m, const IsotypicObject& source, const IsotypicObject& target) {
    if (m.rows() != target.dense_dimension() || m.cols() != source.dense_dimension())
        throw std::invalid_argument("dense_to_isotypic: shape mismatch");
    auto gs = dense_representation(ctx, source), gt = dense_representation(ctx, target);
    for (std::size_t s = 0; s < gs.size(); ++s)
        if (!(m * gs[s] == gt[s] * m)) throw NotEquivariant("dense map does not commute with generator " + ctx.fixture->group.generator_names[s]);
    auto ro = dense_offsets(target), co = dense_offsets(source);
    IsotypicMorphism f(source, target);
    for (int l = 0; l < kNumIrreps; ++l) {
        const std::size_t d = kIrrepDims[static_cast<std::size_t>(l)];
        for (std::size_t i = 0; i < target[l]; ++i)
            for (std::size_t j = 0; j < source[l]; ++j) f[l](i, j) = m(ro[static_cast<std::size_t>(l)] + i * d, co[static_cast<std::size_t>(l)] + j * d);
    }
    if (!(isotypic_to_dense(f) == m)) throw NotEquivariant("dense map is not of isotypic block form");
    return f;
}

namespace {

FieldMatrix tensor_iso_impl(const RepContext& ctx, const IsotypicObject& x, bool inv) {
    const std::size_t nx = x.dense_dimension();
    const std::size_t dv = kIrrepDims[kV];
    const IsotypicObject y = tensor_by_V(ctx, x);
    auto yo = dense_offsets(y);
    auto xo = dense_offsets(x);
    FieldMatrix t(dv * nx, dv * nx);
    for (int k = 0; k < kNumIrreps; ++k) {
        const std::size_t dk = kIrrepDims[static_cast<std::size_t>(k)];
        const FieldMatrix& D = ctx.tensor.pair(kV, k).decomposition;
        const FieldMatrix& Q = ctx.tensor.pair(kV, k).inverse;
        for (std::size_t a = 0; a < x[k]; ++a) {
            // rows of D in canonical order (l, b, z); columns (v, y)
            std::size_t drow = 0;
            for (int l = 0; l < kNumIrreps; ++l) {
                const std::size_t dl = kIrrepDims[static_cast<std::size_t>(l)];
                const std::size_t c = ctx.cV(k, l);
                for (std::size_t b = 0; b < c; ++b)
                    for (std::size_t z = 0; z < dl; ++z, ++drow) {
                        const std::size_t row = yo[static_cast<std::size_t>(l)] + (tensor_offset(ctx, x, l, k, a) + b) * dl + z;
                        for (std::size_t v = 0; v < dv; ++v)
                            for (std::size_t yy = 0; yy < dk; ++yy) {
                                const std::size_t col = v * nx + xo[static_cast<std::size_t>(k)] + a * dk + yy;
                                if (inv) {
                                    const Scalar& e = Q(v * dk + yy, drow);
                                    if (!e.is_zero()) t(col, row) = e;
                                } else {
                                    const Scalar& e = D(drow, v * dk + yy);
                                    if (!e.is_zero()) t(row, col) = e;
                                }
                            }
                    }
            }
        }
    }
    return t;
}

}  // namespace

FieldMatrix tensor_iso_dense(const RepContext& ctx, const IsotypicObject& x) { return tensor_iso_impl(ctx, x, false); }

FieldMatrix tensor_iso_dense_inverse(const RepContext& ctx, const IsotypicObject& x) { return tensor_iso_impl(ctx, x, true); }

}  // namespace bggforge
