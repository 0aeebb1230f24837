#pragma once

#include "bggforge/field_matrix.hpp"
#include "bggforge/group_rep.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bggforge {

/// Multiplicity vector over Irr(G) in the fixed irrep order.
struct IsotypicObject {
    std::array<std::size_t, kNumIrreps> mult{};

    static IsotypicObject single(int l, std::size_t copies = 1) {
        IsotypicObject x;
        x.mult[static_cast<std::size_t>(l)] = copies;
        return x;
    }
    std::size_t operator[](int l) const { return mult[static_cast<std::size_t>(l)]; }
    std::size_t& operator[](int l) { return mult[static_cast<std::size_t>(l)]; }
    bool is_zero() const;
    /// Sum of m_l * dim(l).
    std::size_t dense_dimension() const;
    friend IsotypicObject operator+(IsotypicObject a, const IsotypicObject& b);
    friend bool operator==(const IsotypicObject&, const IsotypicObject&) = default;
    /// e.g. "χ1 + 2χ5", "0"
    std::string to_string() const;
};

inline constexpr std::array<std::size_t, kNumIrreps> kIrrepDims{1, 3, 3, 4, 5};

/// Equivariant map in multiplicity coordinates: one target x source matrix
/// per irreducible. The dense map is the sum of block (x) identity(dim).
struct IsotypicMorphism {
    IsotypicObject source, target;
    std::array<FieldMatrix, kNumIrreps> blocks;

    IsotypicMorphism() = default;
    IsotypicMorphism(IsotypicObject s, IsotypicObject t);  // zero map

    static IsotypicMorphism identity(const IsotypicObject& x);
    static IsotypicMorphism zero(const IsotypicObject& s, const IsotypicObject& t) { return {s, t}; }

    FieldMatrix& operator[](int l) { return blocks[static_cast<std::size_t>(l)]; }
    const FieldMatrix& operator[](int l) const { return blocks[static_cast<std::size_t>(l)]; }

    bool is_zero() const;
    /// Per-block rank, weighted by irreducible dimension.
    std::size_t dense_rank() const;
    /// Checks block shapes against source/target.
    bool well_formed() const;

    friend bool operator==(const IsotypicMorphism&, const IsotypicMorphism&) = default;
    friend IsotypicMorphism operator+(IsotypicMorphism a, const IsotypicMorphism& b);
    friend IsotypicMorphism operator-(IsotypicMorphism a, const IsotypicMorphism& b);
};

/// f o g
IsotypicMorphism compose(const IsotypicMorphism& f, const IsotypicMorphism& g);
IsotypicMorphism direct_sum(const IsotypicMorphism& f, const IsotypicMorphism& g);
/// Blockwise transpose (target and source swap).
IsotypicMorphism transpose(const IsotypicMorphism& f);

struct KernelResult {
    IsotypicObject object;
    IsotypicMorphism inclusion;
    /// Per irreducible, the source row carrying the identity pattern for each
    /// kernel basis vector.
    std::array<std::vector<std::size_t>, kNumIrreps> free_rows;
};

struct CokernelResult {
    IsotypicObject object;
    IsotypicMorphism projection;
    /// Splitting of the projection: projection o section = identity.
    IsotypicMorphism section;
};

KernelResult kernel(const IsotypicMorphism& f);
CokernelResult cokernel(const IsotypicMorphism& f);

struct NotContained : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The unique g with k o g = f for a monomorphism k. Throws NotContained.
IsotypicMorphism lift_through_mono(const IsotypicMorphism& f, const IsotypicMorphism& k);
/// Same for k the inclusion of a computed kernel; row selection only.
/// With check, verifies k o g = f and throws NotContained otherwise.
IsotypicMorphism lift_through_kernel(const IsotypicMorphism& f, const KernelResult& k, bool check = false);

struct NotEquivariant : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StructureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Basis of {X : rho(g) X = X rho_k(g) for the generators}; pivot-canonical.
std::vector<FieldMatrix> intertwiner_basis(const std::vector<FieldMatrix>& rho_k, const std::vector<FieldMatrix>& rho);

/// Decomposition data of all ordered pairs of irreducibles.
class TensorStructure {
public:
    struct Pair {
        std::array<std::size_t, kNumIrreps> mult{};
        FieldMatrix decomposition;  // D: dense i(x)j -> canonical sum of irreducibles
        FieldMatrix inverse;
    };

    /// Throws StructureFailure.
    static TensorStructure build(const Fixture& fx);

    const Pair& pair(int i, int j) const { return pairs_[static_cast<std::size_t>(i * kNumIrreps + j)]; }
    std::size_t c(int i, int j, int k) const { return pair(i, j).mult[static_cast<std::size_t>(k)]; }
    const std::string& fixture_digest() const { return digest_; }

    /// Equivariance and invertibility of every pair; nullopt when ok.
    std::optional<std::string> validate(const Fixture& fx) const;

    std::string serialize() const;
    /// Parses and revalidates; nullopt on any mismatch.
    static std::optional<TensorStructure> deserialize(const std::string& text, const Fixture& fx);

private:
    std::vector<Pair> pairs_;
    std::string digest_;
};

/// Loads cache_dir/tensor_structure.txt when valid for this fixture,
/// otherwise builds and writes it. Empty cache_dir disables the cache.
TensorStructure load_or_build_tensor_structure(const Fixture& fx, const std::string& cache_dir, bool* rebuilt = nullptr);

/// Fixture plus tensor structure; everything isotypic needs.
struct RepContext {
    const Fixture* fixture = nullptr;
    TensorStructure tensor;

    const std::vector<FieldMatrix>& gens(int l) const { return fixture->irreps[static_cast<std::size_t>(l)].generator_matrices; }
    std::size_t num_generators() const { return fixture->group.generators.size(); }
    std::size_t cV(int k, int l) const { return tensor.c(kV, k, l); }
};

/// V (x) X.
IsotypicObject tensor_by_V(const RepContext& ctx, const IsotypicObject& x);
/// Offset of the multiplicity index (k, a, 0) of irreducible l inside V (x) X.
std::size_t tensor_offset(const RepContext& ctx, const IsotypicObject& x, int l, int k, std::size_t a);
IsotypicMorphism tensor_by_V_morphism(const RepContext& ctx, const IsotypicMorphism& f);

/// Dense generator matrices of the canonical model of x.
std::vector<FieldMatrix> dense_representation(const RepContext& ctx, const IsotypicObject& x);
FieldMatrix isotypic_to_dense(const IsotypicMorphism& f);
/// Throws NotEquivariant.
IsotypicMorphism dense_to_isotypic(const RepContext& ctx, const FieldMatrix& m, const IsotypicObject& source, const IsotypicObject& target);
/// Dense isomorphism from the Kronecker model V (x) canon(X) onto canon(V (x) X).
FieldMatrix tensor_iso_dense(const RepContext& ctx, const IsotypicObject& x);
FieldMatrix tensor_iso_dense_inverse(const RepContext& ctx, const IsotypicObject& x);

std::ostream& operator<<(std::ostream& os, const IsotypicObject& x);

}  // namespace bggforge
