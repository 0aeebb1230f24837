#pragma once

#include "bggforge/isotypic.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bggforge {

/// Degree -> isotypic object; zero objects are never stored.
using GradedRep = std::map<int, IsotypicObject>;

GradedRep normalized(const GradedRep& r);
GradedRep operator+(const GradedRep& a, const GradedRep& b);
std::size_t total_dimension(const GradedRep& r);
/// {"-2": [0,0,0,1,0], ...}
std::string graded_rep_to_json(const GradedRep& r);
std::string graded_rep_to_string(const GradedRep& r);

/// Static data for modules over E = Lambda V: the isotypic shape of
/// Lambda^j V (x) chi_k, the wedge action on it, invariant forms and the
/// swap of two V factors.
class ExteriorContext {
public:
    static constexpr int kTop = 5;  // dim V

    static ExteriorContext build(const Fixture& fx, TensorStructure ts);

    const RepContext& rep() const { return rep_; }

    /// Lambda^j V (x) chi_k in canonical coordinates, j = 0..5.
    const IsotypicObject& piece(int k, int j) const { return piece_[idx(k, j)]; }
    /// V (x) piece(k, j) -> piece(k, j+1), j = 0..4.
    const IsotypicMorphism& wedge(int k, int j) const { return wedge_[idx(k, j)]; }
    const IsotypicMorphism& wedge_right_inverse(int k, int j) const { return wedge_rinv_[idx(k, j)]; }
    /// Dense columns of the decomposition of Lambda^j V (x) chi_k.
    const FieldMatrix& piece_basis(int k, int j) const { return piece_basis_[idx(k, j)]; }
    /// Dense generator matrices of Lambda^j V.
    const std::vector<FieldMatrix>& wedge_power_gens(int j) const { return wedge_gens_[static_cast<std::size_t>(j)]; }
    /// Dense multiplication V (x) Lambda^j V -> Lambda^{j+1} V.
    const FieldMatrix& wedge_dense(int j) const { return wedge_dense_[static_cast<std::size_t>(j)]; }

    /// Symmetric invariant form of chi_k: rho^T J rho = J.
    const FieldMatrix& form(int k) const { return form_[static_cast<std::size_t>(k)]; }
    /// Transport of the V-action components under duality, cV(k,l) x cV(l,k).
    const FieldMatrix& theta(int k, int l) const { return theta_[static_cast<std::size_t>(k * kNumIrreps + l)]; }
    /// Swap of the two V factors on V (x) (V (x) chi_k).
    const IsotypicMorphism& swap(int k) const { return swap_[static_cast<std::size_t>(k)]; }

    /// Swap on V (x) (V (x) X), assembled from the per-irreducible swaps.
    IsotypicMorphism swap_on(const IsotypicObject& x) const;

private:
    static std::size_t idx(int k, int j) { return static_cast<std::size_t>(k * (kTop + 1) + j); }
    RepContext rep_;
    std::vector<IsotypicObject> piece_;
    std::vector<IsotypicMorphism> wedge_, wedge_rinv_;
    std::vector<FieldMatrix> piece_basis_;
    std::vector<std::vector<FieldMatrix>> wedge_gens_;
    std::vector<FieldMatrix> wedge_dense_;
    std::vector<FieldMatrix> form_;
    std::vector<FieldMatrix> theta_;
    std::vector<IsotypicMorphism> swap_;
};

/// Multiplicity index (l, i, b) of chi_m inside V (x) X: i-th copy of chi_l
/// in X, b-th copy of chi_m in V (x) chi_l.
std::size_t tensor_index(const RepContext& ctx, const IsotypicObject& x, int m, int l, std::size_t i, std::size_t b);

/// Finitely generated graded E-module with G-action in isotypic coordinates.
/// actions[d] : V (x) M_d -> M_{d-1}; V sits in degree -1.
struct GradedModule {
    std::map<int, IsotypicObject> components;
    std::map<int, IsotypicMorphism> actions;
    /// Set for modules built as E (x) N: the generators N.
    std::optional<GradedRep> free_generators;

    IsotypicObject component(int d) const;
    /// Stored action, or the zero map when absent.
    IsotypicMorphism action(const RepContext& ctx, int d) const;
    bool is_zero() const;
    int min_degree() const;
    int max_degree() const;
    /// Degree -> dense dimension.
    std::map<int, std::size_t> hilbert_series() const;
    GradedRep character_series() const;
    /// Same components and actions (free descriptor ignored).
    bool same_data(const GradedModule& o) const;
};

using ModulePtr = std::shared_ptr<const GradedModule>;

struct ModuleMorphism {
    ModulePtr source, target;
    std::map<int, IsotypicMorphism> maps;

    IsotypicMorphism at(int d) const;
};

// ---- invariants ----

/// v.(w.m) + w.(v.m) = 0 in every degree; nullopt when it holds.
std::optional<std::string> check_square_zero(const ExteriorContext& ctx, const GradedModule& m);
/// act o (V (x) f_d) = f_{d-1} o act in every degree.
std::optional<std::string> check_commutation(const ExteriorContext& ctx, const ModuleMorphism& f);
/// Every component map of f has image inside the radical of the target.
bool image_in_radical(const ExteriorContext& ctx, const ModuleMorphism& f);

// ---- constructions ----

/// E (x) N.
GradedModule free_module(const ExteriorContext& ctx, const GradedRep& n);
/// Module with the given components and zero action.
GradedModule trivial_action_module(const RepContext& ctx, const GradedRep& comps);
/// Degree shift: result_d = m_{d+s}.
GradedModule shift(const GradedModule& m, int s);

/// Offset of the segment (j, k, copy) inside block l of component d of E (x) N.
/// Segments are ordered by j, then k, then copy; j = 0 are the generators.
std::size_t free_offset(const ExteriorContext& ctx, const GradedRep& n, int d, int l, int j, int k, std::size_t copy);

struct DegreeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unique E-linear extension of generator maps N_d -> M_d to E (x) N -> M.
/// Throws DegreeMismatch when a generator map has the wrong shape.
ModuleMorphism extend_to_module_morphism(const ExteriorContext& ctx, ModulePtr free_source, ModulePtr target,
                                         const std::map<int, IsotypicMorphism>& generator_maps);

struct KernelModule {
    ModulePtr module;
    ModuleMorphism inclusion;
};

KernelModule kernel_module(const ExteriorContext& ctx, const ModuleMorphism& f);

GradedRep socle(const ExteriorContext& ctx, const GradedModule& m);
/// Dimension of the image of act_{d+1} inside M_d, per degree.
GradedRep radical(const ExteriorContext& ctx, const GradedModule& m);

struct TopResult {
    GradedRep top;
    std::map<int, IsotypicMorphism> projection;  // M_d -> top_d
    std::map<int, IsotypicMorphism> section;     // top_d -> M_d
};
TopResult top(const ExteriorContext& ctx, const GradedModule& m);

/// E (x) top(M) -> M.
ModuleMorphism projective_cover(const ExteriorContext& ctx, ModulePtr m);

GradedModule dual(const ExteriorContext& ctx, const GradedModule& m);
/// f : M -> N gives f* : N* -> M*, with the given dual modules.
ModuleMorphism dual(const ModuleMorphism& f, ModulePtr dual_target, ModulePtr dual_source);

/// M -> dual(E (x) top(dual M)); source is M itself.
ModuleMorphism injective_hull(const ExteriorContext& ctx, ModulePtr m);

/// Cogenerator (socle) degrees of E (x) N, resp. of its dual.
GradedRep free_cogenerators(const GradedRep& generators);
GradedRep dual_free_cogenerators(const GradedRep& generators);

struct TateTerm {
    int position = 0;
    /// Socle of the free module at this position.
    GradedRep cogenerators;
    ModulePtr module;  // null when modules were not kept
};

struct TateWindow {
    int depth_left = 0, depth_right = 0;
    std::map<int, TateTerm> terms;                  // by position
    std::map<int, ModuleMorphism> differentials;   // position p -> p + 1
    ModulePtr base;                                 // M
    ModuleMorphism cover, hull;                     // P^0 -> M, M -> I^0
};

/// Minimal projective resolution P_0 <- P_1 <- ... of M, one term at a time.
/// Term k is known once its generators are; the cover of the last term and
/// the next kernel are only built when the following term is requested.
class ProjectiveResolution {
public:
    ProjectiveResolution(const ExteriorContext& ctx, ModulePtr m, bool keep_modules = false, bool check_invariants = false);

    std::size_t length() const { return generators_.size(); }
    const GradedRep& generators(std::size_t k) const { return generators_.at(k); }
    /// Computes generators of the next term.
    void extend();
    /// Cover P_k -> K_k (K_0 = M); requires keep_modules.
    const ModuleMorphism& cover(std::size_t k);
    /// Inclusion K_{k+1} -> P_k; requires keep_modules and length() > k + 1.
    const ModuleMorphism& inclusion(std::size_t k) const { return inclusions_.at(k); }

private:
    void build_cover();
    const ExteriorContext* ctx_;
    bool keep_, check_;
    ModulePtr pending_;  // K_k for k = length() - 1
    TopResult pending_top_;
    std::vector<GradedRep> generators_;
    std::vector<ModuleMorphism> covers_, inclusions_;
    std::optional<ModuleMorphism> last_cover_;
};

struct ResolutionOptions {
    bool keep_modules = false;  // store free modules and differentials
    bool check_invariants = false;
};

/// Projective resolution of M at positions 0..-depth_left and injective
/// resolution at positions 1..depth_right+1.
TateWindow minimal_resolutions(const ExteriorContext& ctx, ModulePtr m, int depth_left, int depth_right,
                               const ResolutionOptions& opt = {});
/// Window from a resolution p of M and a resolution q of dual(M).
TateWindow assemble_window(const ExteriorContext& ctx, ProjectiveResolution& p, ProjectiveResolution& q, ModulePtr m,
                           bool keep_modules);

}  // namespace bggforge
