#pragma once

#include "bggforge/field_matrix.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bggforge {

inline constexpr int kNumIrreps = 5;
/// Index order used everywhere: chi1, chi3, sigma_chi3, chi4, chi5.
enum Irrep : int { kChi1 = 0, kChi3 = 1, kSigmaChi3 = 2, kChi4 = 3, kChi5 = 4 };
/// V = chi5.
inline constexpr int kV = kChi5;

const char* irrep_label(int l);
/// Typeset label, e.g. "σχ3".
const char* irrep_pretty(int l);
/// Accepts chi1, chi3, sigma_chi3, chi4, chi5 (also the typeset forms).
std::optional<int> parse_irrep_label(std::string_view s);

/// Permutation of {0..n-1}; printed 1-based.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int n);
    /// From 1-based images.
    static Permutation from_one_based(const std::vector<int>& images);

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int x) const { return img_[static_cast<std::size_t>(x)]; }
    const std::vector<int>& images() const { return img_; }

    /// (g*h)(x) = g(h(x))
    friend Permutation operator*(const Permutation& g, const Permutation& h);
    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

    Permutation inverse() const;
    Permutation pow(long m) const;
    bool is_identity() const;
    int order() const;
    bool is_even() const;
    /// Sorted cycle lengths including fixed points.
    std::vector<int> cycle_type() const;
    std::string to_string() const;

private:
    std::vector<int> img_;
};

struct Relation {
    std::string name;
    std::vector<int> word;  // generator indices, product left to right
};

struct GroupData {
    std::string name;
    std::vector<Permutation> generators;
    std::vector<std::string> generator_names;
    std::vector<Relation> relations;
    std::vector<Permutation> class_representatives;
    std::vector<std::string> class_names;
    std::vector<long> class_sizes;
    /// power_map[c][m] = class of g^m for g in class c, m = 0..exponent.
    std::vector<std::vector<int>> power_map;

    /// All elements, identity first, breadth-first over right multiplication
    /// by generators; words[i] spells elements[i].
    std::vector<Permutation> elements;
    std::vector<std::vector<int>> words;
    std::vector<int> element_class;
    std::map<Permutation, int> index;

    long order() const { return static_cast<long>(elements.size()); }
    int num_classes() const { return static_cast<int>(class_sizes.size()); }
    int exponent() const { return static_cast<int>(power_map.front().size()) - 1; }
    int element_index(const Permutation& g) const;
    /// Cycle type, then conjugacy test against representatives sharing it.
    int class_of(const Permutation& g) const;
    int inverse_class(int c) const;

    /// Enumerates elements and derives classes; throws on inconsistency.
    void finalize();
};

class Character {
public:
    Character() = default;
    explicit Character(std::vector<Scalar> values) : v_(std::move(values)) {}
    const std::vector<Scalar>& values() const { return v_; }
    const Scalar& operator[](std::size_t c) const { return v_[c]; }
    std::size_t size() const { return v_.size(); }
    /// Value at the identity class as an integer.
    long dimension() const;

    friend Character operator*(const Character& a, const Character& b);
    friend Character operator+(const Character& a, const Character& b);
    friend Character operator-(const Character& a, const Character& b);
    friend Character operator*(long k, const Character& a);
    friend bool operator==(const Character&, const Character&) = default;

private:
    std::vector<Scalar> v_;
};

Character trivial_character(const GroupData& g);
Character galois_conjugate(const Character& c);
Rational inner_product(const GroupData& g, const Character& chi, const Character& psi);
/// Character of the m-th exterior power (Newton recursion on power sums).
Character exterior_power_character(const GroupData& g, const Character& chi, int m);

struct NotACharacter : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Multiplicities = std::array<long, kNumIrreps>;

/// Throws NotACharacter.
Multiplicities decompose(const GroupData& g, const std::vector<Character>& irreducibles, const Character& chi);

struct IrrepModel {
    std::string label;
    int dimension = 0;
    std::vector<FieldMatrix> generator_matrices;
};

/// Matrix of each element along its word; elements[i] <-> result[i].
std::vector<FieldMatrix> element_matrices(const GroupData& g, const std::vector<FieldMatrix>& gens);
FieldMatrix element_matrix(const GroupData& g, const std::vector<FieldMatrix>& gens, int element);

/// Relations, Cayley-graph closure and trace agreement. nullopt = ok,
/// otherwise the first failure.
std::optional<std::string> verify_irrep(const GroupData& g, const IrrepModel& model, const Character& chi);

struct FixtureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Fixture {
    GroupData group;
    std::vector<Character> characters;  // by Irrep index
    std::vector<IrrepModel> irreps;     // by Irrep index
    /// FNV-1a of the fixture text.
    std::string digest;
};

/// Parses and verifies; throws FixtureError.
Fixture parse_fixture(const std::string& text);
Fixture load_fixture(const std::string& path);
/// Built-in path configured at build time.
std::string default_fixture_path();

std::string fnv1a_hex(std::string_view bytes);

}  // namespace bggforge
