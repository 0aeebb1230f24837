#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bggforge/linalg.hpp"
#include "support.hpp"

#include <fstream>
#include <sstream>

using namespace bggforge;
using testsupport::fixture;

namespace {

// Multiplicity of irreducible k in the dense representation given by one
// matrix per element: rank of the isotypic projector over all 60 elements,
// divided by dim k.
long projector_multiplicity(const std::vector<FieldMatrix>& rho, int k) {
    const auto& fx = fixture();
    const auto& g = fx.group;
    FieldMatrix p(rho.front().rows(), rho.front().cols());
    for (std::size_t e = 0; e < g.elements.size(); ++e) {
        int inv = g.element_index(g.elements[e].inverse());
        p += rho[e] * fx.characters[static_cast<std::size_t>(k)][static_cast<std::size_t>(g.element_class[static_cast<std::size_t>(inv)])];
    }
    return static_cast<long>(rank(p)) / fx.characters[static_cast<std::size_t>(k)].dimension();
}

FieldMatrix wedge2(const FieldMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    FieldMatrix w(pairs.size(), pairs.size());
    for (std::size_t r = 0; r < pairs.size(); ++r)
        for (std::size_t c = 0; c < pairs.size(); ++c) {
            auto [i, j] = pairs[r];
            auto [k, l] = pairs[c];
            w(r, c) = m(i, k) * m(j, l) - m(i, l) * m(j, k);
        }
    return w;
}

std::string fixture_text() {
    std::ifstream in(default_fixture_path());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("fixture loads and the group has order 60") {
    const auto& g = fixture().group;
    CHECK(g.order() == 60);
    CHECK(g.num_classes() == 5);
    long total = 0;
    for (auto s : g.class_sizes) total += s;
    CHECK(total == 60);
    for (const auto& e : g.elements) CHECK(e.is_even());
}

TEST_CASE("class sizes and class membership") {
    const auto& g = fixture().group;
    CHECK(g.class_sizes == std::vector<long>{1, 15, 20, 12, 12});
    CHECK(g.class_of(Permutation::from_one_based({2, 3, 4, 5, 1})) == 3);
    CHECK(g.class_of(Permutation::from_one_based({2, 3, 5, 1, 4})) == 4);
    CHECK(g.class_of(Permutation::from_one_based({1, 2, 4, 5, 3})) == 2);
    // a^2 = (1 3 5 2 4) lies in the other 5-cycle class
    CHECK(g.class_of(g.generators[0].pow(2)) == 4);
}

TEST_CASE("row orthogonality and sum of squares") {
    const auto& fx = fixture();
    long sq = 0;
    for (int i = 0; i < kNumIrreps; ++i) {
        for (int j = 0; j < kNumIrreps; ++j)
            CHECK(inner_product(fx.group, fx.characters[static_cast<std::size_t>(i)], fx.characters[static_cast<std::size_t>(j)]) == (i == j ? 1 : 0));
        long d = fx.characters[static_cast<std::size_t>(i)].dimension();
        sq += d * d;
    }
    CHECK(sq == 60);
}

TEST_CASE("inner products") {
    const auto& fx = fixture();
    const auto& ch = fx.characters;
    CHECK(inner_product(fx.group, ch[kChi5], ch[kChi5]) == 1);
    CHECK(inner_product(fx.group, ch[kChi1], ch[kChi4]) == 0);
    CHECK(inner_product(fx.group, ch[kChi3] * ch[kChi3], ch[kChi5]) == 1);
}

TEST_CASE("chi3 x chi3 decomposition against a projector-rank oracle") {
    const auto& fx = fixture();
    auto r3 = element_matrices(fx.group, fx.irreps[kChi3].generator_matrices);
    std::vector<FieldMatrix> rho;
    for (const auto& m : r3) rho.push_back(kron(m, m));
    Multiplicities oracle{};
    for (int k = 0; k < kNumIrreps; ++k) oracle[static_cast<std::size_t>(k)] = projector_multiplicity(rho, k);
    CHECK(oracle == Multiplicities{1, 1, 0, 0, 1});
    CHECK(decompose(fx.group, fx.characters, fx.characters[kChi3] * fx.characters[kChi3]) == oracle);
    CHECK(decompose(fx.group, fx.characters, fx.characters[kChi1]) == Multiplicities{1, 0, 0, 0, 0});
}

TEST_CASE("exterior powers") {
    const auto& fx = fixture();
    const auto& g = fx.group;
    const auto& chi5 = fx.characters[kChi5];
    CHECK(exterior_power_character(g, chi5, 5) == trivial_character(g));
    CHECK(exterior_power_character(g, fx.characters[kChi3], 0) == trivial_character(g));
    // oracle: traces of the explicit second compound of the chi5 model at class representatives
    auto mats = element_matrices(g, fx.irreps[kChi5].generator_matrices);
    std::vector<Scalar> expected(5);
    for (int c = 0; c < 5; ++c) {
        int e = g.element_index(g.class_representatives[static_cast<std::size_t>(c)]);
        expected[static_cast<std::size_t>(c)] = wedge2(mats[static_cast<std::size_t>(e)]).trace();
    }
    Character w2 = exterior_power_character(g, chi5, 2);
    CHECK(w2 == Character(expected));
    CHECK(w2 == Character({10, -2, 1, 0, 0}));
    CHECK(inner_product(g, w2, fx.characters[kChi4]) == 1);
    const long binom[] = {1, 5, 10, 10, 5, 1};
    for (int m = 0; m <= 5; ++m) CHECK(exterior_power_character(g, chi5, m).dimension() == binom[m]);
}

TEST_CASE("galois conjugate of chi3 is sigma chi3") {
    const auto& fx = fixture();
    CHECK(galois_conjugate(fx.characters[kChi3]) == fx.characters[kSigmaChi3]);
}

TEST_CASE("decompose rejects virtual characters") {
    const auto& fx = fixture();
    CHECK_THROWS_AS(decompose(fx.group, fx.characters, fx.characters[kChi1] - fx.characters[kChi4]), NotACharacter);
}

TEST_CASE("verify_irrep on shipped models and a perturbed model") {
    const auto& fx = fixture();
    for (int l = 0; l < kNumIrreps; ++l)
        CHECK_FALSE(verify_irrep(fx.group, fx.irreps[static_cast<std::size_t>(l)], fx.characters[static_cast<std::size_t>(l)]).has_value());
    IrrepModel bad = fx.irreps[kChi3];
    bad.generator_matrices[0](0, 1) += Scalar(1);
    auto diag = verify_irrep(fx.group, bad, fx.characters[kChi3]);
    REQUIRE(diag.has_value());
    CHECK(diag->find("relation") != std::string::npos);
}

TEST_CASE("chi5 model matches the Sylow conjugation action") {
    // Rebuild the deleted permutation module on the six Sylow 5-subgroups and
    // compare generator matrices with the fixture.
    const auto& fx = fixture();
    const auto& g = fx.group;
    std::vector<std::vector<Permutation>> sylows;
    for (const auto& e : g.elements) {
        if (e.order() != 5) continue;
        std::vector<Permutation> sub;
        for (int k = 0; k < 5; ++k) sub.push_back(e.pow(k));
        std::sort(sub.begin(), sub.end());
        if (std::find(sylows.begin(), sylows.end(), sub) == sylows.end()) sylows.push_back(sub);
    }
    std::sort(sylows.begin(), sylows.end());
    REQUIRE(sylows.size() == 6);
    for (std::size_t s = 0; s < g.generators.size(); ++s) {
        const auto& x = g.generators[s];
        std::vector<int> img;
        for (const auto& p : sylows) {
            std::vector<Permutation> q;
            for (const auto& y : p) q.push_back(x * y * x.inverse());
            std::sort(q.begin(), q.end());
            img.push_back(static_cast<int>(std::find(sylows.begin(), sylows.end(), q) - sylows.begin()));
        }
        FieldMatrix m(5, 5);
        for (int i = 0; i < 5; ++i) {
            if (img[static_cast<std::size_t>(i)] != 5) m(static_cast<std::size_t>(img[static_cast<std::size_t>(i)]), static_cast<std::size_t>(i)) += Scalar(1);
            if (img[5] != 5) m(static_cast<std::size_t>(img[5]), static_cast<std::size_t>(i)) -= Scalar(1);
        }
        CHECK(m == fx.irreps[kChi5].generator_matrices[s]);
    }
}

TEST_CASE("traces on short words match the character table") {
    const auto& fx = fixture();
    const auto& g = fx.group;
    for (int l = 0; l < kNumIrreps; ++l) {
        const auto& gens = fx.irreps[static_cast<std::size_t>(l)].generator_matrices;
        std::vector<std::pair<Permutation, FieldMatrix>> layer{{Permutation::identity(5), FieldMatrix::identity(gens[0].rows())}};
        for (int len = 0; len <= 4; ++len) {
            std::vector<std::pair<Permutation, FieldMatrix>> next;
            for (const auto& [p, m] : layer) {
                CHECK(m.trace() == fx.characters[static_cast<std::size_t>(l)][static_cast<std::size_t>(g.class_of(p))]);
                for (std::size_t s = 0; s < gens.size(); ++s) next.emplace_back(p * g.generators[s], m * gens[s]);
            }
            layer = std::move(next);
        }
    }
}

TEST_CASE("fixture loader rejects corrupted data") {
    std::string text = fixture_text();
    CHECK_NOTHROW(parse_fixture(text));
    std::string broken = text;
    auto pos = broken.find("irrep chi4 dim 4\nmatrix a\n-1 -1 -1 -1");
    REQUIRE(pos != std::string::npos);
    broken.replace(pos, std::string("irrep chi4 dim 4\nmatrix a\n-1").size(), "irrep chi4 dim 4\nmatrix a\n-2");
    CHECK_THROWS_AS(parse_fixture(broken), FixtureError);
    std::string bad_size = text;
    bad_size.replace(bad_size.find("size 15"), 7, "size 14");
    CHECK_THROWS_AS(parse_fixture(bad_size), FixtureError);
    CHECK_THROWS_AS(parse_fixture("bgg-forge-fixture 2\nend\n"), FixtureError);
}
