#include "bggforge/selfcheck.hpp"

#include "bggforge/linalg.hpp"

#include <random>

namespace bggforge {

std::vector<CheckResult> fixture_checks(const Fixture& fx) {
    std::vector<CheckResult> out;
    {
        CheckResult c{"row orthogonality", true, ""};
        for (int i = 0; i < kNumIrreps; ++i)
            for (int j = 0; j < kNumIrreps; ++j) {
                Rational ip = inner_product(fx.group, fx.characters[static_cast<std::size_t>(i)], fx.characters[static_cast<std::size_t>(j)]);
                if (ip != Rational(i == j ? 1 : 0)) {
                    c.ok = false;
                    c.detail = std::string("<") + irrep_label(i) + "," + irrep_label(j) + "> = " + ip.get_str();
                }
            }
        out.push_back(c);
    }
    {
        long s = 0;
        for (const auto& m : fx.irreps) s += static_cast<long>(m.dimension) * m.dimension;
        out.push_back({"sum of squared dimensions = |G|", s == fx.group.order() && s == 60, std::to_string(s)});
    }
    for (int l = 0; l < kNumIrreps; ++l) {
        auto err = verify_irrep(fx.group, fx.irreps[static_cast<std::size_t>(l)], fx.characters[static_cast<std::size_t>(l)]);
        out.push_back({std::string("relations and traces of ") + irrep_label(l), !err, err.value_or("")});
    }
    return out;
}

std::vector<CheckResult> tensor_checks(const Fixture& fx, const TensorStructure& ts) {
    std::vector<CheckResult> out;
    auto err = ts.validate(fx);
    out.push_back({"tensor structure equivariance and invertibility", !err, err.value_or("")});
    const std::string a = ts.serialize();
    auto back = TensorStructure::deserialize(a, fx);
    const bool stable = back && back->serialize() == a;
    out.push_back({"tensor cache round trip is byte-stable", stable, back ? "" : "cache text rejected"});
    return out;
}

namespace {

struct Gen {
    std::mt19937_64 rng;
    long uni(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
    Scalar scalar() {
        switch (uni(0, 2)) {
            case 0: return Scalar();
            case 1: return Scalar(Rational(uni(-5, 5), uni(1, 3)));
            default: return Scalar(Rational(uni(-5, 5), uni(1, 3)), Rational(uni(-5, 5), uni(1, 3)));
        }
    }
    FieldMatrix matrix(std::size_t r, std::size_t c) {
        FieldMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = scalar();
        return m;
    }
    IsotypicObject object(std::size_t max_dense) {
        for (;;) {
            IsotypicObject x;
            for (int l = 0; l < kNumIrreps; ++l) x[l] = static_cast<std::size_t>(uni(0, 3));
            if (x.dense_dimension() <= max_dense) return x;
        }
    }
    IsotypicMorphism morphism(const IsotypicObject& s, const IsotypicObject& t) {
        IsotypicMorphism f(s, t);
        for (int l = 0; l < kNumIrreps; ++l) {
            const auto k = static_cast<std::size_t>(uni(0, static_cast<long>(std::min(s[l], t[l]))));
            f[l] = matrix(t[l], k) * matrix(k, s[l]);
        }
        return f;
    }
};

bool same_span(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols() == 0 || b.cols() == 0) return rank(a) == rank(b);
    const std::size_t ra = rank(a);
    return ra == rank(b) && rank(hstack(a, b)) == ra;
}

}  // namespace

OracleSummary dense_oracle_suite(int trials, std::uint64_t seed, std::size_t max_dense) {
    Gen g{std::mt19937_64(seed)};
    OracleSummary s;
    auto fail = [&](const std::string& what) {
        ++s.failures;
        if (s.first_failure.empty()) s.first_failure = "trial " + std::to_string(s.trials) + ": " + what;
    };
    for (int t = 0; t < trials; ++t, ++s.trials) {
        IsotypicObject a = g.object(max_dense), b = g.object(max_dense), c = g.object(max_dense);
        IsotypicMorphism f = g.morphism(a, b), h = g.morphism(b, c);
        const FieldMatrix fd = isotypic_to_dense(f);
        const std::size_t rf = rank(fd);

        KernelResult k = kernel(f);
        const FieldMatrix kd = isotypic_to_dense(k.inclusion);
        if (k.object.dense_dimension() != a.dense_dimension() - rf) fail("kernel dimension");
        else if (!(fd * kd).is_zero() || !same_span(kd, kernel_basis(fd))) fail("kernel span");

        CokernelResult q = cokernel(f);
        const FieldMatrix pd = isotypic_to_dense(q.projection);
        if (q.object.dense_dimension() != b.dense_dimension() - rf) fail("cokernel dimension");
        else if (!(pd * fd).is_zero() || rank(pd) != q.object.dense_dimension()) fail("cokernel projection");
        else if (!(pd * isotypic_to_dense(q.section)).is_identity()) fail("cokernel section");

        if (isotypic_to_dense(compose(h, f)) != isotypic_to_dense(h) * fd) fail("composition");
    }
    return s;
}

std::vector<CheckResult> selfcheck(const Fixture& fx, const TensorStructure& ts, int oracle_trials) {
    auto out = fixture_checks(fx);
    for (auto& c : tensor_checks(fx, ts)) out.push_back(std::move(c));
    OracleSummary o = dense_oracle_suite(oracle_trials, 0x5eed5eedULL);
    out.push_back({"dense vs isotypic oracle suite (" + std::to_string(o.trials) + " morphisms)", o.failures == 0, o.first_failure});
    return out;
}

}  // namespace bggforge
