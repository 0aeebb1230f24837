#pragma once

#include "bggforge/field_matrix.hpp"
#include "bggforge/group_rep.hpp"

#include <random>

namespace testsupport {

using bggforge::FieldMatrix;
using bggforge::Rational;
using bggforge::Scalar;

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240917);
    return g;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline Rational small_rational() {
    Rational q(uniform(-6, 6), uniform(1, 4));
    q.canonicalize();
    return q;
}

/// About a third zeros, a third rational, a third irrational.
inline Scalar random_scalar() {
    switch (uniform(0, 2)) {
        case 0: return Scalar();
        case 1: return Scalar(small_rational());
        default: return Scalar(small_rational(), small_rational());
    }
}

inline Scalar random_nonzero_scalar() {
    for (;;) {
        Scalar x = random_scalar();
        if (!x.is_zero()) return x;
    }
}

inline FieldMatrix random_matrix(std::size_t r, std::size_t c) {
    FieldMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = random_scalar();
    return m;
}

/// Random r x c matrix of rank at most k (product of random r x k and k x c).
inline FieldMatrix random_low_rank(std::size_t r, std::size_t c, std::size_t k) {
    return random_matrix(r, k) * random_matrix(k, c);
}

/// Plain Gaussian elimination rank, written independently of the library's
/// elimination (column-major scan, no fused operations).
inline std::size_t oracle_rank(FieldMatrix m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t p = rank;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(rank, j));
        for (std::size_t i = rank + 1; i < m.rows(); ++i) {
            if (m(i, c).is_zero()) continue;
            Scalar f = m(i, c) / m(rank, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

inline const bggforge::Fixture& fixture() {
    static const bggforge::Fixture fx = bggforge::load_fixture(bggforge::default_fixture_path());
    return fx;
}

}  // namespace testsupport

#include "bggforge/isotypic.hpp"

namespace testsupport {

inline const bggforge::RepContext& context() {
    static const bggforge::RepContext ctx{&fixture(), bggforge::TensorStructure::build(fixture())};
    return ctx;
}

inline bggforge::IsotypicObject random_object(std::size_t max_dense) {
    for (;;) {
        bggforge::IsotypicObject x;
        for (int l = 0; l < bggforge::kNumIrreps; ++l) x[l] = static_cast<std::size_t>(uniform(0, 2));
        if (x.dense_dimension() <= max_dense) return x;
    }
}

/// Random blocks, each of random rank.
inline bggforge::IsotypicMorphism random_morphism(const bggforge::IsotypicObject& s, const bggforge::IsotypicObject& t) {
    bggforge::IsotypicMorphism f(s, t);
    for (int l = 0; l < bggforge::kNumIrreps; ++l) {
        const std::size_t r = t[l], c = s[l];
        const std::size_t k = static_cast<std::size_t>(uniform(0, static_cast<long>(std::min(r, c))));
        f[l] = random_low_rank(r, c, k);
    }
    return f;
}

}  // namespace testsupport
