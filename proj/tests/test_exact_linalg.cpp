#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bggforge/linalg.hpp"
#include "bggforge/truncated_polynomial.hpp"
#include "support.hpp"

using namespace bggforge;
using testsupport::random_matrix;
using testsupport::random_nonzero_scalar;
using testsupport::random_scalar;

TEST_CASE("rational canonical form") {
    CHECK(rational_to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(rational_to_string(parse_rational("0/7")) == "0/1");
    CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("golden ratio and its conjugate") {
    Scalar phi = Scalar::golden();
    CHECK(galois_conjugate(phi) == Scalar(make_rational(1, 2), make_rational(-1, 2)));
    CHECK(galois_conjugate(Scalar()) == Scalar());
    // phi^2 = phi + 1
    CHECK(phi * phi == phi + Scalar(1));
    CHECK(Scalar::sqrt5() * Scalar::sqrt5() == Scalar(5));
}

TEST_CASE("galois conjugation is an involutive ring homomorphism") {
    for (int i = 0; i < 20; ++i) {
        Scalar x = random_scalar(), y = random_scalar();
        CHECK(galois_conjugate(galois_conjugate(x)) == x);
        CHECK(galois_conjugate(x * y) == galois_conjugate(x) * galois_conjugate(y));
        CHECK(galois_conjugate(x + y) == galois_conjugate(x) + galois_conjugate(y));
    }
}

TEST_CASE("field axioms on random triples") {
    for (int i = 0; i < 200; ++i) {
        Scalar x = random_scalar(), y = random_scalar(), z = random_scalar();
        CHECK((x * y) * z == x * (y * z));
        CHECK((x + y) + z == x + (y + z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK(x * y == y * x);
        Scalar acc = z;
        acc.add_mul(x, y);
        CHECK(acc == z + x * y);
        acc.sub_mul(x, y);
        CHECK(acc == z);
        if (!x.is_zero()) CHECK(x * x.inverse() == Scalar(1));
    }
    CHECK_THROWS_AS(Scalar().inverse(), std::domain_error);
}

TEST_CASE("scalar serialization round trip") {
    CHECK(Scalar::golden().to_string() == "1/2+1/2*r5");
    CHECK(Scalar(3).to_string() == "3/1+0/1*r5");
    CHECK(Scalar::parse("1/2+-1/2*r5") == galois_conjugate(Scalar::golden()));
    CHECK(Scalar::parse("-1/2-1/2*r5") == -Scalar::golden());
    CHECK(Scalar::parse("-3") == Scalar(-3));
    CHECK(Scalar::parse("2/5*r5") == Scalar(0, make_rational(2, 5)));
    for (int i = 0; i < 100; ++i) {
        Scalar x = random_scalar();
        CHECK(Scalar::parse(x.to_string()) == x);
    }
}

TEST_CASE("kernel_basis fixed examples") {
    CHECK(kernel_basis(FieldMatrix::identity(3)).cols() == 0);
    CHECK(kernel_basis(FieldMatrix::identity(3)).rows() == 3);
    CHECK(kernel_basis(FieldMatrix::zero(2, 3)) == FieldMatrix::identity(3));
}

TEST_CASE("kernel of random matrices agrees with an independent rank") {
    for (int t = 0; t < 30; ++t) {
        const std::size_t r = static_cast<std::size_t>(testsupport::uniform(0, 5));
        FieldMatrix m = testsupport::random_low_rank(5, 8, r);
        FieldMatrix k = kernel_basis(m);
        const std::size_t rk = testsupport::oracle_rank(m);
        CHECK(k.cols() == 8 - rk);
        CHECK((m * k).is_zero());
        CHECK(testsupport::oracle_rank(k) == k.cols());
        CHECK(rank(m) + k.cols() == m.cols());
    }
}

TEST_CASE("kernel basis carries the identity pattern on free columns") {
    FieldMatrix m = {{1, 2, 0, 3}, {0, 0, 1, 4}};
    FieldMatrix k = kernel_basis(m);
    REQUIRE(k.cols() == 2);
    CHECK(k(1, 0) == Scalar(1));
    CHECK(k(3, 0) == Scalar(0));
    CHECK(k(1, 1) == Scalar(0));
    CHECK(k(3, 1) == Scalar(1));
    CHECK(k(0, 0) == Scalar(-2));
}

TEST_CASE("solve") {
    FieldMatrix rhs = random_matrix(4, 3);
    auto x = solve(FieldMatrix::identity(4), rhs);
    REQUIRE(x);
    CHECK(*x == rhs);
    FieldMatrix nz(2, 1);
    nz(0, 0) = Scalar(1);
    CHECK_FALSE(solve(FieldMatrix::zero(2, 2), nz).has_value());
    for (int t = 0; t < 30; ++t) {
        FieldMatrix m = testsupport::random_low_rank(6, 5, static_cast<std::size_t>(testsupport::uniform(0, 5)));
        FieldMatrix x0 = random_matrix(5, 2);
        auto sol = solve(m, m * x0);
        REQUIRE(sol);
        CHECK(m * *sol == m * x0);
    }
}

TEST_CASE("inverse and right inverse") {
    for (int t = 0; t < 20; ++t) {
        FieldMatrix m = random_matrix(4, 4);
        if (testsupport::oracle_rank(m) < 4) {
            CHECK_THROWS_AS(inverse(m), SingularMatrix);
            continue;
        }
        CHECK(m * inverse(m) == FieldMatrix::identity(4));
        CHECK(inverse(m) * m == FieldMatrix::identity(4));
    }
    FieldMatrix w = testsupport::random_low_rank(3, 7, 3);
    if (testsupport::oracle_rank(w) == 3) CHECK(w * right_inverse(w) == FieldMatrix::identity(3));
}

TEST_CASE("kron and stacking shapes") {
    FieldMatrix a = random_matrix(2, 3), b = random_matrix(3, 2);
    FieldMatrix c = random_matrix(3, 2), d = random_matrix(2, 4);
    // mixed product property
    CHECK(kron(a, c) * kron(b, d) == kron(a * b, c * d));
    CHECK(hstack(a, a).cols() == 6);
    CHECK(vstack(a, a).rows() == 4);
    CHECK(direct_sum(a, b).block(2, 3, 3, 2) == b);
}

TEST_CASE("truncated polynomials") {
    auto one_plus_h = TruncatedPolynomial::linear(1);
    CHECK(truncated_power(one_plus_h, -1) == TruncatedPolynomial({1, -1, 1, -1, 1}));
    auto p = TruncatedPolynomial({-1, 3, 0, 2, 7});
    CHECK(truncated_power(p, 0) == TruncatedPolynomial::one());
    auto q = TruncatedPolynomial::linear(2);
    // (1+2h)^4 multiplied out by hand: 1 + 8h + 24h^2 + 32h^3 + 16h^4
    CHECK(truncated_power(q, 4) == TruncatedPolynomial({1, 8, 24, 32, 16}));
    CHECK(truncated_power(q, -4) * truncated_power(q, 4) == TruncatedPolynomial::one());
    CHECK_THROWS_AS(truncated_power(TruncatedPolynomial({2, 1}), 3), NonUnit);
    CHECK(TruncatedPolynomial({1, -1, 3, 5, 10}).to_string() == "1-h+3h^2+5h^3+10h^4");
}

TEST_CASE("truncated multiplication is a commutative ring with unit inversion") {
    for (int t = 0; t < 50; ++t) {
        auto rnd = [] {
            std::vector<mpz_class> c{testsupport::uniform(0, 1) ? 1 : -1};
            for (int i = 0; i < 4; ++i) c.emplace_back(testsupport::uniform(-9, 9));
            return TruncatedPolynomial(c);
        };
        auto a = rnd(), b = rnd(), c = rnd();
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * a.inverse() == TruncatedPolynomial::one());
        long e = testsupport::uniform(-6, 6);
        CHECK(truncated_power(a, e) * truncated_power(a, -e) == TruncatedPolynomial::one());
    }
}
