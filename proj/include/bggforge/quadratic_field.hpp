#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

namespace bggforge {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator (GMP canonical form).
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
/// "a/b" with b > 0, e.g. "0/1", "-3/2".
std::string rational_to_string(const Rational& q);
/// Accepts "a", "a/b", "-a/b".
Rational parse_rational(std::string_view text);

/// An element a + b*sqrt(5) of Q(sqrt 5).
class QuadraticFieldElement {
public:
    QuadraticFieldElement() = default;
    QuadraticFieldElement(long a) : a_(a) {}  // NOLINT(google-explicit-constructor)
    QuadraticFieldElement(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}

    static QuadraticFieldElement sqrt5() { return {0, 1}; }
    /// (1 + sqrt 5) / 2
    static QuadraticFieldElement golden();

    const Rational& rational_part() const { return a_; }
    const Rational& sqrt5_part() const { return b_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_one() const { return sgn(b_) == 0 && a_ == 1; }
    bool is_rational() const { return sgn(b_) == 0; }

    /// a - b*sqrt(5); the non-trivial Galois automorphism.
    QuadraticFieldElement conjugate() const { return {a_, -b_}; }
    /// a^2 - 5 b^2
    Rational norm() const { return a_ * a_ - 5 * b_ * b_; }
    /// Throws std::domain_error on zero.
    QuadraticFieldElement inverse() const;

    QuadraticFieldElement& operator+=(const QuadraticFieldElement& o) {
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    QuadraticFieldElement& operator-=(const QuadraticFieldElement& o) {
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    QuadraticFieldElement& operator*=(const QuadraticFieldElement& o);
    QuadraticFieldElement& operator/=(const QuadraticFieldElement& o) { return *this *= o.inverse(); }

    /// this += x * y without temporaries on the hot path of elimination.
    void add_mul(const QuadraticFieldElement& x, const QuadraticFieldElement& y);
    /// this -= x * y
    void sub_mul(const QuadraticFieldElement& x, const QuadraticFieldElement& y);

    friend QuadraticFieldElement operator+(QuadraticFieldElement x, const QuadraticFieldElement& y) { return x += y; }
    friend QuadraticFieldElement operator-(QuadraticFieldElement x, const QuadraticFieldElement& y) { return x -= y; }
    friend QuadraticFieldElement operator*(QuadraticFieldElement x, const QuadraticFieldElement& y) { return x *= y; }
    friend QuadraticFieldElement operator/(QuadraticFieldElement x, const QuadraticFieldElement& y) { return x /= y; }
    QuadraticFieldElement operator-() const { return {-a_, -b_}; }

    friend bool operator==(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }

    /// Canonical "a/b+c/d*r5" form.
    std::string to_string() const;
    /// Parses the canonical form and the short forms "a/b", "a/b*r5", "a/b+c/d*r5" with optional signs.
    static QuadraticFieldElement parse(std::string_view text);

    /// Stable hash over the canonical components.
    std::size_t hash() const;

private:
    Rational a_;
    Rational b_;
};

using Scalar = QuadraticFieldElement;

Scalar galois_conjugate(const Scalar& x);

std::ostream& operator<<(std::ostream& os, const QuadraticFieldElement& x);

}  // namespace bggforge
