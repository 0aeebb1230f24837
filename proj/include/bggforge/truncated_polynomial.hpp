#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace bggforge {

struct NonUnit : std::domain_error {
    using std::domain_error::domain_error;
};

/// Element of Z[h]/(h^{n+1}).
class TruncatedPolynomial {
public:
    explicit TruncatedPolynomial(int n = 4) : c_(static_cast<std::size_t>(n) + 1) {}
    TruncatedPolynomial(std::vector<mpz_class> coeffs, int n = 4);

    static TruncatedPolynomial one(int n = 4);
    /// 1 + a*h
    static TruncatedPolynomial linear(long a, int n = 4);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const mpz_class& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<mpz_class>& coefficients() const { return c_; }
    std::vector<long> to_longs() const;

    bool is_unit() const { return c_[0] == 1 || c_[0] == -1; }
    /// Throws NonUnit.
    TruncatedPolynomial inverse() const;

    friend TruncatedPolynomial operator*(const TruncatedPolynomial& p, const TruncatedPolynomial& q);
    friend bool operator==(const TruncatedPolynomial& p, const TruncatedPolynomial& q) { return p.c_ == q.c_; }

    /// e.g. "1-h+3h^2+5h^3+10h^4"
    std::string to_string() const;

private:
    std::vector<mpz_class> c_;
};

/// p^e, negative e through the truncated inverse. Throws NonUnit.
TruncatedPolynomial truncated_power(const TruncatedPolynomial& p, long e);

std::ostream& operator<<(std::ostream& os, const TruncatedPolynomial& p);

}  // namespace bggforge
