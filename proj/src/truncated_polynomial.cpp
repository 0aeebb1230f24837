#include "bggforge/truncated_polynomial.hpp"

#include <ostream>

namespace bggforge {

TruncatedPolynomial::TruncatedPolynomial(std::vector<mpz_class> coeffs, int n) : c_(static_cast<std::size_t>(n) + 1) {
    for (std::size_t i = 0; i < coeffs.size() && i < c_.size(); ++i) c_[i] = coeffs[i];
}

TruncatedPolynomial TruncatedPolynomial::one(int n) {
    TruncatedPolynomial p(n);
    p.c_[0] = 1;
    return p;
}

TruncatedPolynomial TruncatedPolynomial::linear(long a, int n) {
    TruncatedPolynomial p = one(n);
    if (n >= 1) p.c_[1] = a;
    return p;
}

std::vector<long> TruncatedPolynomial::to_longs() const {
    std::vector<long> out;
    for (const auto& x : c_) {
        if (!x.fits_slong_p()) throw std::overflow_error("chern coefficient exceeds long");
        out.push_back(x.get_si());
    }
    return out;
}

TruncatedPolynomial operator*(const TruncatedPolynomial& p, const TruncatedPolynomial& q) {
    if (p.order() != q.order()) throw std::invalid_argument("truncation order mismatch");
    TruncatedPolynomial r(p.order());
    const std::size_t n = p.c_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (p.c_[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) r.c_[i + j] += p.c_[i] * q.c_[j];
    }
    return r;
}

TruncatedPolynomial TruncatedPolynomial::inverse() const {
    if (!is_unit()) throw NonUnit("constant coefficient is not a unit");
    // c0 = +-1, so c0^{-1} = c0.
    TruncatedPolynomial r(order());
    r.c_[0] = c_[0];
    for (std::size_t k = 1; k < c_.size(); ++k) {
        mpz_class s = 0;
        for (std::size_t j = 1; j <= k; ++j) s += c_[j] * r.c_[k - j];
        r.c_[k] = -s * c_[0];
    }
    return r;
}

TruncatedPolynomial truncated_power(const TruncatedPolynomial& p, long e) {
    if (!p.is_unit()) throw NonUnit("truncated_power of a non-unit");
    TruncatedPolynomial base = e < 0 ? p.inverse() : p;
    unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
    TruncatedPolynomial acc = TruncatedPolynomial::one(p.order());
    while (k) {
        if (k & 1UL) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

std::string TruncatedPolynomial::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        mpz_class a = abs(c_[i]);
        if (s.empty())
            s += c_[i] < 0 ? "-" : "";
        else
            s += c_[i] < 0 ? "-" : "+";
        if (i == 0 || a != 1) s += a.get_str();
        if (i >= 1) s += "h";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

std::ostream& operator<<(std::ostream& os, const TruncatedPolynomial& p) { return os << p.to_string(); }

}  // namespace bggforge
