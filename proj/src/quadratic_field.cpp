#include "bggforge/quadratic_field.hpp"

#include <functional>
#include <ostream>
#include <stdexcept>

namespace bggforge {

namespace {

struct Scratch {
    mpq_t t;
    Scratch() { mpq_init(t); }
    ~Scratch() { mpq_clear(t); }
    Scratch(const Scratch&) = delete;
    Scratch& operator=(const Scratch&) = delete;
};

mpq_ptr scratch() {
    thread_local Scratch s;
    return s.t;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational make_rational(long num, long den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("empty rational");
    if (text.front() == '+') text.remove_prefix(1);
    auto slash = text.find('/');
    mpz_class num, den = 1;
    std::string n(text.substr(0, slash));
    if (num.set_str(n, 10) != 0) throw std::invalid_argument("bad rational: " + std::string(text));
    if (slash != std::string_view::npos) {
        std::string d(text.substr(slash + 1));
        if (den.set_str(d, 10) != 0 || den == 0)
            throw std::invalid_argument("bad rational: " + std::string(text));
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

QuadraticFieldElement QuadraticFieldElement::golden() { return {make_rational(1, 2), make_rational(1, 2)}; }

QuadraticFieldElement QuadraticFieldElement::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in Q(sqrt5)");
    if (is_rational()) return {1 / a_, 0};
    Rational n = norm();
    return {a_ / n, -b_ / n};
}

QuadraticFieldElement& QuadraticFieldElement::operator*=(const QuadraticFieldElement& o) {
    if (sgn(b_) == 0 && sgn(o.b_) == 0) {
        a_ *= o.a_;
        return *this;
    }
    Rational na = a_ * o.a_ + 5 * b_ * o.b_;
    Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

void QuadraticFieldElement::add_mul(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
    mpq_ptr t = scratch();
    const bool xr = sgn(x.b_) == 0;
    const bool yr = sgn(y.b_) == 0;
    if (sgn(x.a_) != 0 && sgn(y.a_) != 0) {
        mpq_mul(t, x.a_.get_mpq_t(), y.a_.get_mpq_t());
        mpq_add(a_.get_mpq_t(), a_.get_mpq_t(), t);
    }
    if (xr && yr) return;
    if (!xr && !yr) {
        mpq_mul(t, x.b_.get_mpq_t(), y.b_.get_mpq_t());
        mpz_mul_ui(mpq_numref(t), mpq_numref(t), 5);
        mpq_canonicalize(t);
        mpq_add(a_.get_mpq_t(), a_.get_mpq_t(), t);
    }
    if (!yr && sgn(x.a_) != 0) {
        mpq_mul(t, x.a_.get_mpq_t(), y.b_.get_mpq_t());
        mpq_add(b_.get_mpq_t(), b_.get_mpq_t(), t);
    }
    if (!xr && sgn(y.a_) != 0) {
        mpq_mul(t, x.b_.get_mpq_t(), y.a_.get_mpq_t());
        mpq_add(b_.get_mpq_t(), b_.get_mpq_t(), t);
    }
}

void QuadraticFieldElement::sub_mul(const QuadraticFieldElement& x, const QuadraticFieldElement& y) {
    mpq_ptr t = scratch();
    const bool xr = sgn(x.b_) == 0;
    const bool yr = sgn(y.b_) == 0;
    if (sgn(x.a_) != 0 && sgn(y.a_) != 0) {
        mpq_mul(t, x.a_.get_mpq_t(), y.a_.get_mpq_t());
        mpq_sub(a_.get_mpq_t(), a_.get_mpq_t(), t);
    }
    if (xr && yr) return;
    if (!xr && !yr) {
        mpq_mul(t, x.b_.get_mpq_t(), y.b_.get_mpq_t());
        mpz_mul_ui(mpq_numref(t), mpq_numref(t), 5);
        mpq_canonicalize(t);
        mpq_sub(a_.get_mpq_t(), a_.get_mpq_t(), t);
    }
    if (!yr && sgn(x.a_) != 0) {
        mpq_mul(t, x.a_.get_mpq_t(), y.b_.get_mpq_t());
        mpq_sub(b_.get_mpq_t(), b_.get_mpq_t(), t);
    }
    if (!xr && sgn(y.a_) != 0) {
        mpq_mul(t, x.b_.get_mpq_t(), y.a_.get_mpq_t());
        mpq_sub(b_.get_mpq_t(), b_.get_mpq_t(), t);
    }
}

std::string QuadraticFieldElement::to_string() const {
    return rational_to_string(a_) + "+" + rational_to_string(b_) + "*r5";
}

QuadraticFieldElement QuadraticFieldElement::parse(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("empty scalar");
    // Split at the '+' or '-' that starts the sqrt(5) term, if any.
    const auto star = text.find("*r5");
    if (star == std::string_view::npos) {
        if (text == "r5") return sqrt5();
        return {parse_rational(text), 0};
    }
    if (star + 3 != text.size()) throw std::invalid_argument("bad scalar: " + std::string(text));
    std::size_t split = std::string_view::npos;
    for (std::size_t i = star; i-- > 1;) {
        if ((text[i] == '+' || text[i] == '-') && text[i - 1] != '/' && text[i - 1] != '+' && text[i - 1] != '-') {
            split = i;
            break;
        }
    }
    Rational a = 0;
    std::string_view coeff = text.substr(0, star);
    if (split != std::string_view::npos) {
        a = parse_rational(text.substr(0, split));
        coeff = text.substr(split, star - split);
        if (coeff.size() > 1 && coeff[0] == '+') coeff.remove_prefix(1);
    }
    return {std::move(a), parse_rational(coeff)};
}

std::size_t QuadraticFieldElement::hash() const {
    std::hash<std::string> h;
    return h(to_string());
}

Scalar galois_conjugate(const Scalar& x) { return x.conjugate(); }

std::ostream& operator<<(std::ostream& os, const QuadraticFieldElement& x) {
    if (x.is_rational()) return os << x.rational_part().get_str();
    return os << x.rational_part().get_str() << (sgn(x.sqrt5_part()) < 0 ? "" : "+") << x.sqrt5_part().get_str()
              << "*r5";
}

}  // namespace bggforge
