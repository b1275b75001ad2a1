#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace padic_cf {

/**
 * Exact arithmetic foundation.
 *
 * Everything above this layer (digit expansions, Browkin and Schneider
 * continued fractions, bound certificates) is computed without floating
 * point. Integers are arbitrary precision; rationals are always kept in
 * lowest terms with a positive denominator.
 */

using BigInt = boost::multiprecision::cpp_int;

/// Raised when a computation that a theorem guarantees to finish does not.
class theorem_violation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Rational {
public:
    Rational() : value_(0) {}
    Rational(std::int64_t n) : value_(n) {}  // NOLINT(implicit)
    Rational(const BigInt& n) : value_(n) {}  // NOLINT(implicit)
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::domain_error("zero denominator");
        if (den < 0) value_ = boost::multiprecision::cpp_rational(BigInt(-num), BigInt(-den));
        else value_ = boost::multiprecision::cpp_rational(num, den);
    }

    BigInt num() const { return boost::multiprecision::numerator(value_); }
    BigInt den() const { return boost::multiprecision::denominator(value_); }

    bool is_zero() const { return value_ == 0; }
    int sign() const { return value_.sign(); }
    bool is_integer() const { return den() == 1; }

    Rational abs() const {
        Rational r;
        r.value_ = boost::multiprecision::abs(value_);
        return r;
    }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("inverse of zero");
        return Rational(den(), num());
    }

    double to_double() const { return value_.convert_to<double>(); }

    /// "num/den", or just "num" when the denominator is 1.
    std::string to_string() const {
        std::string s = num().str();
        if (!is_integer()) s += "/" + den().str();
        return s;
    }

    Rational operator-() const {
        Rational r;
        r.value_ = -value_;
        return r;
    }
    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = a.value_.compare(b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

private:
    boost::multiprecision::cpp_rational value_;
};

/// An odd prime. Construction validates primality by trial division.
class OddPrime {
public:
    OddPrime(std::int64_t p) : value_(p) {  // NOLINT(implicit)
        if (p < 3 || p % 2 == 0) throw std::domain_error("p must be an odd prime >= 3");
        for (std::int64_t d = 3; d <= p / d; d += 2)
            if (p % d == 0) throw std::domain_error("p must be an odd prime >= 3");
    }

    std::int64_t value() const { return value_; }
    BigInt big() const { return BigInt(value_); }
    operator std::int64_t() const { return value_; }  // NOLINT(implicit)

    friend bool operator==(OddPrime, OddPrime) = default;

private:
    std::int64_t value_;
};

inline BigInt ipow(const BigInt& base, std::int64_t e) {
    if (e < 0) throw std::domain_error("negative exponent");
    return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

inline BigInt pow_p(OddPrime p, std::int64_t e) { return ipow(p.big(), e); }

/// Signed power of p as a rational: p^e for any integer e.
inline Rational pow_p_rational(OddPrime p, std::int64_t e) {
    return e >= 0 ? Rational(pow_p(p, e)) : Rational(BigInt(1), pow_p(p, -e));
}

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

/// Floor-style remainder in [0, m) for m > 0.
inline BigInt mod_floor(const BigInt& x, const BigInt& m) {
    BigInt r = x % m;
    if (r < 0) r += m;
    return r;
}

/// Exponent of p in a nonzero integer.
inline std::int64_t vp(const BigInt& n, OddPrime p) {
    if (n == 0) throw std::domain_error("valuation of zero undefined");
    const BigInt pb = p.big();
    BigInt m = boost::multiprecision::abs(n);
    std::int64_t v = 0;
    BigInt q, r;
    for (;;) {
        boost::multiprecision::divide_qr(m, pb, q, r);
        if (r != 0) return v;
        m = q;
        ++v;
    }
}

/// Signed p-adic valuation: r = p^v * u/w with p dividing neither u nor w.
inline std::int64_t vp(const Rational& r, OddPrime p) {
    if (r.is_zero()) throw std::domain_error("valuation of zero undefined");
    const BigInt num = r.num();
    const BigInt den = r.den();
    // num and den are coprime, so at most one of them carries p.
    return vp(num, p) - vp(den, p);
}

/// Inverse of a modulo m, in [1, m-1] (extended Euclid).
inline BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    if (m < 2) throw std::domain_error("modulus must be >= 2");
    BigInt r0 = m, r1 = mod_floor(a, m);
    BigInt t0 = 0, t1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        r0 = std::exchange(r1, r0 - q * r1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (r0 != 1) throw std::domain_error("not invertible");
    return mod_floor(t0, m);
}

/// Representative of x mod m in [-(m-1)/2, (m-1)/2]; m must be odd.
inline BigInt symmetric_residue(const BigInt& x, const BigInt& m) {
    if (m < 3 || (m % 2) == 0) throw std::domain_error("symmetric residue needs an odd modulus >= 3");
    BigInt r = mod_floor(x, m);
    if (r > (m - 1) / 2) r -= m;
    return r;
}

}  // namespace padic_cf
