#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "exact_arith.hpp"

namespace padic_cf {

/// Splits D > 0 as f^2 * d with d squarefree (trial division).
inline std::pair<BigInt, BigInt> squarefree_split(const BigInt& radicand) {
    if (radicand <= 0) throw std::domain_error("radicand must be positive");
    BigInt rest = radicand, factor = 1, core = 1;
    for (BigInt q = 2; q * q <= rest; ++q) {
        while (rest % (q * q) == 0) {
            rest /= q * q;
            factor *= q;
        }
        if (rest % q == 0) {
            rest /= q;
            core *= q;
        }
    }
    core *= rest;
    return {factor, core};
}

/**
 * Exact element x + y*sqrt(D) of the real quadratic field Q(sqrt(D)).
 *
 * The radicand is stored squarefree, so equality is componentwise. When D is
 * a perfect square the field collapses to Q and y is folded into x (y == 0,
 * radicand == 1). Mixing elements of different fields is an error.
 */
class QuadraticElement {
public:
    QuadraticElement(Rational x, Rational y, const BigInt& radicand) {
        auto [factor, core] = squarefree_split(radicand);
        d_ = core;
        x_ = std::move(x);
        y_ = std::move(y) * Rational(factor);
        if (d_ == 1) {
            x_ += y_;
            y_ = Rational(0);
        }
    }

    static QuadraticElement rational(const Rational& x, const BigInt& radicand) {
        return QuadraticElement(x, Rational(0), radicand);
    }
    static QuadraticElement sqrt_of(const BigInt& radicand) {
        return QuadraticElement(Rational(0), Rational(1), radicand);
    }

    const Rational& x() const { return x_; }
    const Rational& y() const { return y_; }
    /// Squarefree radicand.
    const BigInt& d() const { return d_; }

    bool is_zero() const { return x_.is_zero() && y_.is_zero(); }

    QuadraticElement conjugate() const { return {x_, -y_, d_, raw_tag{}}; }

    /// Field norm x^2 - D*y^2.
    Rational norm() const { return x_ * x_ - Rational(d_) * y_ * y_; }

    /// Exact sign of x + y*sqrt(D) by comparing x^2 with y^2*D.
    int sign() const {
        const int sx = x_.sign();
        const int sy = y_.sign();
        if (sy == 0) return sx;
        if (sx == 0 || sx == sy) return sy;
        // Opposite signs: the larger magnitude wins.
        const auto cmp = x_ * x_ <=> Rational(d_) * y_ * y_;
        if (cmp == 0) return 0;
        return cmp > 0 ? sx : sy;
    }

    double to_double() const {
        return x_.to_double() + y_.to_double() * std::sqrt(d_.convert_to<double>());
    }

    std::string to_string() const {
        if (y_.is_zero()) return x_.to_string();
        std::string s = x_.is_zero() ? std::string() : x_.to_string() + (y_.sign() > 0 ? " + " : " - ");
        if (x_.is_zero() && y_.sign() < 0) s += "-";
        const Rational c = y_.abs();
        if (c == Rational(1)) return s + "sqrt(" + d_.str() + ")";
        if (c.is_integer()) return s + c.to_string() + "*sqrt(" + d_.str() + ")";
        return s + "(" + c.to_string() + ")*sqrt(" + d_.str() + ")";
    }

    QuadraticElement operator-() const { return {-x_, -y_, d_, raw_tag{}}; }

    QuadraticElement& operator+=(const QuadraticElement& o) {
        check_field(o);
        x_ += o.x_;
        y_ += o.y_;
        return *this;
    }
    QuadraticElement& operator-=(const QuadraticElement& o) {
        check_field(o);
        x_ -= o.x_;
        y_ -= o.y_;
        return *this;
    }
    QuadraticElement& operator*=(const QuadraticElement& o) {
        check_field(o);
        Rational nx = x_ * o.x_ + Rational(d_) * y_ * o.y_;
        Rational ny = x_ * o.y_ + y_ * o.x_;
        x_ = std::move(nx);
        y_ = std::move(ny);
        return *this;
    }
    QuadraticElement& operator/=(const QuadraticElement& o) {
        check_field(o);
        const Rational n = o.norm();
        if (n.is_zero()) throw std::domain_error("division by zero in quadratic field");
        *this *= o.conjugate();
        x_ /= n;
        y_ /= n;
        return *this;
    }

    friend QuadraticElement operator+(QuadraticElement a, const QuadraticElement& b) { return a += b; }
    friend QuadraticElement operator-(QuadraticElement a, const QuadraticElement& b) { return a -= b; }
    friend QuadraticElement operator*(QuadraticElement a, const QuadraticElement& b) { return a *= b; }
    friend QuadraticElement operator/(QuadraticElement a, const QuadraticElement& b) { return a /= b; }

    friend QuadraticElement operator+(QuadraticElement a, const Rational& b) { a.x_ += b; return a; }
    friend QuadraticElement operator-(QuadraticElement a, const Rational& b) { a.x_ -= b; return a; }
    friend QuadraticElement operator*(QuadraticElement a, const Rational& b) {
        a.x_ *= b;
        a.y_ *= b;
        return a;
    }
    friend QuadraticElement operator*(const Rational& b, QuadraticElement a) { return std::move(a) * b; }
    friend QuadraticElement operator+(const Rational& b, QuadraticElement a) { return std::move(a) + b; }
    friend QuadraticElement operator-(const Rational& b, const QuadraticElement& a) { return -a + b; }

    friend bool operator==(const QuadraticElement& a, const QuadraticElement& b) {
        return a.d_ == b.d_ && a.x_ == b.x_ && a.y_ == b.y_;
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadraticElement& e) {
        return os << e.to_string();
    }

private:
    struct raw_tag {};
    QuadraticElement(Rational x, Rational y, BigInt d, raw_tag)
        : x_(std::move(x)), y_(std::move(y)), d_(std::move(d)) {}

    void check_field(const QuadraticElement& o) const {
        if (d_ != o.d_) throw std::domain_error("mixed quadratic fields: sqrt(" + d_.str() + ") vs sqrt(" + o.d_.str() + ")");
    }

    Rational x_;
    Rational y_;
    BigInt d_;
};

inline int qf_sign(const QuadraticElement& e) { return e.sign(); }

/// e^n by repeated squaring; e^0 is the unit of the field.
inline QuadraticElement qf_pow(const QuadraticElement& e, std::uint64_t n) {
    QuadraticElement result = QuadraticElement::rational(Rational(1), e.d());
    QuadraticElement base = e;
    while (n != 0) {
        if (n & 1U) result *= base;
        n >>= 1U;
        if (n != 0) base *= base;
    }
    return result;
}

}  // namespace padic_cf
