#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exact_arith.hpp"
#include "quadratic.hpp"

namespace padic_cf {

/**
 * Schneider continued fractions of rationals.
 *
 *   a/b = b_0 + p^alpha_0 / (b_1 + p^alpha_1 / (b_2 + ...))
 *
 * with digits b_m in {1, ..., p-1} and exponents alpha_m >= 1, produced by
 * the integer recursion y_{-1} = a, y_0 = b,
 *
 *   b_m = y_{m-1} / y_m mod p,   y_{m+1} = (y_{m-1} - b_m y_m) / p^alpha_m.
 *
 * Every rational ends in the stationary tail (p-1, 1) repeated forever. Once
 * (y_{m-1}, y_m) = (t, -t) with |t| = 1 the state is absorbing: the digit is
 * p-1, the exponent 1, and the next pair is (-t, t).
 */

/// One partial quotient (b, alpha) of a Schneider fraction.
struct SchneiderDigit {
    std::int64_t b = 0;
    std::int64_t alpha = 0;
    friend bool operator==(const SchneiderDigit&, const SchneiderDigit&) = default;
};

struct SchneiderStep {
    std::int64_t b = 0;
    std::int64_t alpha = 0;
    BigInt y_next;  ///< y_{m+1}

    SchneiderDigit digit() const { return {b, alpha}; }
};

struct SchneiderExpansion {
    OddPrime p;
    BigInt a;
    BigInt b;
    /// Non-stationary steps; for a stationary expansion these are exactly the
    /// head quotients before the (p-1, 1) tail.
    std::vector<SchneiderStep> steps;
    std::optional<std::size_t> stationary_from;
    bool finite_end = false;

    /// y_m for m >= -1.
    BigInt y(std::ptrdiff_t m) const {
        if (m == -1) return a;
        if (m == 0) return b;
        return steps.at(static_cast<std::size_t>(m - 1)).y_next;
    }

    std::vector<SchneiderDigit> head() const {
        std::vector<SchneiderDigit> out;
        out.reserve(steps.size());
        for (const auto& s : steps) out.push_back(s.digit());
        return out;
    }

    /// y_n / y_{n+1} for the last recorded pair: -1 on the stationary tail,
    /// the terminal digit for a finite expansion.
    Rational tail_value() const {
        const auto n = static_cast<std::ptrdiff_t>(steps.size());
        return Rational(y(n - 1), y(n));
    }
};

struct SchneiderMatrix {
    BigInt U, V, W, Z;
    BigInt det() const { return U * Z - V * W; }
};

struct SchneiderConvergent {
    SchneiderMatrix M;
    Rational value;  ///< U_m / W_m
};

struct HeadReport {
    std::int64_t lambda = 0;
    std::int64_t alpha = 0;
    QuadraticElement T1;  ///< (lambda - sqrt(D)) / 2, D = 4 p^alpha + lambda^2
    QuadraticElement T2;  ///< (lambda + sqrt(D)) / 2
    QuadraticElement theta;
    double T1_float = 0;
    double T2_float = 0;
    double theta_float = 0;
    double exponent_float = 0;                  ///< ln|theta| / ln|T2/T1|
    std::optional<std::int64_t> exact_exponent;  ///< e with (T2/T1)^e == theta
    std::int64_t head_len = 0;
    bool exact_identity = false;
};

namespace detail {

inline void check_schneider_input(const BigInt& a, const BigInt& b, OddPrime p) {
    if (a == 0) throw std::domain_error("numerator must be nonzero");
    if (b <= 0) throw std::domain_error("denominator must be positive");
    if (gcd(a, b) != 1) throw std::domain_error("numerator and denominator must be coprime");
    if (a % p.big() == 0) throw std::domain_error("p must not divide the numerator");
    if (b % p.big() == 0) throw std::domain_error("p must not divide the denominator");
}

inline void check_head_digit(std::int64_t lambda, std::int64_t alpha, OddPrime p) {
    if (lambda < 1 || lambda >= p.value()) throw std::domain_error("lambda must lie in {1, ..., p-1}");
    if (alpha < 1) throw std::domain_error("alpha must be >= 1");
    if (lambda == p.value() - 1 && alpha == 1) throw std::domain_error("(lambda, alpha) must differ from (p-1, 1)");
}

inline bool is_stationary_pair(const BigInt& prev, const BigInt& cur) {
    return (cur == 1 || cur == -1) && prev == -cur;
}

}  // namespace detail

inline SchneiderExpansion schneider_expand(const BigInt& a, const BigInt& b, OddPrime p, std::size_t max_steps = 10'000) {
    detail::check_schneider_input(a, b, p);
    SchneiderExpansion out{p, a, b, {}, std::nullopt, false};
    const BigInt pb = p.big();
    BigInt prev = a, cur = b;
    for (std::size_t m = 0;; ++m) {
        if (detail::is_stationary_pair(prev, cur)) {
            out.stationary_from = m;
            return out;
        }
        if (m >= max_steps)
            throw theorem_violation("stationarity not reached for " + a.str() + "/" + b.str() + " within " +
                                    std::to_string(max_steps) + " steps");
        const BigInt digit = mod_floor(prev * mod_inverse(cur, pb), pb);
        BigInt diff = prev - digit * cur;
        if (diff == 0) {
            out.finite_end = true;
            return out;
        }
        const std::int64_t alpha = vp(diff, p);
        BigInt next = diff / pow_p(p, alpha);
        out.steps.push_back({digit.convert_to<std::int64_t>(), alpha, next});
        prev = std::move(cur);
        cur = std::move(next);
    }
}

/// Continues an expansion's y-recursion for `extra` further steps from its
/// last recorded pair. On a stationary expansion every produced step is (p-1, 1).
inline std::vector<SchneiderStep> schneider_continue(const SchneiderExpansion& e, std::size_t extra) {
    const auto n = static_cast<std::ptrdiff_t>(e.steps.size());
    BigInt prev = e.y(n - 1), cur = e.y(n);
    const BigInt pb = e.p.big();
    std::vector<SchneiderStep> out;
    for (std::size_t i = 0; i < extra && cur != 0; ++i) {
        const BigInt digit = mod_floor(prev * mod_inverse(cur, pb), pb);
        BigInt diff = prev - digit * cur;
        if (diff == 0) break;
        const std::int64_t alpha = vp(diff, e.p);
        BigInt next = diff / pow_p(e.p, alpha);
        out.push_back({digit.convert_to<std::int64_t>(), alpha, next});
        prev = std::move(cur);
        cur = std::move(next);
    }
    return out;
}

/// Back-substitution b_0 + p^alpha_0 / (b_1 + ... + p^alpha_k / tail).
inline Rational schneider_evaluate(std::span<const SchneiderDigit> head, const Rational& tail_value, OddPrime p) {
    Rational value = tail_value;
    for (auto it = head.rbegin(); it != head.rend(); ++it) {
        if (value.is_zero()) throw std::domain_error("zero denominator in Schneider back-substitution");
        value = Rational(it->b) + Rational(pow_p(p, it->alpha)) / value;
    }
    return value;
}

/// M_m = M_{m-1} * [[b_m, p^alpha_m], [1, 0]] with M_{-1} = I.
inline std::vector<SchneiderConvergent> schneider_convergents(std::span<const SchneiderDigit> digits, OddPrime p) {
    std::vector<SchneiderConvergent> out;
    out.reserve(digits.size());
    SchneiderMatrix m{1, 0, 0, 1};
    for (const auto& d : digits) {
        const BigInt pa = pow_p(p, d.alpha);
        m = SchneiderMatrix{d.b * m.U + m.V, pa * m.U, d.b * m.W + m.Z, pa * m.W};
        out.push_back({m, Rational(m.U, m.W)});
    }
    return out;
}

inline std::vector<SchneiderConvergent> schneider_convergents(const SchneiderExpansion& e) {
    const auto h = e.head();
    return schneider_convergents(std::span<const SchneiderDigit>(h), e.p);
}

/**
 * Builds the rational whose Schneider expansion is (lambda, alpha) repeated
 * k + 1 times followed by the stationary tail: M^(k+1) (1, -1)^T with
 * M = [[lambda, p^alpha], [1, 0]], signs flipped so that b > 0.
 */
inline std::pair<BigInt, BigInt> generate_constant_head(std::int64_t lambda, std::int64_t alpha, std::int64_t k, OddPrime p) {
    detail::check_head_digit(lambda, alpha, p);
    if (k < 0) throw std::domain_error("k must be nonnegative");
    const BigInt pa = pow_p(p, alpha);
    SchneiderMatrix m{1, 0, 0, 1};
    for (std::int64_t i = 0; i <= k; ++i)
        m = SchneiderMatrix{lambda * m.U + m.V, pa * m.U, lambda * m.W + m.Z, pa * m.W};
    BigInt a = m.U - m.V;
    BigInt b = m.W - m.Z;
    if (b < 0) {
        a = -a;
        b = -b;
    }
    return {a, b};
}

/**
 * Length of a constant (lambda, alpha) head of a/b.
 *
 * With T1 < 0 < T2 the roots of T^2 - lambda T - p^alpha, a head of h equal
 * quotients forces (T2/T1)^(h-1) = theta where
 *
 *   theta = (T1 - p^alpha)(a - b T1) / ((T2 - p^alpha)(a - b T2)).
 *
 * The exponent is estimated in floating point and then certified exactly in
 * Q(sqrt(4 p^alpha + lambda^2)) by trying its neighbours.
 */
inline HeadReport head_analysis(const BigInt& a, const BigInt& b, std::int64_t lambda, std::int64_t alpha, OddPrime p) {
    detail::check_head_digit(lambda, alpha, p);
    if (b <= 0) throw std::domain_error("denominator must be positive");
    const BigInt pa = pow_p(p, alpha);
    const BigInt radicand = 4 * pa + BigInt(lambda) * lambda;
    const Rational half(BigInt(1), BigInt(2));
    const QuadraticElement t1(Rational(lambda) * half, -half, radicand);
    const QuadraticElement t2(Rational(lambda) * half, half, radicand);

    const auto factor = [&](const QuadraticElement& t) { return (t - Rational(pa)) * (Rational(a) - Rational(b) * t); };
    const QuadraticElement num = factor(t1);
    const QuadraticElement den = factor(t2);
    if (num.is_zero() || den.is_zero())
        throw std::domain_error("theta undefined: b*T equals a or T equals p^alpha");
    const QuadraticElement theta = num / den;
    if ((theta * theta - Rational(1)).sign() < 0) throw std::domain_error("|theta| < 1: no constant head of this shape");

    HeadReport report{lambda, alpha, t1, t2, theta, 0, 0, 0, 0, std::nullopt, 0, false};
    report.T1_float = t1.to_double();
    report.T2_float = t2.to_double();
    report.theta_float = theta.to_double();

    const QuadraticElement ratio = t2 / t1;
    report.exponent_float = std::log(std::abs(report.theta_float)) / std::log(std::abs(ratio.to_double()));
    const auto guess = static_cast<std::int64_t>(std::llround(report.exponent_float));
    for (std::int64_t e = guess - 1; e <= guess + 1; ++e) {
        if (e < 0) continue;
        if (qf_pow(ratio, static_cast<std::uint64_t>(e)) == theta) {
            report.exact_exponent = e;
            report.exact_identity = true;
            report.head_len = e + 1;
            return report;
        }
    }
    report.head_len = static_cast<std::int64_t>(std::floor(report.exponent_float)) + 1;
    return report;
}

}  // namespace padic_cf
