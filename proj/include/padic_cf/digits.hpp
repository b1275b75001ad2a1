#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact_arith.hpp"

namespace padic_cf {

/// Truncated symmetric-digit p-adic expansion
/// sum_i digits[i] * p^(start_exponent + i), digits in [-(p-1)/2, (p-1)/2].
struct PAdicDigits {
    OddPrime p;
    std::int64_t start_exponent = 0;
    std::vector<std::int64_t> digits;
    std::size_t count = 0;

    /// Exact value of the truncated sum.
    Rational value() const {
        Rational sum;
        for (std::size_t i = 0; i < digits.size(); ++i)
            sum += Rational(digits[i]) * pow_p_rational(p, start_exponent + static_cast<std::int64_t>(i));
        return sum;
    }

    /// Exponent up to which the expansion is known: p^(start_exponent + count).
    std::int64_t precision() const { return start_exponent + static_cast<std::int64_t>(count); }
};

namespace detail {

/// Symmetric digit of a p-adic unit-or-integer u (vp(u) >= 0).
inline std::int64_t leading_digit(const Rational& u, OddPrime p) {
    const BigInt pb = p.big();
    BigInt d = symmetric_residue(u.num() * mod_inverse(u.den(), pb), pb);
    return d.convert_to<std::int64_t>();
}

}  // namespace detail

inline PAdicDigits padic_digits(const Rational& r, OddPrime p, std::size_t count) {
    if (count == 0) throw std::domain_error("digit count must be positive");
    PAdicDigits out{p, 0, {}, count};
    if (r.is_zero()) return out;
    out.start_exponent = vp(r, p);
    Rational rest = r * pow_p_rational(p, -out.start_exponent);
    const Rational pr(p.big());
    out.digits.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::int64_t d = detail::leading_digit(rest, p);
        out.digits.push_back(d);
        rest = (rest - Rational(d)) / pr;
    }
    return out;
}

/**
 * The p-adic fractional part <r>_p: the symmetric-digit terms of exponent <= 0.
 *
 * Built directly from r = alpha / (beta * p^k0) with k0 = max(0, -vp(r)):
 * the numerator is the symmetric residue of alpha * beta^-1 modulo p^(1+k0).
 */
inline Rational fractional_part(const Rational& r, OddPrime p) {
    if (r.is_zero()) return Rational(0);
    const std::int64_t v = vp(r, p);
    if (v > 0) return Rational(0);
    const std::int64_t k0 = -v;
    const BigInt scale = pow_p(p, k0);
    const BigInt alpha = r.num();
    const BigInt beta = r.den() / scale;
    const BigInt modulus = scale * p.big();
    const BigInt x = symmetric_residue(alpha * mod_inverse(beta, modulus), modulus);
    return Rational(x, scale);
}

/// Eventual periodicity of the digit sequence, found by repetition of the
/// exact remainder state.
struct DigitCycle {
    std::size_t preperiod = 0;  ///< digits before the cycle starts
    std::size_t period = 0;
    std::vector<std::int64_t> cycle;
};

/**
 * Detects the repeating tail of the symmetric digits of r. Remainders of a
 * rational with denominator w stay bounded in size, so a state repeats within
 * roughly w * p steps; max_steps guards pathological inputs.
 */
inline DigitCycle find_digit_cycle(const Rational& r, OddPrime p, std::optional<std::size_t> max_steps = std::nullopt) {
    DigitCycle cycle;
    if (r.is_zero()) {
        cycle.period = 1;
        cycle.cycle = {0};
        return cycle;
    }
    Rational rest = r * pow_p_rational(p, -vp(r, p));
    // The numerator shrinks by a factor of about p per step until it is
    // below the denominator, then the state space has at most ~den values.
    const std::size_t limit = max_steps.value_or(
        static_cast<std::size_t>((rest.den() + 2) * 2 * p.value()) + 4 * rest.num().str().size() + 16);
    const Rational pr(p.big());

    std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
    std::vector<std::int64_t> digits;
    for (std::size_t i = 0; i <= limit; ++i) {
        auto [it, inserted] = seen.emplace(std::pair{rest.num(), rest.den()}, i);
        if (!inserted) {
            cycle.preperiod = it->second;
            cycle.period = i - it->second;
            cycle.cycle.assign(digits.begin() + static_cast<std::ptrdiff_t>(it->second), digits.end());
            return cycle;
        }
        const std::int64_t d = detail::leading_digit(rest, p);
        digits.push_back(d);
        rest = (rest - Rational(d)) / pr;
    }
    throw theorem_violation("digit sequence did not become periodic within " + std::to_string(limit) + " steps");
}

}  // namespace padic_cf
