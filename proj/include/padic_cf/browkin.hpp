#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "exact_arith.hpp"
#include "quadratic.hpp"

namespace padic_cf {

/**
 * Browkin continued fractions of rationals.
 *
 * A rational r is written r = a_0 + 1/(a_1 + 1/(... + 1/a_N)) with partial
 * quotients a_n = x_n / p^k_n in Z[1/p] and |x_n| <= (p^(1+k_n) - 1)/2. The
 * expansion is driven entirely by the integer sequence beta_n:
 *
 *   beta_{-1} = alpha, beta_0 = beta, where r = alpha / (beta * p^k_0)
 *   x_n       = symmetric residue of beta_{n-1} * beta_n^-1 mod p^(1+k_n)
 *   Delta     = (beta_{n-1} - x_n * beta_n) / p^k_n
 *   k_{n+1}   = vp(Delta),  beta_{n+1} = Delta / p^k_{n+1}
 *
 * and stops when Delta == 0. |beta_n| is dominated by a linear recurrence
 * decaying like lambda_1^n, which gives an a priori bound on the length.
 */

struct BrowkinStep {
    std::int64_t k = 0;  ///< k_n
    BigInt x;            ///< x_n
    BigInt beta;         ///< beta_n
    Rational a;          ///< partial quotient x_n / p^k_n
    Rational r;          ///< complete quotient beta_{n-1} / (beta_n p^k_n)
};

struct BrowkinExpansion {
    OddPrime p;
    Rational input;
    BigInt alpha;  ///< beta_{-1}
    BigInt beta0;  ///< beta_0, always positive
    std::vector<BrowkinStep> steps;
    bool terminated = false;

    std::vector<Rational> quotients() const {
        std::vector<Rational> out;
        out.reserve(steps.size());
        for (const auto& s : steps) out.push_back(s.a);
        return out;
    }

    /// |beta_1|, or 0 when the expansion has a single quotient.
    BigInt beta1_abs() const {
        return steps.size() > 1 ? BigInt(boost::multiprecision::abs(steps[1].beta)) : BigInt(0);
    }
};

struct Convergent {
    Rational pn;
    Rational qn;
    Rational value;
};

/// Bound on the number of Browkin steps, with the exact certificate behind it.
struct BoundReport {
    QuadraticElement lambda1;  ///< larger root of 2p^2 X^2 - p^2 X - 2
    QuadraticElement lambda2;
    double lambda1_float = 0;
    double lambda2_float = 0;
    QuadraticElement capacity_constant;  ///< 2|beta_1|/(lambda1 - lambda2) + |beta_0|
    double capacity_float = 0;
    std::int64_t n_bound = 0;        ///< exact floor(log C / -log lambda1)
    std::int64_t n_bound_float = 0;  ///< same quantity via doubles
    bool exact_certificate = false;  ///< exact and float routes agree
};

/// Exact back-substitution a_0 + 1/(a_1 + 1/(... + 1/a_k)).
inline Rational cf_evaluate(std::span<const Rational> quotients) {
    if (quotients.empty()) throw std::domain_error("empty continued fraction");
    Rational value = quotients.back();
    for (auto it = quotients.rbegin() + 1; it != quotients.rend(); ++it) {
        if (value.is_zero()) throw std::domain_error("divergent finite fraction");
        value = *it + value.inverse();
    }
    return value;
}

/// Majorant sequence theta_0 = |beta_0|, theta_1 = |beta_1|,
/// theta_{i+1} = theta_i / 2 + theta_{i-1} / p^2.
inline std::vector<Rational> theta_sequence(const BigInt& beta0_abs, const BigInt& beta1_abs, OddPrime p, std::size_t n) {
    if (n < 2) throw std::domain_error("theta_sequence needs n >= 2");
    if (beta0_abs < 0 || beta1_abs < 0) throw std::domain_error("theta seeds must be nonnegative");
    const Rational half(BigInt(1), BigInt(2));
    const Rational inv_p2(BigInt(1), pow_p(p, 2));
    std::vector<Rational> theta{Rational(beta0_abs), Rational(beta1_abs)};
    theta.reserve(n);
    while (theta.size() < n) {
        const std::size_t i = theta.size() - 1;
        theta.push_back(half * theta[i] + inv_p2 * theta[i - 1]);
    }
    return theta;
}

inline BoundReport browkin_bound(const BigInt& beta0_abs, const BigInt& beta1_abs, OddPrime p) {
    if (beta0_abs < 1) throw std::domain_error("|beta_0| must be >= 1");
    if (beta1_abs < 0) throw std::domain_error("|beta_1| must be >= 0");
    const BigInt radicand = pow_p(p, 2) + 16;
    const Rational quarter(BigInt(1), BigInt(4));
    const Rational root_coeff(BigInt(1), 4 * p.big());
    // lambda = (p +- sqrt(p^2 + 16)) / (4p)
    QuadraticElement lambda1(quarter, root_coeff, radicand);
    QuadraticElement lambda2(quarter, -root_coeff, radicand);

    QuadraticElement capacity =
        QuadraticElement::rational(Rational(BigInt(2 * beta1_abs)), radicand) / (lambda1 - lambda2) + Rational(beta0_abs);

    // Largest N with lambda1^N * C >= 1, i.e. floor(log C / -log lambda1).
    std::int64_t n_exact = 0;
    QuadraticElement scaled = capacity * lambda1;
    while ((scaled - Rational(1)).sign() >= 0) {
        ++n_exact;
        scaled *= lambda1;
    }

    BoundReport report{lambda1, lambda2, lambda1.to_double(), lambda2.to_double(), capacity, capacity.to_double()};
    report.n_bound = n_exact;
    report.n_bound_float = static_cast<std::int64_t>(
        std::floor(std::log(report.capacity_float) / -std::log(report.lambda1_float)));
    report.exact_certificate = report.n_bound == report.n_bound_float;
    return report;
}

/**
 * Runs the Browkin algorithm on a nonzero rational.
 *
 * Without an explicit max_steps the cap is 4 * (N + 2), N being the bound for
 * this input's |beta_0|, |beta_1|. Hitting the cap throws theorem_violation.
 */
inline BrowkinExpansion browkin_expand(const Rational& r, OddPrime p, std::optional<std::size_t> max_steps = std::nullopt) {
    if (r.is_zero()) throw std::domain_error("Browkin expansion of zero is undefined");
    const std::int64_t k0 = std::max<std::int64_t>(0, -vp(r, p));

    BrowkinExpansion out{p, r, r.num(), r.den() / pow_p(p, k0), {}, false};
    std::optional<std::size_t> cap = max_steps;

    BigInt prev = out.alpha;
    BigInt cur = out.beta0;
    std::int64_t k = k0;
    for (;;) {
        if (cap && out.steps.size() >= *cap)
            throw theorem_violation("bound violated: Browkin expansion of " + r.to_string() + " exceeded " +
                                    std::to_string(*cap) + " steps");
        const BigInt scale = pow_p(p, k);
        const BigInt modulus = scale * p.big();
        BigInt x = symmetric_residue(prev * mod_inverse(cur, modulus), modulus);
        out.steps.push_back(BrowkinStep{k, x, cur, Rational(x, scale), Rational(prev, cur * scale)});

        BigInt delta = prev - x * cur;
        if (delta == 0) {
            out.terminated = true;
            return out;
        }
        delta /= scale;
        const std::int64_t k_next = vp(delta, p);
        BigInt beta_next = delta / pow_p(p, k_next);
        prev = std::move(cur);
        cur = std::move(beta_next);
        k = k_next;

        if (!cap && out.steps.size() == 1) {
            const BoundReport b = browkin_bound(out.beta0, boost::multiprecision::abs(cur), p);
            cap = static_cast<std::size_t>(4 * (b.n_bound + 2));
        }
    }
}

/// Convergents p_n / q_n from p_{-1} = 1, p_0 = a_0, q_{-1} = 0, q_0 = 1 and
/// p_{n} = a_n p_{n-1} + p_{n-2} (same for q).
inline std::vector<Convergent> browkin_convergents(std::span<const Rational> quotients) {
    if (quotients.empty()) throw std::domain_error("no quotients");
    std::vector<Convergent> out;
    out.reserve(quotients.size());
    Rational p_prev(1), q_prev(0);
    Rational p_cur = quotients[0], q_cur(1);
    out.push_back({p_cur, q_cur, p_cur / q_cur});
    for (std::size_t n = 1; n < quotients.size(); ++n) {
        Rational p_next = quotients[n] * p_cur + p_prev;
        Rational q_next = quotients[n] * q_cur + q_prev;
        p_prev = std::exchange(p_cur, std::move(p_next));
        q_prev = std::exchange(q_cur, std::move(q_next));
        if (q_cur.is_zero()) throw std::domain_error("convergent with zero denominator");
        out.push_back({p_cur, q_cur, p_cur / q_cur});
    }
    return out;
}

inline std::vector<Convergent> browkin_convergents(const BrowkinExpansion& expansion) {
    const auto q = expansion.quotients();
    return browkin_convergents(std::span<const Rational>(q));
}

}  // namespace padic_cf
