#include <gtest/gtest.h>

#include <padic_cf/browkin.hpp>
#include <padic_cf/digits.hpp>

#include "oracles.hpp"

namespace padic_cf {
namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(BigInt(n), BigInt(d)); }

std::vector<Rational> qs(std::initializer_list<std::pair<std::int64_t, std::int64_t>> v) {
    std::vector<Rational> out;
    for (auto [n, d] : v) out.push_back(q(n, d));
    return out;
}

TEST(BrowkinExpand, Example365Over54) {
    const auto e = browkin_expand(q(365, 54), 3, 100);
    EXPECT_EQ(e.quotients(), qs({{-20, 27}, {4, 3}, {2, 3}, {-2, 3}}));
    ASSERT_EQ(e.steps.size(), 4u);
    const std::vector<std::pair<std::int64_t, std::int64_t>> k_beta{{3, 2}, {1, 5}, {1, -2}, {1, 1}};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(e.steps[i].k, k_beta[i].first);
        EXPECT_EQ(e.steps[i].beta, k_beta[i].second);
    }
    EXPECT_TRUE(e.terminated);
    EXPECT_EQ(e.alpha, 365);
    EXPECT_EQ(e.beta0, 2);
    EXPECT_EQ(cf_evaluate(e.quotients()), q(365, 54));
}

TEST(BrowkinExpand, Example77Over18) {
    const auto e = browkin_expand(q(77, 18), 3);
    EXPECT_EQ(e.quotients(), qs({{-2, 9}, {2, 9}}));
    // x_0 = -2 is the symmetric representative of the class of 25 mod 27.
    EXPECT_EQ(mod_floor(e.steps[0].x - 25, 27), 0);
    EXPECT_EQ(cf_evaluate(e.quotients()), q(77, 18));
}

TEST(BrowkinExpand, IntegerInput) {
    const auto e = browkin_expand(q(5), 3);
    // 5 = -1 + 1/(1/6); 1/6 = -4/3 + 1/(3/2); 3/2 = 2/3 exactly after beta hits 0.
    EXPECT_EQ(e.quotients(), qs({{-1, 1}, {-4, 3}, {2, 3}}));
    EXPECT_EQ(cf_evaluate(e.quotients()), q(5));
    for (std::size_t i = 1; i < e.steps.size(); ++i) EXPECT_GE(e.steps[i].k, 1);
}

TEST(BrowkinExpand, NegativeExample) {
    const auto e = browkin_expand(q(-1793, 100), 5, 100);
    EXPECT_EQ(e.quotients(), qs({{-42, 25}, {-8, 5}, {-3, 5}, {4, 5}}));
    EXPECT_EQ(cf_evaluate(e.quotients()), q(-1793, 100));
    // A last quotient of -4/5 does not reconstruct the input.
    EXPECT_NE(cf_evaluate(qs({{-42, 25}, {-8, 5}, {-3, 5}, {-4, 5}})), q(-1793, 100));
}

TEST(BrowkinExpand, ZeroAndCapErrors) {
    EXPECT_THROW((void)browkin_expand(Rational(0), 3), std::domain_error);
    try {
        (void)browkin_expand(q(365, 54), 3, 2);
        FAIL() << "expected theorem_violation";
    } catch (const theorem_violation& e) {
        EXPECT_NE(std::string(e.what()).find("bound violated"), std::string::npos);
    }
}

TEST(CfEvaluate, Examples) {
    EXPECT_EQ(cf_evaluate(qs({{-2, 9}, {2, 9}})), q(77, 18));
    EXPECT_EQ(cf_evaluate(qs({{7, 3}})), q(7, 3));
    EXPECT_EQ(cf_evaluate(qs({{-20, 27}, {4, 3}, {2, 3}, {-2, 3}})), q(365, 54));
    EXPECT_THROW((void)cf_evaluate(qs({{1, 1}, {0, 1}})), std::domain_error);
    EXPECT_THROW((void)cf_evaluate(std::vector<Rational>{}), std::domain_error);
}

TEST(Convergents, Examples) {
    const auto c = browkin_convergents(qs({{-2, 9}, {2, 9}}));
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0].value, q(-2, 9));
    EXPECT_EQ(c[1].value, q(77, 18));
    EXPECT_EQ(browkin_convergents(qs({{3, 5}})).front().value, q(3, 5));
    const auto d = browkin_convergents(qs({{-20, 27}, {4, 3}}));
    EXPECT_EQ(d[1].pn * d[0].qn - d[0].pn * d[1].qn, q(1));
}

TEST(Theta, Examples) {
    EXPECT_EQ(theta_sequence(2, 1, 3, 3), qs({{2, 1}, {1, 1}, {13, 18}}));
    EXPECT_EQ(theta_sequence(1, 0, 7, 3), qs({{1, 1}, {0, 1}, {1, 49}}));
    const auto t = theta_sequence(2, 5, 3, 4);
    EXPECT_EQ(t[2], q(49, 18));
    EXPECT_EQ(t[3], q(49, 36) + q(5, 9));
    EXPECT_THROW((void)theta_sequence(1, 1, 3, 1), std::domain_error);
}

TEST(Bound, ReferenceExamples) {
    const auto b1 = browkin_bound(2, 1, 3);
    EXPECT_EQ(b1.n_bound, 3);
    EXPECT_EQ(b1.lambda1, QuadraticElement::rational(q(2, 3), 1));
    EXPECT_EQ(b1.lambda2, QuadraticElement::rational(q(-1, 6), 1));
    EXPECT_TRUE(b1.exact_certificate);

    EXPECT_EQ(browkin_bound(2, 5, 3).n_bound, 6);

    const auto b3 = browkin_bound(4, 13, 5);
    EXPECT_EQ(b3.n_bound, 6);
    EXPECT_EQ(b3.lambda1, QuadraticElement(q(1, 4), q(1, 20), 41));
    EXPECT_TRUE(b3.exact_certificate);
}

TEST(Bound, RootsSatisfyCharacteristicEquation) {
    for (std::int64_t p : {3, 5, 7, 11, 13}) {
        const auto b = browkin_bound(1, 1, p);
        const Rational p2(p * p);
        for (const auto& l : {b.lambda1, b.lambda2})
            EXPECT_TRUE((Rational(2) * p2 * l * l - p2 * l - Rational(2)).is_zero());
        EXPECT_GT(b.lambda1.sign(), 0);
        EXPECT_LT((b.lambda1 - Rational(1)).sign(), 0);
        EXPECT_LT(b.lambda2.sign(), 0);
        EXPECT_GT((b.lambda2 + q(1, 2)).sign(), 0);
    }
}

TEST(Bound, ExactMatchesFloatAcrossSeeds) {
    for (std::int64_t p : {3, 5, 7})
        for (std::int64_t b0 = 1; b0 <= 60; ++b0)
            for (std::int64_t b1 = 0; b1 <= 60; b1 += 3) {
                const auto b = browkin_bound(b0, b1, p);
                EXPECT_TRUE(b.exact_certificate) << b0 << "," << b1 << " p=" << p;
                // Floor characterisation: lambda1^N C >= 1 > lambda1^(N+1) C.
                const auto lower = qf_pow(b.lambda1, static_cast<std::uint64_t>(b.n_bound)) * b.capacity_constant;
                EXPECT_GE((lower - Rational(1)).sign(), 0);
                EXPECT_LT((lower * b.lambda1 - Rational(1)).sign(), 0);
            }
}

class BrowkinProperties : public ::testing::TestWithParam<std::int64_t> {};

TEST_P(BrowkinProperties, StepInvariantsAndOracleAgreement) {
    const std::int64_t p = GetParam();
    for (auto [a, b] : oracle::coprime_pairs(50, 50)) {
        const Rational r = q(a, b);
        const auto e = browkin_expand(r, p);
        const auto quot = e.quotients();
        ASSERT_TRUE(e.terminated);
        EXPECT_EQ(cf_evaluate(quot), r);
        EXPECT_EQ(quot, oracle::naive_browkin(r, p)) << r << " p=" << p;

        const BigInt p_pow = pow_p(p, std::max<std::int64_t>(0, -vp(r, p)));
        EXPECT_EQ(e.input, Rational(e.alpha, e.beta0 * p_pow));

        for (std::size_t n = 0; n < e.steps.size(); ++n) {
            const auto& s = e.steps[n];
            const BigInt pk = pow_p(p, s.k);
            EXPECT_EQ(s.a, Rational(s.x, pk));
            EXPECT_LE(2 * boost::multiprecision::abs(s.x), pk * p - 1);
            EXPECT_EQ(s.a, fractional_part(s.r, p));
            EXPECT_NE(s.beta % p, 0);
            if (n >= 1) { EXPECT_GE(s.k, 1); }
            if (n + 1 < e.steps.size()) {
                const auto& next = e.steps[n + 1];
                EXPECT_EQ(s.r, s.a + next.r.inverse());
                EXPECT_EQ(vp(next.r, p), -next.k);
            } else {
                EXPECT_EQ(s.r, s.a);
            }
        }

        // Majorant and length bound.
        const auto bound = browkin_bound(e.beta0, e.beta1_abs(), p);
        EXPECT_LE(e.steps.size(), static_cast<std::size_t>(bound.n_bound + 1)) << r << " p=" << p;
        if (e.steps.size() >= 2) {
            const auto theta = theta_sequence(e.beta0, e.beta1_abs(), p, e.steps.size());
            for (std::size_t i = 0; i < e.steps.size(); ++i)
                EXPECT_LE(Rational(BigInt(boost::multiprecision::abs(e.steps[i].beta))), theta[i]);
        }

        // Convergents: determinant identity and strictly improving p-adic error.
        const auto conv = browkin_convergents(e);
        EXPECT_EQ(conv.back().value, r);
        for (std::size_t n = 1; n < conv.size(); ++n) {
            const Rational det = conv[n].pn * conv[n - 1].qn - conv[n - 1].pn * conv[n].qn;
            EXPECT_EQ(det, Rational(n % 2 == 1 ? 1 : -1));
        }
        std::optional<std::int64_t> last;
        for (std::size_t n = 0; n + 1 < conv.size(); ++n) {
            const auto v = vp(r - conv[n].value, p);
            if (last) { EXPECT_GT(v, *last); }
            last = v;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(SmallPrimes, BrowkinProperties, ::testing::Values(3, 5, 7, 11));

}  // namespace
}  // namespace padic_cf
