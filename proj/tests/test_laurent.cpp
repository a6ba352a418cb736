#include "flagcat/laurent.hpp"

#include <doctest.h>

using namespace flagcat;

namespace {

// Independent Pascal-recurrence oracle for the q^2 Gaussian binomial:
// (n k) = (n-1 k-1) + q^{2k} (n-1 k).
LaurentPoly qbin_q2_pascal(int n, int k)
{
    if (k < 0 || k > n)
        return LaurentPoly::zero();
    if (k == 0 || k == n)
        return LaurentPoly::one();
    return qbin_q2_pascal(n - 1, k - 1) + LaurentPoly::q_power(2 * k) * qbin_q2_pascal(n - 1, k);
}

long binom(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    long r = 1;
    for (int i = 0; i < k; ++i)
        r = r * (n - i) / (i + 1);
    return r;
}

LaurentPoly from_pairs(std::initializer_list<std::pair<int, int>> pairs)
{
    LaurentPoly p;
    for (auto [e, c] : pairs)
        p.set_coeff(e, Rational(c));
    return p;
}

} // namespace

TEST_CASE("balanced quantum integers")
{
    CHECK(qint_balanced(0).is_zero());
    CHECK(qint_balanced(1) == LaurentPoly::one());
    CHECK(qint_balanced(2) == from_pairs({{1, 1}, {-1, 1}}));
    // (q^2 - q^-2)/(q - q^-1) expanded
    LaurentPoly num = LaurentPoly::q_power(2) - LaurentPoly::q_power(-2);
    LaurentPoly den = LaurentPoly::q_power(1) - LaurentPoly::q_power(-1);
    CHECK(num.divide_exact(den) == qint_balanced(2));
    for (int a = 0; a <= 8; ++a) {
        CHECK(qint_balanced(a).bar_invariant());
        CHECK(qint_balanced(a).eval_at_one() == Rational(a));
    }
    CHECK_THROWS_AS(qint_balanced(-1), std::invalid_argument);
}

TEST_CASE("balanced factorial")
{
    CHECK(qfact_balanced(0) == LaurentPoly::one());
    CHECK(qfact_balanced(2) == from_pairs({{1, 1}, {-1, 1}}));
    CHECK(qfact_balanced(3) == qint_balanced(2) * from_pairs({{2, 1}, {0, 1}, {-2, 1}}));
    CHECK_THROWS_AS(qfact_balanced(-2), std::invalid_argument);
}

TEST_CASE("balanced Gaussian binomial")
{
    CHECK(qbin_balanced(3, 0) == LaurentPoly::one());
    CHECK(qbin_balanced(2, 1) == from_pairs({{1, 1}, {-1, 1}}));
    CHECK(qbin_balanced(4, 2) == from_pairs({{4, 1}, {2, 1}, {0, 2}, {-2, 1}, {-4, 1}}));
    CHECK_THROWS_AS(qbin_balanced(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(qbin_balanced(3, -1), std::invalid_argument);
}

TEST_CASE("q^2 integers and binomials")
{
    CHECK(qnat_q2(2) == from_pairs({{0, 1}, {2, 1}}));
    CHECK(qbin_q2(2, 1) == from_pairs({{0, 1}, {2, 1}}));
    for (int n = 0; n <= 6; ++n)
        CHECK(qbin_q2(n, 0) == LaurentPoly::one());
    for (int n = 0; n <= 8; ++n)
        for (int k = 0; k <= n; ++k)
            CHECK(qbin_q2(n, k).nonneg_coeffs());
}

TEST_CASE("balanced vs q^2 normalization")
{
    for (int n = 0; n <= 8; ++n)
        for (int k = 0; k <= n; ++k)
            CHECK(qbin_balanced(n, k) == LaurentPoly::q_power(-k * (n - k)) * qbin_q2(n, k));
}

TEST_CASE("Pascal recurrence for qbin_q2")
{
    for (int n = 1; n <= 8; ++n)
        for (int k = 1; k < n; ++k) {
            CHECK(qbin_q2(n, k) == qbin_q2(n - 1, k - 1) + LaurentPoly::q_power(2 * k) * qbin_q2(n - 1, k));
            CHECK(qbin_q2(n, k) == qbin_q2_pascal(n, k));
        }
}

TEST_CASE("evaluation at q=1 matches binomials")
{
    for (int n = 0; n <= 8; ++n)
        for (int k = 0; k <= n; ++k) {
            CHECK(qbin_q2(n, k).eval_at_one() == Rational(binom(n, k)));
            CHECK(qbin_balanced(n, k).eval_at_one() == Rational(binom(n, k)));
        }
}

TEST_CASE("evaluation at q=1 is a ring homomorphism")
{
    LaurentPoly a = from_pairs({{3, 2}, {0, -1}, {-2, 5}});
    LaurentPoly b = from_pairs({{1, 1}, {-1, 7}});
    CHECK((a + b).eval_at_one() == a.eval_at_one() + b.eval_at_one());
    CHECK((a * b).eval_at_one() == a.eval_at_one() * b.eval_at_one());
}

TEST_CASE("canonical text and json forms")
{
    LaurentPoly p = from_pairs({{2, 1}, {0, 2}, {-2, 1}});
    CHECK(p.str() == "q^2 + 2 + q^-2");
    CHECK(p.json() == "[[-2,1],[0,2],[2,1]]");
    CHECK(LaurentPoly::zero().str() == "0");
    CHECK(from_pairs({{1, -3}}).str() == "-3*q");
}
