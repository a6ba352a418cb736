#include "flagcat/multipoly.hpp"

#include <doctest.h>

using namespace flagcat;

namespace {

// Tiny deterministic generator for property-style checks.
struct Rng {
    unsigned long state = 0x9e3779b97f4a7c15UL;
    unsigned long next()
    {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    int uniform(int n) { return static_cast<int>(next() % static_cast<unsigned long>(n)); }
};

MultiPoly random_poly(Rng& rng, const VarTablePtr& table, int max_degree, int n_terms)
{
    MultiPoly p(table);
    for (int t = 0; t < n_terms; ++t) {
        auto monos = monomials_of_degree(*table, 2 * (1 + rng.uniform(max_degree / 2)));
        if (monos.empty())
            continue;
        const Monomial& m = monos[rng.uniform(static_cast<int>(monos.size()))];
        p = p + MultiPoly::monomial(table, m, Rational(rng.uniform(7) - 3));
    }
    return p;
}

} // namespace

TEST_CASE("transpose examples")
{
    auto t = xi_table(3);
    MultiPoly xi1 = MultiPoly::variable(t, t->xi_position(1));
    MultiPoly xi2 = MultiPoly::variable(t, t->xi_position(2));
    MultiPoly xi3 = MultiPoly::variable(t, t->xi_position(3));
    CHECK(transpose_xi(1, xi1) == xi2);
    CHECK(transpose_xi(1, xi1 * xi2) == xi1 * xi2);
    CHECK(transpose_xi(1, xi1 * xi1 + xi3) == xi2 * xi2 + xi3);
    CHECK(transpose_xi(1, transpose_xi(1, xi1 * xi1 * xi2)) == xi1 * xi1 * xi2);
    CHECK_THROWS_AS(transpose_xi(3, xi1), std::invalid_argument);
}

TEST_CASE("divided difference basics")
{
    auto t = xi_table(2);
    MultiPoly xi1 = MultiPoly::variable(t, t->xi_position(1));
    MultiPoly xi2 = MultiPoly::variable(t, t->xi_position(2));
    MultiPoly one(t, Rational(1));
    CHECK(divided_difference(1, xi1) == one);
    CHECK(divided_difference(1, xi1 * xi2).is_zero());
    CHECK(divided_difference(1, xi1 * xi1) == xi1 + xi2);
    // output degree drops by 2 when nonzero
    MultiPoly f = xi1 * xi1 * xi2;
    int d = 0;
    CHECK(divided_difference(1, f).is_homogeneous(&d));
    CHECK(d == 4);
}

TEST_CASE("divided difference against its defining quotient")
{
    auto t = xi_table(3);
    Rng rng;
    for (int trial = 0; trial < 20; ++trial) {
        MultiPoly f = random_poly(rng, t, 8, 4);
        for (int i = 1; i < 3; ++i) {
            MultiPoly xi_i = MultiPoly::variable(t, t->xi_position(i));
            MultiPoly xi_i1 = MultiPoly::variable(t, t->xi_position(i + 1));
            MultiPoly lhs = divided_difference(i, f) * (xi_i - xi_i1);
            CHECK(lhs == f - transpose_xi(i, f));
        }
    }
}

TEST_CASE("divided difference word")
{
    auto t = xi_table(2);
    MultiPoly xi1 = MultiPoly::variable(t, t->xi_position(1));
    MultiPoly f = xi1 * xi1;
    CHECK(divided_difference_word({}, f) == f);
    CHECK(divided_difference_word({1, 1}, f).is_zero());
    // ([1], xi_1 g) = g for symmetric g
    MultiPoly g = elementary_symmetric(2, 2, t) + elementary_symmetric(1, 2, t) * elementary_symmetric(1, 2, t);
    CHECK(divided_difference_word({1}, xi1 * g) == g);
}

TEST_CASE("longest word")
{
    CHECK(longest_word(1).empty());
    CHECK(longest_word(2) == std::vector<int>{1});
    CHECK(longest_word(3) == std::vector<int>{1, 2, 1});
    CHECK(longest_word(4).size() == 6);
}

TEST_CASE("longest word kills antisymmetric parts and lands in symmetrics")
{
    auto t = xi_table(3);
    auto w0 = longest_word(3);
    Rng rng;
    for (int trial = 0; trial < 15; ++trial) {
        MultiPoly f = random_poly(rng, t, 8, 4);
        CHECK(fully_symmetric_in_xi(divided_difference_word(w0, f)));
    }
}

TEST_CASE("dd_w0 (xi^delta f) = f for symmetric f")
{
    for (int a = 2; a <= 4; ++a) {
        auto t = xi_table(a);
        auto w0 = longest_word(a);
        Monomial delta(t->size(), 0);
        for (int i = 1; i <= a; ++i)
            delta[t->xi_position(i)] = a - i;
        MultiPoly xi_delta = MultiPoly::monomial(t, delta);
        Rng rng;
        for (int trial = 0; trial < 6; ++trial) {
            // symmetric f built from elementary symmetric polynomials
            MultiPoly f(t, Rational(1 + rng.uniform(3)));
            for (int reps = 0; reps < 2; ++reps)
                f = f * elementary_symmetric(1 + rng.uniform(a), a, t);
            CHECK(divided_difference_word(w0, xi_delta * f) == f);
        }
    }
}

TEST_CASE("elementary symmetric polynomials")
{
    auto t = xi_table(3);
    CHECK(elementary_symmetric(0, 3, t) == MultiPoly(t, Rational(1)));
    auto t2 = xi_table(2);
    MultiPoly xi1 = MultiPoly::variable(t2, t2->xi_position(1));
    MultiPoly xi2 = MultiPoly::variable(t2, t2->xi_position(2));
    CHECK(elementary_symmetric(1, 2, t2) == xi1 + xi2);
    MultiPoly e2 = elementary_symmetric(2, 3, t);
    CHECK(e2.terms().size() == 3);
    CHECK(fully_symmetric_in_xi(e2));
    CHECK_THROWS_AS(elementary_symmetric(4, 3, t), std::invalid_argument);
}

TEST_CASE("nilHecke relations hold exhaustively")
{
    CHECK(check_nilhecke_relations(2, 6).pass);
    CHECK(check_nilhecke_relations(3, 6).pass);
}

TEST_CASE("dd_1 xi_1 dd_1 = dd_1 as operators")
{
    auto t = xi_table(2);
    MultiPoly xi1 = MultiPoly::variable(t, t->xi_position(1));
    Rng rng;
    for (int trial = 0; trial < 20; ++trial) {
        MultiPoly f = random_poly(rng, t, 8, 4);
        CHECK(divided_difference(1, xi1 * divided_difference(1, f)) == divided_difference(1, f));
    }
}

TEST_CASE("poly parser and printer")
{
    std::vector<GradedVariable> vars = {var_x(1, 0), var_xi(1), var_xi(2), var_y(1, 2)};
    auto t = std::make_shared<VarTable>(vars);
    MultiPoly p = parse_poly("3*xi1^2*x_{1,0} - 1/2*xi2", t);
    CHECK(p.str() == "3*xi1^2*x_{1,0} - 1/2*xi2");
    CHECK(parse_poly("xi1 + xi2", t) == elementary_symmetric(1, 2, t));
    CHECK_THROWS_AS(parse_poly("z1", t), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("xi3", t), std::invalid_argument);
}

TEST_CASE("monomial enumeration and order")
{
    auto t = xi_table(2);
    auto degree4 = monomials_of_degree(*t, 4);
    CHECK(degree4.size() == 3);
    auto odd = monomials_of_degree(*t, 3);
    CHECK(odd.empty());
}
