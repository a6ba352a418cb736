#include "flagcat/bimodule.hpp"
#include "flagcat/chain.hpp"

#include <doctest.h>

using namespace flagcat;

namespace {

BimodPtr carrier_H(int k, int N) // the identity bimodule of H_{k;N}
{
    return ring_carrier(grassmannian(k, N), false, 0, "H");
}

} // namespace

TEST_CASE("ring carrier basics")
{
    auto m = carrier_H(1, 2);
    CHECK(m->graded_dims() == qbin_q2(2, 1));
    m->validate();
    // one-step carrier, both orientations
    auto e = ring_carrier(FlagRing::make({{0, 1}, 2}), true, 0, "E");
    CHECK(e->left == grassmannian(1, 2));
    CHECK(e->right == grassmannian(0, 2));
    e->validate();
    auto f = ring_carrier(FlagRing::make({{0, 1}, 2}), false, 0, "F");
    CHECK(f->left == grassmannian(0, 2));
    f->validate();
}

TEST_CASE("shift and direct sum")
{
    auto m = carrier_H(1, 2);
    auto s = shift_bimodule(m, 3);
    CHECK(s->graded_dims() == LaurentPoly::q_power(3) * m->graded_dims());
    auto both = direct_sum({m, s});
    CHECK(both->graded_dims() == m->graded_dims() + s->graded_dims());
    both->validate();
    // direct_sum_f with f = q + q^-1 on the trivial module
    auto h0 = carrier_H(0, 3);
    auto d = direct_sum_f(h0, qint_balanced(2));
    CHECK(d->graded_dims() == qint_balanced(2));
    LaurentPoly neg;
    neg.set_coeff(0, Rational(-1));
    CHECK_THROWS_AS(direct_sum_f(h0, neg), std::invalid_argument);
}

TEST_CASE("hom space of the identity bimodule is the ring")
{
    for (int N = 1; N <= 4; ++N)
        for (int k = 0; k <= N; ++k) {
            auto m = carrier_H(k, N);
            auto basis0 = hom_space_basis(m, m, 0);
            CHECK(basis0.size() == 1);
            // END(1_n) has the graded dimension of H_{k;N} itself
            LaurentPoly dims = hom_graded_dims(m, m, 0, m->hi);
            CHECK(dims == m->graded_dims());
        }
}

TEST_CASE("hom spaces are shift invariant")
{
    auto m = ring_carrier(FlagRing::make({{1, 2}, 3}), true, 0, "E");
    auto ms = shift_bimodule(m, 2);
    CHECK(hom_space_basis(m, m, 2).size() == hom_space_basis(ms, ms, 2).size());
    CHECK(hom_space_basis(m, ms, 0).size() == hom_space_basis(m, m, -2).size());
}

TEST_CASE("homs found by the solver intertwine the actions")
{
    auto m = ring_carrier(FlagRing::make({{1, 2}, 3}), true, 0, "E");
    for (int d = 0; d <= 4; d += 2)
        for (const auto& h : hom_space_basis(m, m, d))
            h.validate();
}

TEST_CASE("generic and left-free solvers agree")
{
    auto ring = FlagRing::make({{1, 2}, 4});
    auto with_free = std::const_pointer_cast<GradedBimodule>(ring_carrier(ring, true, 0, "E"));
    attach_left_free(with_free);
    auto without = std::make_shared<GradedBimodule>(*with_free);
    without->free_data.reset();
    for (int d = -2; d <= 6; d += 2) {
        auto a = hom_space_basis(with_free, with_free, d);
        auto b = hom_space_basis(without, without, d);
        CHECK(a.size() == b.size());
        for (const auto& h : a)
            h.validate();
    }
}

TEST_CASE("kernel image quotient basics")
{
    auto m = carrier_H(1, 2);
    BimoduleHom id = identity_hom(m);
    CHECK(is_isomorphism(id));
    SubData k = kernel_sub(id);
    for (const auto& mat : k.incl)
        CHECK(mat.cols() == 0);
    BimoduleHom z = zero_hom(m, m, 0);
    SubData ik = kernel_sub(z);
    auto sub = sub_bimodule(m, ik, "all");
    CHECK(sub.module->graded_dims() == m->graded_dims());
    SubData img = image_sub(z);
    auto q = quotient_bimodule(m, img, "M/0");
    CHECK(q.module->graded_dims() == m->graded_dims());
    auto both = subquotient_bimodule(m, ik, img, "H(M)");
    CHECK(both.module->graded_dims() == m->graded_dims());
    both.module->validate();
}

TEST_CASE("quotient by a genuine submodule")
{
    // multiplication by x on H_{1;2}: kernel and image are the top class
    auto m = carrier_H(1, 2);
    std::size_t xpos = m->left->table()->find(VarFamily::X, 1);
    BimoduleHom xmul = zero_hom(m, m, 2);
    for (int d = m->lo; d <= m->hi; ++d)
        xmul.mats[static_cast<std::size_t>(d - m->lo)] = m->action(true, xpos, d);
    xmul.validate();
    SubData img = image_sub(xmul);
    auto q = quotient_bimodule(m, img, "H/xH");
    CHECK(q.module->dim(0) == 1);
    CHECK(q.module->dim(2) == 0);
    SubData ker = kernel_sub(xmul);
    auto s = sub_bimodule(m, ker, "ker x");
    CHECK(s.module->dim(0) == 0);
    CHECK(s.module->dim(2) == 1);
}

TEST_CASE("span closure generates a sub-bimodule")
{
    auto m = ring_carrier(FlagRing::make({{0, 1}, 2}), false, 0, "F");
    QVec one{Rational(1)};
    SubData s = span_closure(m, {{0, one}});
    auto sub = sub_bimodule(m, s, "gen(1)");
    CHECK(sub.module->graded_dims() == m->graded_dims()); // 1 generates everything
}

TEST_CASE("find_isomorphism on equal and distinct modules")
{
    auto m = carrier_H(2, 3);
    auto mt = ring_carrier(grassmannian(2, 3), false, 0, "H'");
    auto iso = find_isomorphism(m, mt);
    REQUIRE(iso.has_value());
    CHECK(is_isomorphism(*iso));
    auto other = carrier_H(1, 3);
    CHECK_FALSE(find_isomorphism(m, other).has_value());
}

TEST_CASE("adjoint shift formulas")
{
    CHECK(adjoint_data('E', 3, 1, 'L') == (OneMorData{'F', 5, 3}));
    CHECK(adjoint_data('F', 3, 0, 'R') == (OneMorData{'E', 1, 2}));
    // (u^L)^R = u and (u^R)^L = u
    for (char kind : {'E', 'F'})
        for (int n = -3; n <= 3; ++n)
            for (int s = -2; s <= 2; ++s) {
                OneMorData l = adjoint_data(kind, n, s, 'L');
                OneMorData lr = adjoint_data(l.kind, l.weight, l.shift, 'R');
                CHECK(lr == (OneMorData{kind, n, s}));
                OneMorData r = adjoint_data(kind, n, s, 'R');
                OneMorData rl = adjoint_data(r.kind, r.weight, r.shift, 'L');
                CHECK(rl == (OneMorData{kind, n, s}));
            }
}
