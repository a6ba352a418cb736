#include "flagcat/linalg.hpp"

#include <doctest.h>

using namespace flagcat;

TEST_CASE("rank, inverse, nullspace")
{
    QMatrix a(3, 3);
    int vals[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 10}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            a.at(i, j) = vals[i][j];
    CHECK(a.rank() == 3);
    QMatrix inv = a.inverse();
    CHECK(a * inv == QMatrix::identity(3));

    QMatrix b(2, 3);
    b.at(0, 0) = 1;
    b.at(0, 1) = 2;
    b.at(0, 2) = 3;
    b.at(1, 0) = 2;
    b.at(1, 1) = 4;
    b.at(1, 2) = 6;
    CHECK(b.rank() == 1);
    QMatrix ns = b.nullspace();
    CHECK(ns.cols() == 2);
    CHECK((b * ns).is_zero());
}

TEST_CASE("solve consistent and inconsistent systems")
{
    QMatrix a(2, 2);
    a.at(0, 0) = 2;
    a.at(0, 1) = 1;
    a.at(1, 0) = 1;
    a.at(1, 1) = 1;
    QVec x;
    CHECK(a.solve({Rational(3), Rational(2)}, x));
    CHECK(x[0] == 1);
    CHECK(x[1] == 1);

    QMatrix b(2, 1);
    b.at(0, 0) = 1;
    b.at(1, 0) = 1;
    CHECK_FALSE(b.solve({Rational(1), Rational(2)}, x));
}

TEST_CASE("echelon accumulator")
{
    Echelon e(3);
    CHECK(e.add_row({Rational(1), Rational(1), Rational(0)}));
    CHECK(e.add_row({Rational(0), Rational(1), Rational(1)}));
    CHECK_FALSE(e.add_row({Rational(1), Rational(2), Rational(1)}));
    CHECK(e.rank() == 2);
    CHECK(e.in_rowspace({Rational(2), Rational(3), Rational(1)}));
    CHECK_FALSE(e.in_rowspace({Rational(0), Rational(0), Rational(1)}));
    QMatrix ns = e.nullspace();
    CHECK(ns.cols() == 1);
    // (1,-1,1) spans the nullspace
    CHECK(ns.at(0, 0) / ns.at(2, 0) == 1);
    CHECK(ns.at(1, 0) / ns.at(2, 0) == -1);
}

TEST_CASE("rational arithmetic stays exact")
{
    QMatrix h(4, 4); // Hilbert-like matrix: notorious for float error
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            h.at(i, j) = Rational(1, i + j + 1);
    QMatrix prod = h * h.inverse();
    CHECK(prod == QMatrix::identity(4));
}
