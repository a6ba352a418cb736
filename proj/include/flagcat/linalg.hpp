#pragma once

#include "flagcat/rational.hpp"

#include <cstddef>
#include <vector>

namespace flagcat {

using QVec = std::vector<Rational>;

/* Dense matrix over the rationals.  Row-major; sized at construction. */
class QMatrix {
public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0))
    {
    }

    static QMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QMatrix operator*(const QMatrix& o) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix scaled(const Rational& c) const;
    QVec apply(const QVec& v) const;
    QMatrix transposed() const;
    bool is_zero() const;
    bool operator==(const QMatrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    void append_rows(const QMatrix& o); // o.cols() must match

    std::size_t rank() const;
    bool invertible() const { return rows_ == cols_ && rank() == rows_; }
    QMatrix inverse() const; // throws if singular

    // Basis of the right nullspace, one column per basis vector.
    QMatrix nullspace() const;

    // Solve A x = b; returns false when inconsistent.
    bool solve(const QVec& b, QVec& x) const;

    std::string str() const;

private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

QMatrix from_columns(const std::vector<QVec>& cols, std::size_t dim);
QMatrix hstack(const QMatrix& a, const QMatrix& b);

/* Incremental reduced row echelon accumulator: feed rows one at a time and
 * it keeps only the independent ones, fully reduced.  Used to accumulate
 * large homogeneous constraint systems without materializing them. */
class Echelon {
public:
    explicit Echelon(std::size_t cols) : cols_(cols), pivot_of_col_(cols, SIZE_MAX) {}

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }

    // Returns true when the row added new information.
    bool add_row(QVec row);
    void add_matrix_rows(const QMatrix& m);

    // Reduce v against the echelon in place; result has zeros in pivot columns.
    void reduce(QVec& v) const;
    bool in_rowspace(QVec v) const;

    bool is_pivot_col(std::size_t j) const { return pivot_of_col_[j] != SIZE_MAX; }
    std::vector<std::size_t> free_columns() const;

    // Basis of the common nullspace of all added rows (columns of result).
    QMatrix nullspace() const;

private:
    std::size_t cols_;
    std::vector<QVec> rows_;          // reduced, pivots normalized to 1
    std::vector<std::size_t> pivots_; // pivot column per stored row
    std::vector<std::size_t> pivot_of_col_;
};

} // namespace flagcat
