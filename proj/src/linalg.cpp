#include "flagcat/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace flagcat {

QMatrix QMatrix::identity(std::size_t n)
{
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const
{
    if (cols_ != o.rows_)
        throw std::logic_error("QMatrix: dimension mismatch in product");
    QMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (flagcat::is_zero(a))
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Rational& b = o.at(k, j);
                if (!flagcat::is_zero(b))
                    r.at(i, j) += a * b;
            }
        }
    return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::logic_error("QMatrix: dimension mismatch in sum");
    QMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        r.data_[i] = data_[i] + o.data_[i];
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::logic_error("QMatrix: dimension mismatch in difference");
    QMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        r.data_[i] = data_[i] - o.data_[i];
    return r;
}

QMatrix QMatrix::scaled(const Rational& c) const
{
    QMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        r.data_[i] = data_[i] * c;
    return r;
}

QVec QMatrix::apply(const QVec& v) const
{
    if (v.size() != cols_)
        throw std::logic_error("QMatrix: dimension mismatch in apply");
    QVec r(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!flagcat::is_zero(at(i, j)))
                r[i] += at(i, j) * v[j];
    return r;
}

QMatrix QMatrix::transposed() const
{
    QMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r.at(j, i) = at(i, j);
    return r;
}

bool QMatrix::is_zero() const
{
    for (const auto& x : data_)
        if (!flagcat::is_zero(x))
            return false;
    return true;
}

void QMatrix::append_rows(const QMatrix& o)
{
    if (rows_ == 0 && cols_ == 0)
        cols_ = o.cols_;
    if (o.cols_ != cols_)
        throw std::logic_error("QMatrix: dimension mismatch in append_rows");
    data_.insert(data_.end(), o.data_.begin(), o.data_.end());
    rows_ += o.rows_;
}

std::size_t QMatrix::rank() const
{
    Echelon e(cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        QVec row(cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            row[j] = at(i, j);
        e.add_row(std::move(row));
    }
    return e.rank();
}

QMatrix QMatrix::inverse() const
{
    if (rows_ != cols_)
        throw std::logic_error("QMatrix: inverse of non-square matrix");
    const std::size_t n = rows_;
    QMatrix work(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            work.at(i, j) = at(i, j);
        work.at(i, n + i) = 1;
    }
    // Gauss-Jordan on [A | I]
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t piv = row;
        while (piv < n && flagcat::is_zero(work.at(piv, col)))
            ++piv;
        if (piv == n)
            throw std::logic_error("QMatrix: singular matrix in inverse");
        if (piv != row)
            for (std::size_t j = 0; j < 2 * n; ++j)
                std::swap(work.at(piv, j), work.at(row, j));
        Rational inv = 1 / work.at(row, col);
        for (std::size_t j = 0; j < 2 * n; ++j)
            work.at(row, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || flagcat::is_zero(work.at(i, col)))
                continue;
            Rational f = work.at(i, col);
            for (std::size_t j = 0; j < 2 * n; ++j)
                work.at(i, j) -= f * work.at(row, j);
        }
        ++row;
    }
    QMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r.at(i, j) = work.at(i, n + j);
    return r;
}

QMatrix QMatrix::nullspace() const
{
    Echelon e(cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        QVec row(cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            row[j] = at(i, j);
        e.add_row(std::move(row));
    }
    return e.nullspace();
}

bool QMatrix::solve(const QVec& b, QVec& x) const
{
    if (b.size() != rows_)
        throw std::logic_error("QMatrix: dimension mismatch in solve");
    Echelon e(cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
        QVec row(cols_ + 1);
        for (std::size_t j = 0; j < cols_; ++j)
            row[j] = at(i, j);
        row[cols_] = b[i];
        e.add_row(std::move(row));
    }
    // Inconsistent iff some echelon row is (0 ... 0 | c) with c != 0; such a
    // row would have its pivot in the augmented column.
    QVec probe(cols_ + 1, Rational(0));
    probe[cols_] = 1;
    if (e.in_rowspace(probe))
        return false;
    // Back-substitute from the reduced echelon: free variables set to 0.
    x.assign(cols_, Rational(0));
    QMatrix ns = e.nullspace(); // columns span solutions of [A|b][x;t] = 0
    // Find a nullspace column with t != 0 and rescale so t = -1 => A x = b.
    for (std::size_t c = 0; c < ns.cols(); ++c) {
        if (!flagcat::is_zero(ns.at(cols_, c))) {
            Rational t = ns.at(cols_, c);
            for (std::size_t j = 0; j < cols_; ++j)
                x[j] = -ns.at(j, c) / t;
            return true;
        }
    }
    // b = 0 case
    for (std::size_t i = 0; i < rows_; ++i)
        if (!flagcat::is_zero(b[i]))
            return false;
    return true;
}

std::string QMatrix::str() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << "[";
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? " " : "") << at(i, j).get_str();
        os << "]\n";
    }
    return os.str();
}

QMatrix from_columns(const std::vector<QVec>& cols, std::size_t dim)
{
    QMatrix m(dim, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != dim)
            throw std::logic_error("from_columns: ragged input");
        for (std::size_t i = 0; i < dim; ++i)
            m.at(i, c) = cols[c][i];
    }
    return m;
}

QMatrix hstack(const QMatrix& a, const QMatrix& b)
{
    if (a.rows() != b.rows())
        throw std::logic_error("hstack: row mismatch");
    QMatrix r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            r.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

bool Echelon::add_row(QVec row)
{
    if (row.size() != cols_)
        throw std::logic_error("Echelon: wrong row length");
    reduce(row);
    std::size_t p = cols_;
    for (std::size_t j = 0; j < cols_; ++j)
        if (!flagcat::is_zero(row[j])) {
            p = j;
            break;
        }
    if (p == cols_)
        return false;
    Rational inv = 1 / row[p];
    for (std::size_t j = p; j < cols_; ++j)
        row[j] *= inv;
    // Clear column p in existing rows to stay fully reduced.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        Rational f = rows_[r][p];
        if (flagcat::is_zero(f))
            continue;
        for (std::size_t j = p; j < cols_; ++j)
            rows_[r][j] -= f * row[j];
    }
    pivot_of_col_[p] = rows_.size();
    rows_.push_back(std::move(row));
    pivots_.push_back(p);
    return true;
}

void Echelon::add_matrix_rows(const QMatrix& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i) {
        QVec row(cols_);
        for (std::size_t j = 0; j < cols_; ++j)
            row[j] = m.at(i, j);
        add_row(std::move(row));
    }
}

void Echelon::reduce(QVec& v) const
{
    for (std::size_t j = 0; j < cols_; ++j) {
        if (flagcat::is_zero(v[j]))
            continue;
        std::size_t r = pivot_of_col_[j];
        if (r == SIZE_MAX)
            continue;
        Rational f = v[j];
        const QVec& row = rows_[r];
        for (std::size_t t = j; t < cols_; ++t)
            if (!flagcat::is_zero(row[t]))
                v[t] -= f * row[t];
    }
}

bool Echelon::in_rowspace(QVec v) const
{
    reduce(v);
    for (const auto& x : v)
        if (!flagcat::is_zero(x))
            return false;
    return true;
}

std::vector<std::size_t> Echelon::free_columns() const
{
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < cols_; ++j)
        if (pivot_of_col_[j] == SIZE_MAX)
            free_cols.push_back(j);
    return free_cols;
}

QMatrix Echelon::nullspace() const
{
    std::vector<std::size_t> free_cols = free_columns();
    QMatrix ns(cols_, free_cols.size());
    for (std::size_t c = 0; c < free_cols.size(); ++c) {
        const std::size_t f = free_cols[c];
        ns.at(f, c) = 1;
        for (std::size_t r = 0; r < rows_.size(); ++r)
            ns.at(pivots_[r], c) = -rows_[r][f];
    }
    return ns;
}

} // namespace flagcat
