#pragma once

#include "flagcat/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace flagcat {

enum class VarFamily { X, Xi, Eps, Y, XHat, YHat };

/* A named generator with its even cohomological degree.  x_{j,n} and
 * y_{j,n} carry a weight label n for printing; xi/eps/hat variables do not. */
struct GradedVariable {
    VarFamily family;
    int index;       // the j in x_{j,n}, xi_j, ...
    int wlabel;      // printing label n for x/y families
    int degree;      // even, positive

    std::string name() const;
    bool operator==(const GradedVariable& o) const
    {
        return family == o.family && index == o.index && wlabel == o.wlabel && degree == o.degree;
    }
};

GradedVariable var_x(int j, int n);
GradedVariable var_y(int j, int n);
GradedVariable var_xi(int j);
GradedVariable var_eps(int j);
GradedVariable var_xhat(int j);
GradedVariable var_yhat(int j);

/* Ordered list of variables of a polynomial ring.  Monomials are dense
 * exponent vectors against this table. */
class VarTable {
public:
    VarTable() = default;
    explicit VarTable(std::vector<GradedVariable> vars);

    std::size_t size() const { return vars_.size(); }
    const GradedVariable& var(std::size_t i) const { return vars_[i]; }
    const std::vector<GradedVariable>& vars() const { return vars_; }

    // Index of the t-th xi variable (t = 1..xi_count); SIZE_MAX if absent.
    std::size_t xi_position(int t) const;
    int xi_count() const { return xi_count_; }
    std::size_t find(VarFamily family, int index) const; // SIZE_MAX if absent

    int degree_of(const std::vector<int>& expo) const;
    bool operator==(const VarTable& o) const { return vars_ == o.vars_; }

private:
    std::vector<GradedVariable> vars_;
    int xi_count_ = 0;
};

using VarTablePtr = std::shared_ptr<const VarTable>;
using Monomial = std::vector<int>;

// Graded reverse lexicographic order, xi/eps block taking priority over x,
// x over y.  Returns true when a precedes b (a is the larger monomial).
bool mono_precedes(const VarTable& table, const Monomial& a, const Monomial& b);

/* Multivariate polynomial over the rationals with graded named variables.
 * Pure-value semantics; no stored zero coefficients. */
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(VarTablePtr table) : table_(std::move(table)) {}
    MultiPoly(VarTablePtr table, const Rational& c); // constant
    static MultiPoly monomial(VarTablePtr table, Monomial m, const Rational& c = Rational(1));
    static MultiPoly variable(VarTablePtr table, std::size_t var_index);

    const VarTablePtr& table() const { return table_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    void set_term(const Monomial& m, const Rational& c);
    Rational coeff(const Monomial& m) const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly scaled(const Rational& c) const;
    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    bool is_homogeneous(int* degree_out = nullptr) const;
    int max_degree() const; // 0 on zero polynomial
    MultiPoly component(int degree) const;

    std::string str() const;

private:
    VarTablePtr table_;
    std::map<Monomial, Rational> terms_;
};

// Exchange xi_i and xi_{i+1} (1-based i within the xi block); involution.
MultiPoly transpose_xi(int i, const MultiPoly& f);

// Divided difference (f - s_i f)/(xi_i - xi_{i+1}); exact by construction.
MultiPoly divided_difference(int i, const MultiPoly& f);
MultiPoly divided_difference_word(const std::vector<int>& word, const MultiPoly& f);

// Fixed reduced word (1)(21)(321)... for the longest element of S_a.
std::vector<int> longest_word(int a);

// e_j(xi_1..xi_a) inside the given table (which must hold >= a xi variables).
MultiPoly elementary_symmetric(int j, int a, VarTablePtr table);

// Standalone table of a xi variables, for operator-level checks.
VarTablePtr xi_table(int a);

bool symmetric_in_xi(const MultiPoly& f, int i);
bool fully_symmetric_in_xi(const MultiPoly& f);

struct NilHeckeReport {
    bool pass = true;
    std::string detail; // first counterexample when pass is false
};

// Verifies the nilHecke relations on all xi-monomials of degree <= cutoff.
NilHeckeReport check_nilhecke_relations(int a, int degree_cutoff);

// Substitution homomorphism: variable i of f's table maps to images[i].
MultiPoly substitute(const MultiPoly& f, VarTablePtr target,
                     const std::vector<MultiPoly>& images);

// Parses "3*xi1^2*x_{1,0} - 1/2*xi2" style syntax against the table.
MultiPoly parse_poly(const std::string& text, VarTablePtr table);

// All exponent vectors of the given weighted degree, listed in mono order.
std::vector<Monomial> monomials_of_degree(const VarTable& table, int degree);

} // namespace flagcat
