#pragma once

#include "flagcat/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace flagcat {

/* Laurent polynomials in q with exact rational coefficients.  These carry
 * all graded dimensions, multiplicity polynomials and the q-combinatorial
 * quantities of the engine.  Values are immutable in spirit: every
 * operation returns a fresh polynomial and never stores zero coefficients. */
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(const Rational& c, int exponent = 0);

    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly one() { return LaurentPoly(Rational(1)); }
    static LaurentPoly q_power(int s) { return LaurentPoly(Rational(1), s); }

    bool is_zero() const { return coeffs_.empty(); }
    const std::map<int, Rational>& coeffs() const { return coeffs_; }
    Rational coeff(int exponent) const;
    void set_coeff(int exponent, const Rational& c);

    int min_exp() const; // 0 on the zero polynomial
    int max_exp() const;

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    bool operator==(const LaurentPoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly shifted(int s) const; // multiply by q^s
    LaurentPoly bar() const;          // q -> q^{-1}
    bool bar_invariant() const { return *this == bar(); }
    bool nonneg_coeffs() const;
    bool palindromic_about(int center2) const; // symmetric about exponent center2/2

    // Exact division; throws std::logic_error when the remainder is nonzero.
    LaurentPoly divide_exact(const LaurentPoly& d) const;

    Rational eval_at_one() const;

    // Canonical text, decreasing exponents: "q^2 + 2 + q^-2".
    std::string str() const;
    // JSON form: [[exponent, coefficient], ...] sorted by exponent.
    std::string json() const;

private:
    std::map<int, Rational> coeffs_;
};

// Balanced quantum integer [a] = (q^a - q^-a)/(q - q^-1); a >= 0.
LaurentPoly qint_balanced(int a);
// Balanced factorial [a]! = [a][a-1]...[1]; [0]! = 1.
LaurentPoly qfact_balanced(int a);
// Balanced Gaussian binomial [n]!/([k]![n-k]!) computed by exact division.
LaurentPoly qbin_balanced(int n, int k);

// Unbalanced {a}_{q^2} = 1 + q^2 + ... + q^{2(a-1)}.
LaurentPoly qnat_q2(int a);
LaurentPoly qfact_q2(int a);
LaurentPoly qbin_q2(int n, int k);

} // namespace flagcat
