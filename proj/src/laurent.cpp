#include "flagcat/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace flagcat {

LaurentPoly::LaurentPoly(const Rational& c, int exponent)
{
    if (!flagcat::is_zero(c))
        coeffs_[exponent] = c;
}

Rational LaurentPoly::coeff(int exponent) const
{
    auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void LaurentPoly::set_coeff(int exponent, const Rational& c)
{
    if (flagcat::is_zero(c))
        coeffs_.erase(exponent);
    else
        coeffs_[exponent] = c;
}

int LaurentPoly::min_exp() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
int LaurentPoly::max_exp() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const
{
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.coeffs_)
        r.set_coeff(e, r.coeff(e) + c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const
{
    LaurentPoly r = *this;
    for (const auto& [e, c] : o.coeffs_)
        r.set_coeff(e, r.coeff(e) - c);
    return r;
}

LaurentPoly LaurentPoly::operator-() const
{
    LaurentPoly r;
    for (const auto& [e, c] : coeffs_)
        r.coeffs_[e] = -c;
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const
{
    LaurentPoly r;
    for (const auto& [e1, c1] : coeffs_)
        for (const auto& [e2, c2] : o.coeffs_)
            r.set_coeff(e1 + e2, r.coeff(e1 + e2) + c1 * c2);
    return r;
}

LaurentPoly LaurentPoly::shifted(int s) const
{
    LaurentPoly r;
    for (const auto& [e, c] : coeffs_)
        r.coeffs_[e + s] = c;
    return r;
}

LaurentPoly LaurentPoly::bar() const
{
    LaurentPoly r;
    for (const auto& [e, c] : coeffs_)
        r.coeffs_[-e] = c;
    return r;
}

bool LaurentPoly::nonneg_coeffs() const
{
    for (const auto& [e, c] : coeffs_)
        if (sgn(c) < 0)
            return false;
    return true;
}

bool LaurentPoly::palindromic_about(int center2) const
{
    for (const auto& [e, c] : coeffs_)
        if (coeff(center2 - e) != c)
            return false;
    return true;
}

LaurentPoly LaurentPoly::divide_exact(const LaurentPoly& d) const
{
    if (d.is_zero())
        throw std::logic_error("LaurentPoly: division by zero");
    LaurentPoly rem = *this, quot;
    const int dtop = d.max_exp();
    const Rational dlead = d.coeff(dtop);
    while (!rem.is_zero()) {
        int rtop = rem.max_exp();
        Rational f = rem.coeff(rtop) / dlead;
        LaurentPoly t(f, rtop - dtop);
        quot = quot + t;
        rem = rem - t * d;
        if (!rem.is_zero() && rem.max_exp() >= rtop)
            throw std::logic_error("LaurentPoly: non-terminating division");
    }
    return quot;
}

Rational LaurentPoly::eval_at_one() const
{
    Rational s(0);
    for (const auto& [e, c] : coeffs_)
        s += c;
    return s;
}

std::string LaurentPoly::str() const
{
    if (coeffs_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        Rational c = it->second;
        if (first) {
            if (sgn(c) < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
            c = abs(c);
        }
        first = false;
        const int e = it->first;
        if (e == 0)
            os << c.get_str();
        else {
            if (c != 1)
                os << c.get_str() << "*";
            os << "q";
            if (e != 1)
                os << "^" << e;
        }
    }
    return os.str();
}

std::string LaurentPoly::json() const
{
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        if (!first)
            os << ",";
        first = false;
        os << "[" << e << "," << c.get_str() << "]";
    }
    os << "]";
    return os.str();
}

LaurentPoly qint_balanced(int a)
{
    if (a < 0)
        throw std::invalid_argument("qint_balanced: negative argument");
    LaurentPoly r;
    for (int i = 0; i < a; ++i)
        r.set_coeff(a - 1 - 2 * i, Rational(1));
    return r;
}

LaurentPoly qfact_balanced(int a)
{
    if (a < 0)
        throw std::invalid_argument("qfact_balanced: negative argument");
    LaurentPoly r = LaurentPoly::one();
    for (int i = 1; i <= a; ++i)
        r = r * qint_balanced(i);
    return r;
}

LaurentPoly qbin_balanced(int n, int k)
{
    if (k < 0 || k > n)
        throw std::invalid_argument("qbin_balanced: k outside [0,n]");
    return qfact_balanced(n).divide_exact(qfact_balanced(k) * qfact_balanced(n - k));
}

LaurentPoly qnat_q2(int a)
{
    if (a < 0)
        throw std::invalid_argument("qnat_q2: negative argument");
    LaurentPoly r;
    for (int i = 0; i < a; ++i)
        r.set_coeff(2 * i, Rational(1));
    return r;
}

LaurentPoly qfact_q2(int a)
{
    if (a < 0)
        throw std::invalid_argument("qfact_q2: negative argument");
    LaurentPoly r = LaurentPoly::one();
    for (int i = 1; i <= a; ++i)
        r = r * qnat_q2(i);
    return r;
}

LaurentPoly qbin_q2(int n, int k)
{
    if (k < 0 || k > n)
        throw std::invalid_argument("qbin_q2: k outside [0,n]");
    return qfact_q2(n).divide_exact(qfact_q2(k) * qfact_q2(n - k));
}

} // namespace flagcat
