#include "flagcat/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace flagcat {

std::string GradedVariable::name() const
{
    std::ostringstream os;
    switch (family) {
    case VarFamily::X:
        os << "x_{" << index << "," << wlabel << "}";
        break;
    case VarFamily::Y:
        os << "y_{" << index << "," << wlabel << "}";
        break;
    case VarFamily::Xi:
        os << "xi" << index;
        break;
    case VarFamily::Eps:
        os << "eps" << index;
        break;
    case VarFamily::XHat:
        os << "xhat" << index;
        break;
    case VarFamily::YHat:
        os << "yhat" << index;
        break;
    }
    return os.str();
}

GradedVariable var_x(int j, int n) { return {VarFamily::X, j, n, 2 * j}; }
GradedVariable var_y(int j, int n) { return {VarFamily::Y, j, n, 2 * j}; }
GradedVariable var_xi(int j) { return {VarFamily::Xi, j, 0, 2}; }
GradedVariable var_eps(int j) { return {VarFamily::Eps, j, 0, 2 * j}; }
GradedVariable var_xhat(int j) { return {VarFamily::XHat, j, 0, 2 * j}; }
GradedVariable var_yhat(int j) { return {VarFamily::YHat, j, 0, 2 * j}; }

VarTable::VarTable(std::vector<GradedVariable> vars) : vars_(std::move(vars))
{
    for (const auto& v : vars_)
        if (v.family == VarFamily::Xi)
            ++xi_count_;
}

std::size_t VarTable::xi_position(int t) const
{
    int seen = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].family == VarFamily::Xi && ++seen == t)
            return i;
    return SIZE_MAX;
}

std::size_t VarTable::find(VarFamily family, int index) const
{
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].family == family && vars_[i].index == index)
            return i;
    return SIZE_MAX;
}

int VarTable::degree_of(const std::vector<int>& expo) const
{
    int d = 0;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        d += expo[i] * vars_[i].degree;
    return d;
}

static int family_priority(VarFamily f)
{
    switch (f) {
    case VarFamily::Xi:
    case VarFamily::Eps:
        return 0;
    case VarFamily::X:
    case VarFamily::XHat:
        return 1;
    default:
        return 2;
    }
}

static std::vector<std::size_t> priority_positions(const VarTable& table)
{
    std::vector<std::size_t> pos(table.size());
    for (std::size_t i = 0; i < pos.size(); ++i)
        pos[i] = i;
    std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
        return family_priority(table.var(a).family) < family_priority(table.var(b).family);
    });
    return pos;
}

bool mono_precedes(const VarTable& table, const Monomial& a, const Monomial& b)
{
    int da = table.degree_of(a), db = table.degree_of(b);
    if (da != db)
        return da > db;
    auto pos = priority_positions(table);
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
        if (a[*it] != b[*it])
            return a[*it] < b[*it];
    }
    return false;
}

MultiPoly::MultiPoly(VarTablePtr table, const Rational& c) : table_(std::move(table))
{
    if (!flagcat::is_zero(c))
        terms_[Monomial(table_->size(), 0)] = c;
}

MultiPoly MultiPoly::monomial(VarTablePtr table, Monomial m, const Rational& c)
{
    MultiPoly p(table);
    if (m.size() != p.table_->size())
        throw std::logic_error("MultiPoly: exponent vector length mismatch");
    if (!flagcat::is_zero(c))
        p.terms_[std::move(m)] = c;
    return p;
}

MultiPoly MultiPoly::variable(VarTablePtr table, std::size_t var_index)
{
    Monomial m(table->size(), 0);
    m.at(var_index) = 1;
    return monomial(std::move(table), std::move(m));
}

void MultiPoly::set_term(const Monomial& m, const Rational& c)
{
    if (flagcat::is_zero(c))
        terms_.erase(m);
    else
        terms_[m] = c;
}

Rational MultiPoly::coeff(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const
{
    MultiPoly r = *this;
    if (r.table_ == nullptr)
        return o;
    for (const auto& [m, c] : o.terms_)
        r.set_term(m, r.coeff(m) + c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator-() const
{
    MultiPoly r(table_);
    for (const auto& [m, c] : terms_)
        r.terms_[m] = -c;
    return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const
{
    MultiPoly r(table_);
    if (flagcat::is_zero(c))
        return r;
    for (const auto& [m, k] : terms_)
        r.terms_[m] = k * c;
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const
{
    MultiPoly r(table_);
    Monomial prod(table_ ? table_->size() : 0);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) {
            for (std::size_t i = 0; i < prod.size(); ++i)
                prod[i] = m1[i] + m2[i];
            r.set_term(prod, r.coeff(prod) + c1 * c2);
        }
    return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

bool MultiPoly::is_homogeneous(int* degree_out) const
{
    if (terms_.empty()) {
        if (degree_out)
            *degree_out = 0;
        return true;
    }
    int d = table_->degree_of(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
        if (table_->degree_of(m) != d)
            return false;
    if (degree_out)
        *degree_out = d;
    return true;
}

int MultiPoly::max_degree() const
{
    int d = 0;
    for (const auto& [m, c] : terms_)
        d = std::max(d, table_->degree_of(m));
    return d;
}

MultiPoly MultiPoly::component(int degree) const
{
    MultiPoly r(table_);
    for (const auto& [m, c] : terms_)
        if (table_->degree_of(m) == degree)
            r.terms_[m] = c;
    return r;
}

std::string MultiPoly::str() const
{
    if (terms_.empty())
        return "0";
    std::vector<const Monomial*> order;
    for (const auto& [m, c] : terms_)
        order.push_back(&m);
    std::sort(order.begin(), order.end(), [&](const Monomial* a, const Monomial* b) {
        return mono_precedes(*table_, *a, *b);
    });
    std::ostringstream os;
    bool first = true;
    for (const Monomial* m : order) {
        Rational c = terms_.at(*m);
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
        bool any_var = false;
        std::ostringstream vars;
        for (std::size_t i : priority_positions(*table_)) {
            if ((*m)[i] == 0)
                continue;
            if (any_var)
                vars << "*";
            any_var = true;
            vars << table_->var(i).name();
            if ((*m)[i] > 1)
                vars << "^" << (*m)[i];
        }
        if (!any_var)
            os << c.get_str();
        else if (c == 1)
            os << vars.str();
        else
            os << c.get_str() << "*" << vars.str();
    }
    return os.str();
}

MultiPoly transpose_xi(int i, const MultiPoly& f)
{
    const VarTable& t = *f.table();
    std::size_t p = t.xi_position(i), q = t.xi_position(i + 1);
    if (p == SIZE_MAX || q == SIZE_MAX)
        throw std::invalid_argument("transpose_xi: index out of range");
    MultiPoly r(f.table());
    Monomial m2;
    for (const auto& [m, c] : f.terms()) {
        m2 = m;
        std::swap(m2[p], m2[q]);
        r.set_term(m2, r.coeff(m2) + c);
    }
    return r;
}

MultiPoly divided_difference(int i, const MultiPoly& f)
{
    const VarTable& t = *f.table();
    std::size_t p = t.xi_position(i), q = t.xi_position(i + 1);
    if (p == SIZE_MAX || q == SIZE_MAX)
        throw std::invalid_argument("divided_difference: index out of range");
    // Termwise: (x^a y^b - x^b y^a)/(x - y) = sum_{t=0}^{a-b-1} x^{b+t} y^{a-1-t}
    // for a > b, antisymmetric in (a, b); everything else is a spectator.
    MultiPoly r(f.table());
    Monomial m2;
    for (const auto& [m, c] : f.terms()) {
        int a = m[p], b = m[q];
        if (a == b)
            continue;
        int sign = a > b ? 1 : -1;
        int lo = std::min(a, b), hi = std::max(a, b);
        m2 = m;
        for (int s = 0; s < hi - lo; ++s) {
            m2[p] = lo + s;
            m2[q] = hi - 1 - s;
            r.set_term(m2, r.coeff(m2) + c * sign);
        }
    }
    return r;
}

MultiPoly divided_difference_word(const std::vector<int>& word, const MultiPoly& f)
{
    MultiPoly r = f;
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        r = divided_difference(*it, r);
    return r;
}

std::vector<int> longest_word(int a)
{
    if (a < 1)
        throw std::invalid_argument("longest_word: a must be positive");
    std::vector<int> w;
    for (int block = 1; block < a; ++block)
        for (int i = block; i >= 1; --i)
            w.push_back(i);
    return w;
}

MultiPoly elementary_symmetric(int j, int a, VarTablePtr table)
{
    if (j < 0 || j > a)
        throw std::invalid_argument("elementary_symmetric: j outside [0,a]");
    if (table->xi_count() < a)
        throw std::invalid_argument("elementary_symmetric: table lacks xi variables");
    MultiPoly r(table);
    if (j == 0)
        return MultiPoly(table, Rational(1));
    std::vector<int> pick(j);
    // iterate over all j-subsets of {1..a}
    for (int t = 0; t < j; ++t)
        pick[t] = t + 1;
    while (true) {
        Monomial m(table->size(), 0);
        for (int t : pick)
            m[table->xi_position(t)] = 1;
        r.set_term(m, Rational(1));
        int t = j - 1;
        while (t >= 0 && pick[t] == a - (j - 1 - t))
            --t;
        if (t < 0)
            break;
        ++pick[t];
        for (int s = t + 1; s < j; ++s)
            pick[s] = pick[s - 1] + 1;
    }
    return r;
}

VarTablePtr xi_table(int a)
{
    std::vector<GradedVariable> vars;
    for (int i = 1; i <= a; ++i)
        vars.push_back(var_xi(i));
    return std::make_shared<VarTable>(std::move(vars));
}

bool symmetric_in_xi(const MultiPoly& f, int i) { return transpose_xi(i, f) == f; }

bool fully_symmetric_in_xi(const MultiPoly& f)
{
    for (int i = 1; i < f.table()->xi_count(); ++i)
        if (!symmetric_in_xi(f, i))
            return false;
    return true;
}

NilHeckeReport check_nilhecke_relations(int a, int degree_cutoff)
{
    if (a < 2)
        throw std::invalid_argument("check_nilhecke_relations: need a >= 2");
    NilHeckeReport rep;
    auto table = xi_table(a);
    auto fail = [&](const std::string& what, const MultiPoly& f) {
        rep.pass = false;
        rep.detail = what + " fails on " + f.str();
        return rep;
    };
    for (int deg = 0; deg <= degree_cutoff && rep.pass; deg += 2) {
        for (const Monomial& m : monomials_of_degree(*table, deg)) {
            MultiPoly f = MultiPoly::monomial(table, m);
            for (int i = 1; i < a; ++i) {
                if (!divided_difference(i, divided_difference(i, f)).is_zero())
                    return fail("dd_i^2 = 0", f);
                MultiPoly xi_i = MultiPoly::variable(table, table->xi_position(i));
                MultiPoly xi_i1 = MultiPoly::variable(table, table->xi_position(i + 1));
                if (divided_difference(i, xi_i * f) - xi_i1 * divided_difference(i, f) != f)
                    return fail("dd_i xi_i - xi_{i+1} dd_i = id", f);
            }
            for (int i = 1; i + 1 < a; ++i) {
                MultiPoly lhs = divided_difference(i, divided_difference(i + 1, divided_difference(i, f)));
                MultiPoly rhs = divided_difference(i + 1, divided_difference(i, divided_difference(i + 1, f)));
                if (lhs != rhs)
                    return fail("braid relation", f);
            }
            for (int i = 1; i < a; ++i)
                for (int j = i + 2; j < a; ++j) {
                    MultiPoly lhs = divided_difference(i, divided_difference(j, f));
                    MultiPoly rhs = divided_difference(j, divided_difference(i, f));
                    if (lhs != rhs)
                        return fail("far commutation", f);
                }
        }
    }
    return rep;
}

MultiPoly substitute(const MultiPoly& f, VarTablePtr target, const std::vector<MultiPoly>& images)
{
    if (images.size() != f.table()->size())
        throw std::invalid_argument("substitute: image count mismatch");
    MultiPoly r(target);
    for (const auto& [m, c] : f.terms()) {
        MultiPoly t(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int e = 0; e < m[i]; ++e)
                t = t * images[i];
        r = r + t;
    }
    return r;
}

static void enumerate_monomials(const VarTable& table, std::size_t pos, int remaining,
                                Monomial& cur, std::vector<Monomial>& out)
{
    if (pos == table.size()) {
        if (remaining == 0)
            out.push_back(cur);
        return;
    }
    const int d = table.var(pos).degree;
    for (int e = 0; e * d <= remaining; ++e) {
        cur[pos] = e;
        enumerate_monomials(table, pos + 1, remaining - e * d, cur, out);
    }
    cur[pos] = 0;
}

std::vector<Monomial> monomials_of_degree(const VarTable& table, int degree)
{
    std::vector<Monomial> out;
    if (degree < 0)
        return out;
    Monomial cur(table.size(), 0);
    enumerate_monomials(table, 0, degree, cur, out);
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
        return mono_precedes(table, a, b);
    });
    return out;
}

namespace {

struct Lexer {
    std::string s;
    std::size_t p = 0;
    void skip()
    {
        while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p])))
            ++p;
    }
    bool eof()
    {
        skip();
        return p >= s.size();
    }
    char peek()
    {
        skip();
        return p < s.size() ? s[p] : '\0';
    }
    char get()
    {
        skip();
        return s[p++];
    }
};

Rational parse_number(Lexer& lx)
{
    lx.skip();
    std::string num;
    while (lx.p < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.p])))
        num += lx.s[lx.p++];
    if (num.empty())
        throw std::invalid_argument("parse_poly: expected number");
    if (lx.peek() == '/') {
        lx.get();
        std::string den;
        while (lx.p < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.p])))
            den += lx.s[lx.p++];
        if (den.empty())
            throw std::invalid_argument("parse_poly: expected denominator");
        Rational r(num + "/" + den);
        r.canonicalize();
        return r;
    }
    return Rational(num);
}

int parse_int(Lexer& lx)
{
    lx.skip();
    bool neg = false;
    if (lx.peek() == '-') {
        lx.get();
        neg = true;
    }
    std::string num;
    while (lx.p < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.p])))
        num += lx.s[lx.p++];
    if (num.empty())
        throw std::invalid_argument("parse_poly: expected integer");
    int v = std::stoi(num);
    return neg ? -v : v;
}

MultiPoly parse_factor(Lexer& lx, const VarTablePtr& table)
{
    lx.skip();
    if (std::isdigit(static_cast<unsigned char>(lx.peek())))
        return MultiPoly(table, parse_number(lx));
    std::string word;
    while (lx.p < lx.s.size() && std::isalpha(static_cast<unsigned char>(lx.s[lx.p])))
        word += lx.s[lx.p++];
    std::size_t vi = SIZE_MAX;
    if (word == "x" || word == "y") {
        if (lx.get() != '_' || lx.get() != '{')
            throw std::invalid_argument("parse_poly: expected x_{j,n}");
        int j = parse_int(lx);
        if (lx.get() != ',')
            throw std::invalid_argument("parse_poly: expected comma in x_{j,n}");
        int n = parse_int(lx);
        if (lx.get() != '}')
            throw std::invalid_argument("parse_poly: expected closing brace");
        vi = table->find(word == "x" ? VarFamily::X : VarFamily::Y, j);
        if (vi != SIZE_MAX && table->var(vi).wlabel != n)
            throw std::invalid_argument("parse_poly: weight label mismatch for " + word);
    } else {
        VarFamily fam;
        if (word == "xi")
            fam = VarFamily::Xi;
        else if (word == "eps")
            fam = VarFamily::Eps;
        else if (word == "xhat")
            fam = VarFamily::XHat;
        else if (word == "yhat")
            fam = VarFamily::YHat;
        else
            throw std::invalid_argument("parse_poly: unknown variable '" + word + "'");
        vi = table->find(fam, parse_int(lx));
    }
    if (vi == SIZE_MAX)
        throw std::invalid_argument("parse_poly: variable not in ring");
    MultiPoly v = MultiPoly::variable(table, vi);
    if (lx.peek() == '^') {
        lx.get();
        int e = parse_int(lx);
        if (e < 0)
            throw std::invalid_argument("parse_poly: negative exponent");
        MultiPoly r(table, Rational(1));
        for (int t = 0; t < e; ++t)
            r = r * v;
        return r;
    }
    return v;
}

} // namespace

MultiPoly parse_poly(const std::string& text, VarTablePtr table)
{
    Lexer lx{text};
    MultiPoly result(table);
    bool first = true;
    while (!lx.eof()) {
        int sign = 1;
        if (lx.peek() == '+' || lx.peek() == '-') {
            if (lx.get() == '-')
                sign = -1;
        } else if (!first) {
            throw std::invalid_argument("parse_poly: expected + or - between terms");
        }
        MultiPoly term(table, Rational(sign));
        term = term * parse_factor(lx, table);
        while (lx.peek() == '*') {
            lx.get();
            term = term * parse_factor(lx, table);
        }
        result = result + term;
        first = false;
    }
    return result;
}

} // namespace flagcat
