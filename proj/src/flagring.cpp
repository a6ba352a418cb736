#include "flagcat/flagring.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace flagcat {

bool FlagSequence::strictly_monotone() const
{
    if (entries.empty())
        return false;
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        inc = inc && entries[i] > entries[i - 1];
        dec = dec && entries[i] < entries[i - 1];
    }
    return inc || dec;
}

bool FlagSequence::in_range() const
{
    for (int k : entries)
        if (k < 0 || k > N)
            return false;
    return true;
}

FlagSequence FlagSequence::sorted() const
{
    FlagSequence s = *this;
    std::sort(s.entries.begin(), s.entries.end());
    return s;
}

std::string FlagSequence::str() const
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < entries.size(); ++i)
        os << (i ? "," : "") << entries[i];
    os << ";" << N << ")";
    return os.str();
}

namespace {

// Coefficient list of a Chern-style series 1 + g_1 t + g_2 t^2 + ...
using Series = std::vector<MultiPoly>;

Series series_product(const Series& a, const Series& b, const VarTablePtr& table)
{
    Series r(a.size() + b.size() - 1, MultiPoly(table));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

} // namespace

FlagRing::FlagRing(const FlagSequence& sorted_seq) : seq_(sorted_seq)
{
    if (!seq_.in_range()) {
        zero_ = true;
        table_ = std::make_shared<VarTable>(std::vector<GradedVariable>{});
        return;
    }
    const int N = seq_.N;
    const auto& ks = seq_.entries;
    const int k_lo = ks.front(), k_hi = ks.back();
    const int n_lo = 2 * k_lo - N, n_hi = 2 * k_hi - N;

    std::vector<GradedVariable> vars;
    for (int j = 1; j <= k_lo; ++j) {
        vars.push_back(var_x(j, n_lo));
        x_positions_.push_back(static_cast<int>(vars.size()) - 1);
    }
    int xi_next = 1, eps_next = 1;
    for (std::size_t i = 1; i < ks.size(); ++i) {
        const int step = ks[i] - ks[i - 1];
        std::size_t begin = vars.size();
        if (step == 1) {
            vars.push_back(var_xi(xi_next++));
        } else {
            for (int j = 1; j <= step; ++j) {
                GradedVariable v = var_eps(eps_next++);
                v.degree = 2 * j;
                vars.push_back(v);
            }
        }
        mid_blocks_.emplace_back(begin, vars.size());
    }
    for (int j = 1; j <= N - k_hi; ++j) {
        vars.push_back(var_y(j, n_hi));
        y_positions_.push_back(static_cast<int>(vars.size()) - 1);
    }
    table_ = std::make_shared<VarTable>(std::move(vars));

    // Defining ideal: homogeneous t-components of (x series)(mid series)(y series) = 1.
    Series prod{MultiPoly(table_, Rational(1))};
    Series xs{MultiPoly(table_, Rational(1))};
    for (int p : x_positions_)
        xs.push_back(MultiPoly::variable(table_, p));
    prod = series_product(prod, xs, table_);
    for (auto [b, e] : mid_blocks_) {
        Series mid{MultiPoly(table_, Rational(1))};
        for (std::size_t p = b; p < e; ++p)
            mid.push_back(MultiPoly::variable(table_, p));
        prod = series_product(prod, mid, table_);
    }
    Series ys{MultiPoly(table_, Rational(1))};
    for (int p : y_positions_)
        ys.push_back(MultiPoly::variable(table_, p));
    prod = series_product(prod, ys, table_);
    for (std::size_t j = 1; j < prod.size(); ++j)
        if (!prod[j].is_zero())
            relations_.push_back(prod[j]);

    // Top nonzero degree is twice the complex dimension, from the jump sizes.
    std::vector<int> jumps{k_lo};
    for (std::size_t i = 1; i < ks.size(); ++i)
        jumps.push_back(ks[i] - ks[i - 1]);
    jumps.push_back(N - k_hi);
    int dimc = 0;
    for (std::size_t i = 0; i < jumps.size(); ++i)
        for (std::size_t j = i + 1; j < jumps.size(); ++j)
            dimc += jumps[i] * jumps[j];
    top_degree_ = 2 * dimc;
}

FlagRingPtr FlagRing::make(const FlagSequence& seq)
{
    if (!seq.strictly_monotone())
        throw std::invalid_argument("FlagRing: invalid sequence " + seq.str());
    static std::map<std::pair<int, std::vector<int>>, FlagRingPtr> registry;
    FlagSequence s = seq.sorted();
    auto key = std::make_pair(s.N, s.entries);
    auto it = registry.find(key);
    if (it != registry.end())
        return it->second;
    FlagRingPtr r(new FlagRing(s));
    registry.emplace(key, r);
    return r;
}

const FlagRing::DegreeData& FlagRing::degree_data(int degree) const
{
    if (degree < 0)
        throw std::logic_error("FlagRing: negative degree");
    if (cache_.size() <= static_cast<std::size_t>(degree))
        cache_.resize(degree + 1);
    auto& slot = cache_[degree];
    if (slot)
        return *slot;
    DegreeData data;
    if (!zero_) {
        // Ascending monomial order: elimination consumes the smallest
        // monomial of each relation, so y-monomials reduce to x/xi ones.
        data.monomials = monomials_of_degree(*table_, degree);
        std::reverse(data.monomials.begin(), data.monomials.end());
        data.ideal = std::make_unique<Echelon>(data.monomials.size());
        std::map<Monomial, std::size_t> index;
        for (std::size_t i = 0; i < data.monomials.size(); ++i)
            index[data.monomials[i]] = i;
        for (const MultiPoly& rel : relations_) {
            int rd = 0;
            rel.is_homogeneous(&rd);
            if (rd > degree)
                continue;
            for (const Monomial& m : monomials_of_degree(*table_, degree - rd)) {
                MultiPoly row = MultiPoly::monomial(table_, m) * rel;
                QVec v(data.monomials.size(), Rational(0));
                for (const auto& [mono, c] : row.terms())
                    v[index.at(mono)] = c;
                data.ideal->add_row(std::move(v));
            }
        }
        data.basis_cols = data.ideal->free_columns();
    } else {
        data.ideal = std::make_unique<Echelon>(0);
    }
    slot = std::move(data);
    return *slot;
}

int FlagRing::dim(int degree) const
{
    if (zero_ || degree < 0 || degree % 2 != 0 || degree > top_degree_)
        return 0;
    return static_cast<int>(degree_data(degree).basis_cols.size());
}

std::vector<MultiPoly> FlagRing::basis(int degree) const
{
    std::vector<MultiPoly> out;
    if (dim(degree) == 0)
        return out;
    const DegreeData& d = degree_data(degree);
    for (std::size_t col : d.basis_cols)
        out.push_back(MultiPoly::monomial(table_, d.monomials[col]));
    return out;
}

LaurentPoly FlagRing::graded_dimension() const
{
    LaurentPoly g;
    if (zero_)
        return g;
    for (int d = 0; d <= top_degree_; d += 2)
        g.set_coeff(d, Rational(dim(d)));
    return g;
}

Rational FlagRing::total_dimension() const { return graded_dimension().eval_at_one(); }

MultiPoly FlagRing::normal_form(const MultiPoly& p) const
{
    if (zero_)
        return MultiPoly(table_);
    if (p.table() != table_)
        throw std::invalid_argument("FlagRing: polynomial from a different ring");
    MultiPoly out(table_);
    for (int d = 0; d <= p.max_degree(); d += 2) {
        MultiPoly comp = p.component(d);
        if (comp.is_zero())
            continue;
        if (d > top_degree_)
            continue; // vanishes above the top degree
        const DegreeData& data = degree_data(d);
        QVec v(data.monomials.size(), Rational(0));
        std::map<Monomial, std::size_t> index;
        for (std::size_t i = 0; i < data.monomials.size(); ++i)
            index[data.monomials[i]] = i;
        for (const auto& [mono, c] : comp.terms())
            v[index.at(mono)] = c;
        data.ideal->reduce(v);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!flagcat::is_zero(v[i]))
                out = out + MultiPoly::monomial(table_, data.monomials[i], v[i]);
    }
    return out;
}

bool FlagRing::is_basis_supported(const MultiPoly& p) const
{
    return normal_form(p) == p;
}

QVec FlagRing::coords(const MultiPoly& p, int degree) const
{
    QVec v(dim(degree), Rational(0));
    MultiPoly nf = normal_form(p.component(degree));
    if (nf.is_zero())
        return v;
    const DegreeData& data = degree_data(degree);
    std::map<Monomial, std::size_t> pos;
    for (std::size_t i = 0; i < data.basis_cols.size(); ++i)
        pos[data.monomials[data.basis_cols[i]]] = i;
    for (const auto& [mono, c] : nf.terms())
        v[pos.at(mono)] = c;
    return v;
}

MultiPoly FlagRing::from_coords(const QVec& v, int degree) const
{
    const DegreeData& data = degree_data(degree);
    if (v.size() != data.basis_cols.size())
        throw std::logic_error("FlagRing: coordinate length mismatch");
    MultiPoly p(table_);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!flagcat::is_zero(v[i]))
            p = p + MultiPoly::monomial(table_, data.monomials[data.basis_cols[i]], v[i]);
    return p;
}

QMatrix FlagRing::mult_matrix(const MultiPoly& f, int degree) const
{
    int fd = 0;
    if (!f.is_homogeneous(&fd))
        throw std::invalid_argument("FlagRing: multiplication by inhomogeneous element");
    QMatrix m(dim(degree + fd), dim(degree));
    const auto bs = basis(degree);
    for (std::size_t c = 0; c < bs.size(); ++c) {
        QVec col = coords(f * bs[c], degree + fd);
        for (std::size_t r = 0; r < col.size(); ++r)
            m.at(r, c) = col[r];
    }
    return m;
}

FlagRingPtr FlagRing::corner_ring_lo() const
{
    return FlagRing::make({{corner_lo()}, N()});
}

FlagRingPtr FlagRing::corner_ring_hi() const
{
    return FlagRing::make({{corner_hi()}, N()});
}

MultiPoly FlagRing::corner_image_lo(const GradedVariable& v) const
{
    // H_{k_lo;N} -> this: x_j maps to the x block, y_l to the l-th
    // coefficient of (mid series)(y series), the inverse of the x series.
    if (zero_)
        return MultiPoly(table_);
    if (v.family == VarFamily::X) {
        std::size_t p = table_->find(VarFamily::X, v.index);
        if (p == SIZE_MAX)
            throw std::invalid_argument("corner_image_lo: no such x generator");
        return MultiPoly::variable(table_, p);
    }
    if (v.family != VarFamily::Y)
        throw std::invalid_argument("corner_image_lo: not a corner generator");
    Series prod{MultiPoly(table_, Rational(1))};
    for (auto [b, e] : mid_blocks_) {
        Series mid{MultiPoly(table_, Rational(1))};
        for (std::size_t p = b; p < e; ++p)
            mid.push_back(MultiPoly::variable(table_, p));
        prod = series_product(prod, mid, table_);
    }
    Series ys{MultiPoly(table_, Rational(1))};
    for (int p : y_positions_)
        ys.push_back(MultiPoly::variable(table_, p));
    prod = series_product(prod, ys, table_);
    if (static_cast<std::size_t>(v.index) < prod.size())
        return prod[v.index];
    return MultiPoly(table_);
}

MultiPoly FlagRing::corner_image_hi(const GradedVariable& v) const
{
    if (zero_)
        return MultiPoly(table_);
    if (v.family == VarFamily::Y) {
        std::size_t p = table_->find(VarFamily::Y, v.index);
        if (p == SIZE_MAX)
            throw std::invalid_argument("corner_image_hi: no such y generator");
        return MultiPoly::variable(table_, p);
    }
    if (v.family != VarFamily::X)
        throw std::invalid_argument("corner_image_hi: not a corner generator");
    // coefficient of t^j in (x series)(mid series)
    Series prod{MultiPoly(table_, Rational(1))};
    Series xs{MultiPoly(table_, Rational(1))};
    for (int p : x_positions_)
        xs.push_back(MultiPoly::variable(table_, p));
    prod = series_product(prod, xs, table_);
    for (auto [b, e] : mid_blocks_) {
        Series mid{MultiPoly(table_, Rational(1))};
        for (std::size_t p = b; p < e; ++p)
            mid.push_back(MultiPoly::variable(table_, p));
        prod = series_product(prod, mid, table_);
    }
    if (static_cast<std::size_t>(v.index) < prod.size())
        return prod[v.index];
    return MultiPoly(table_);
}

MultiPoly FlagRing::poly_from_string(const std::string& text) const
{
    return parse_poly(text, table_);
}

MultiPoly FlagRing::var(VarFamily family, int index) const
{
    std::size_t p = table_->find(family, index);
    if (p == SIZE_MAX)
        throw std::invalid_argument("FlagRing: generator not present");
    return MultiPoly::variable(table_, p);
}

RingElement::RingElement(FlagRingPtr r, const MultiPoly& raw) : ring(std::move(r))
{
    value = ring->normal_form(raw);
}

RingElement RingElement::operator+(const RingElement& o) const
{
    if (ring != o.ring)
        throw std::invalid_argument("RingElement: mixed rings");
    return {ring, value + o.value};
}

RingElement RingElement::operator*(const RingElement& o) const
{
    if (ring != o.ring)
        throw std::invalid_argument("RingElement: mixed rings");
    return {ring, value * o.value};
}

RingElement RingElement::operator-() const { return {ring, -value}; }

bool RingElement::operator==(const RingElement& o) const
{
    return ring == o.ring && value == o.value;
}

MultiPoly psi_ring(const FlagRing& big, const FlagRing& small, const MultiPoly& p)
{
    if (big.seq().entries.size() != small.seq().entries.size())
        throw std::invalid_argument("psi_ring: sequence length mismatch");
    const int twop = big.N() - small.N();
    if (twop < 0 || twop % 2 != 0)
        throw std::invalid_argument("psi_ring: N must decrease by an even step");
    const int pshift = twop / 2;
    for (std::size_t i = 0; i < big.seq().entries.size(); ++i)
        if (big.seq().entries[i] - pshift != small.seq().entries[i])
            throw std::invalid_argument("psi_ring: weight mismatch");
    if (small.is_zero_ring() || big.is_zero_ring())
        return MultiPoly(small.table());
    if (p.table() != big.table())
        throw std::invalid_argument("psi_ring: element not from the source ring");
    std::vector<MultiPoly> images;
    for (const GradedVariable& v : big.table()->vars()) {
        std::size_t pos = small.table()->find(v.family, v.index);
        if (pos == SIZE_MAX)
            images.push_back(MultiPoly(small.table())); // truncated generator
        else
            images.push_back(MultiPoly::variable(small.table(), pos));
    }
    return small.normal_form(substitute(p, small.table(), images));
}

RingElement psi_ring(int N_big, int N_small, const RingElement& e)
{
    if (!e.ring->is_grassmannian())
        throw std::invalid_argument("psi_ring: expected a Grassmannian element");
    if (e.ring->N() != N_big)
        throw std::invalid_argument("psi_ring: element does not live at level N_big");
    const int twop = N_big - N_small;
    if (twop < 0 || twop % 2 != 0)
        throw std::invalid_argument("psi_ring: N_big - N_small must be an even non-negative step");
    const int k_small = e.ring->corner_lo() - twop / 2;
    FlagRingPtr target = FlagRing::make({{k_small}, N_small});
    return {target, psi_ring(*e.ring, *target, e.value)};
}

MultiPoly thick_include(const FlagRing& thick, const FlagRing& iterated, const MultiPoly& p)
{
    if (p.table() != thick.table())
        throw std::invalid_argument("thick_include: element not from the thick ring");
    const int a = iterated.table()->xi_count();
    std::vector<MultiPoly> images;
    for (const GradedVariable& v : thick.table()->vars()) {
        if (v.family == VarFamily::Eps) {
            images.push_back(elementary_symmetric(v.degree / 2, a, iterated.table()));
        } else {
            std::size_t pos = iterated.table()->find(v.family, v.index);
            if (pos == SIZE_MAX)
                throw std::invalid_argument("thick_include: ring shape mismatch");
            images.push_back(MultiPoly::variable(iterated.table(), pos));
        }
    }
    return iterated.normal_form(substitute(p, iterated.table(), images));
}

MultiPoly symmetric_to_elementary(const MultiPoly& sym, VarTablePtr target)
{
    const VarTable& src = *sym.table();
    const int a = src.xi_count();
    std::vector<std::size_t> xi_pos;
    for (int i = 1; i <= a; ++i)
        xi_pos.push_back(src.xi_position(i));

    MultiPoly rest = sym;
    MultiPoly out(target);
    auto xi_lex_less = [&](const Monomial& m1, const Monomial& m2) {
        for (std::size_t t = 0; t < xi_pos.size(); ++t) {
            if (m1[xi_pos[t]] != m2[xi_pos[t]])
                return m1[xi_pos[t]] < m2[xi_pos[t]];
        }
        return m1 < m2;
    };
    while (!rest.is_zero()) {
        // lex-dominant term; for a symmetric polynomial its xi exponents are
        // weakly decreasing and it is the lead of e_{lambda'} (lambda the
        // exponent partition)
        auto lead = rest.terms().begin();
        for (auto it = rest.terms().begin(); it != rest.terms().end(); ++it)
            if (xi_lex_less(lead->first, it->first))
                lead = it;
        Monomial lambda_mono = lead->first;
        Rational c = lead->second;
        std::vector<int> lambda;
        for (std::size_t t = 0; t < xi_pos.size(); ++t)
            lambda.push_back(lambda_mono[xi_pos[t]]);
        for (std::size_t t = 1; t < lambda.size(); ++t)
            if (lambda[t] > lambda[t - 1])
                throw std::logic_error("symmetric_to_elementary: input is not symmetric");
        // conjugate partition mu: mu_j = #{i : lambda_i >= j}
        std::vector<int> mu;
        for (int j = 1; lambda.empty() ? false : j <= lambda[0]; ++j) {
            int cnt = 0;
            for (int part : lambda)
                if (part >= j)
                    ++cnt;
            mu.push_back(cnt);
        }
        MultiPoly eprod_src(sym.table(), Rational(1));
        MultiPoly eprod_dst(target, Rational(1));
        for (int part : mu) {
            eprod_src = eprod_src * elementary_symmetric(part, a, sym.table());
            std::size_t pos = target->find(VarFamily::Eps, part);
            if (pos == SIZE_MAX)
                throw std::invalid_argument("symmetric_to_elementary: missing eps generator");
            eprod_dst = eprod_dst * MultiPoly::variable(target, pos);
        }
        // carry the x/y spectator part of the lead term along
        Monomial spect_src(src.size(), 0), spect_dst(target->size(), 0);
        for (std::size_t i = 0; i < src.size(); ++i) {
            if (src.var(i).family == VarFamily::Xi)
                continue;
            if (lambda_mono[i] == 0)
                continue;
            std::size_t pos = target->find(src.var(i).family, src.var(i).index);
            if (pos == SIZE_MAX)
                throw std::invalid_argument("symmetric_to_elementary: spectator variable missing");
            spect_src[i] = lambda_mono[i];
            spect_dst[pos] = lambda_mono[i];
        }
        rest = rest - MultiPoly::monomial(sym.table(), spect_src, c) * eprod_src;
        out = out + MultiPoly::monomial(target, spect_dst, c) * eprod_dst;
    }
    return out;
}

MultiPoly thick_retract(const FlagRing& iterated, const FlagRing& thick, const MultiPoly& p)
{
    if (p.table() != iterated.table())
        throw std::invalid_argument("thick_retract: element not from the iterated ring");
    const int a = iterated.table()->xi_count();
    MultiPoly dd = divided_difference_word(longest_word(a), iterated.normal_form(p));
    return thick.normal_form(symmetric_to_elementary(dd, thick.table()));
}

FlagRingPtr grassmannian(int k, int N) { return FlagRing::make({{k}, N}); }

FlagRingPtr iterated_ring(int k, int a, int N)
{
    std::vector<int> e;
    for (int i = 0; i <= a; ++i)
        e.push_back(k + i);
    return FlagRing::make({e, N});
}

FlagRingPtr thick_ring(int k, int a, int N)
{
    if (a == 0)
        return grassmannian(k, N);
    return FlagRing::make({{k, k + a}, N});
}

} // namespace flagcat
