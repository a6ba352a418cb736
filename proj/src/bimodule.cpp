#include "flagcat/bimodule.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace flagcat {

bool GradedBimodule::is_zero() const
{
    for (int d : dims)
        if (d != 0)
            return false;
    return true;
}

LaurentPoly GradedBimodule::graded_dims() const
{
    LaurentPoly g;
    for (int d = lo; d <= hi; ++d)
        if (dim(d) != 0)
            g.set_coeff(d, Rational(dim(d)));
    return g;
}

Rational GradedBimodule::total_dim() const { return graded_dims().eval_at_one(); }

QMatrix GradedBimodule::action(bool left_side, std::size_t gen, int d) const
{
    const FlagRingPtr& ring = left_side ? left : right;
    const int gdeg = ring->table()->var(gen).degree;
    if (d < lo || d > hi)
        return QMatrix(static_cast<std::size_t>(dim(d + gdeg)), static_cast<std::size_t>(dim(d)));
    const auto& bank = left_side ? act_left : act_right;
    return bank[gen][static_cast<std::size_t>(d - lo)];
}

QMatrix GradedBimodule::action_poly(bool left_side, const MultiPoly& p, int d, int pdeg) const
{
    int pd = 0;
    if (!p.is_homogeneous(&pd))
        throw std::invalid_argument("action_poly: inhomogeneous multiplier");
    if (p.is_zero())
        pd = pdeg >= 0 ? pdeg : 0;
    else if (pdeg >= 0 && pd != pdeg)
        throw std::invalid_argument("action_poly: degree mismatch");
    QMatrix acc(static_cast<std::size_t>(dim(d + pd)), static_cast<std::size_t>(dim(d)));
    const FlagRingPtr& ring = left_side ? left : right;
    for (const auto& [mono, c] : p.terms()) {
        QMatrix cur = QMatrix::identity(static_cast<std::size_t>(dim(d)));
        int cur_deg = d;
        for (std::size_t i = 0; i < mono.size(); ++i)
            for (int rep = 0; rep < mono[i]; ++rep) {
                cur = action(left_side, i, cur_deg) * cur;
                cur_deg += ring->table()->var(i).degree;
            }
        acc = acc + cur.scaled(c);
    }
    return acc;
}

void GradedBimodule::validate() const
{
    auto check_pair = [&](bool s1, std::size_t g1, bool s2, std::size_t g2) {
        const int e1 = (s1 ? left : right)->table()->var(g1).degree;
        const int e2 = (s2 ? left : right)->table()->var(g2).degree;
        for (int d = lo; d <= hi; ++d) {
            QMatrix a = action(s1, g1, d + e2) * action(s2, g2, d);
            QMatrix b = action(s2, g2, d + e1) * action(s1, g1, d);
            if (!(a == b))
                throw std::logic_error("GradedBimodule: actions do not commute in " + label);
        }
    };
    for (std::size_t g = 0; g < left->table()->size(); ++g)
        for (std::size_t h = 0; h < right->table()->size(); ++h)
            check_pair(true, g, false, h);
    for (std::size_t g = 0; g < left->table()->size(); ++g)
        for (std::size_t h = g + 1; h < left->table()->size(); ++h)
            check_pair(true, g, true, h);
    for (std::size_t g = 0; g < right->table()->size(); ++g)
        for (std::size_t h = g + 1; h < right->table()->size(); ++h)
            check_pair(false, g, false, h);
}

BimodPtr make_zero_bimodule(FlagRingPtr left, FlagRingPtr right, std::string label)
{
    auto m = std::make_shared<GradedBimodule>();
    m->left = std::move(left);
    m->right = std::move(right);
    m->lo = 0;
    m->hi = -1;
    m->label = std::move(label);
    return m;
}

BimodPtr shift_bimodule(const BimodPtr& m, int s)
{
    if (s == 0)
        return m;
    auto r = std::make_shared<GradedBimodule>(*m);
    r->lo += s;
    r->hi += s;
    if (r->free_data)
        for (int& fd : r->free_data->free_degrees)
            fd += s;
    r->label = m->label + "<" + std::to_string(s) + ">";
    return r;
}

BimodPtr direct_sum(const std::vector<BimodPtr>& parts)
{
    if (parts.empty())
        throw std::invalid_argument("direct_sum: empty list");
    auto r = std::make_shared<GradedBimodule>();
    r->left = parts.front()->left;
    r->right = parts.front()->right;
    int lo = parts.front()->lo, hi = parts.front()->hi;
    for (const auto& p : parts) {
        if (p->left != r->left || p->right != r->right)
            throw std::invalid_argument("direct_sum: mismatched corner rings");
        if (p->hi >= p->lo) {
            lo = std::min(lo, p->lo);
            hi = std::max(hi, p->hi);
        }
    }
    if (hi < lo) {
        r->lo = 0;
        r->hi = -1;
        return r;
    }
    r->lo = lo;
    r->hi = hi;
    r->dims.assign(static_cast<std::size_t>(hi - lo + 1), 0);
    for (int d = lo; d <= hi; ++d)
        for (const auto& p : parts)
            r->dims[static_cast<std::size_t>(d - lo)] += p->dim(d);
    auto build = [&](bool left_side) {
        const FlagRingPtr& ring = left_side ? r->left : r->right;
        std::vector<std::vector<QMatrix>> bank(ring->table()->size());
        for (std::size_t g = 0; g < ring->table()->size(); ++g) {
            const int e = ring->table()->var(g).degree;
            bank[g].resize(static_cast<std::size_t>(hi - lo + 1));
            for (int d = lo; d <= hi; ++d) {
                QMatrix blk(static_cast<std::size_t>(r->dim(d + e)),
                            static_cast<std::size_t>(r->dim(d)));
                std::size_t row0 = 0, col0 = 0;
                for (const auto& p : parts) {
                    QMatrix sub = p->action(left_side, g, d);
                    for (std::size_t i = 0; i < sub.rows(); ++i)
                        for (std::size_t j = 0; j < sub.cols(); ++j)
                            blk.at(row0 + i, col0 + j) = sub.at(i, j);
                    row0 += sub.rows();
                    col0 += sub.cols();
                }
                bank[g][static_cast<std::size_t>(d - lo)] = std::move(blk);
            }
        }
        return bank;
    };
    r->act_left = build(true);
    r->act_right = build(false);
    std::ostringstream os;
    for (std::size_t i = 0; i < parts.size(); ++i)
        os << (i ? " (+) " : "") << parts[i]->label;
    r->label = os.str();
    return r;
}

BimodPtr direct_sum_f(const BimodPtr& m, const LaurentPoly& f)
{
    if (!f.nonneg_coeffs())
        throw std::invalid_argument("direct_sum_f: negative multiplicity");
    if (f.is_zero())
        return make_zero_bimodule(m->left, m->right);
    std::vector<BimodPtr> parts;
    for (const auto& [a, c] : f.coeffs()) {
        if (!is_integer(c))
            throw std::invalid_argument("direct_sum_f: non-integer multiplicity");
        for (long i = 0; i < c.get_num().get_si(); ++i)
            parts.push_back(shift_bimodule(m, a));
    }
    return direct_sum(parts);
}

QMatrix BimoduleHom::mat(int d) const
{
    if (d < src->lo || d > src->hi)
        return QMatrix(static_cast<std::size_t>(dst->dim(d + degree)),
                       static_cast<std::size_t>(src->dim(d)));
    return mats[static_cast<std::size_t>(d - src->lo)];
}

bool BimoduleHom::is_zero() const
{
    for (const auto& m : mats)
        if (!m.is_zero())
            return false;
    return true;
}

bool BimoduleHom::operator==(const BimoduleHom& o) const
{
    if (degree != o.degree)
        return false;
    int lo = std::min(src->lo, o.src->lo), hi = std::max(src->hi, o.src->hi);
    for (int d = lo; d <= hi; ++d)
        if (!(mat(d) == o.mat(d)))
            return false;
    return true;
}

BimoduleHom BimoduleHom::operator+(const BimoduleHom& o) const
{
    if (degree != o.degree)
        throw std::invalid_argument("BimoduleHom: degree mismatch in sum");
    BimoduleHom r = *this;
    for (int d = src->lo; d <= src->hi; ++d)
        r.mats[static_cast<std::size_t>(d - src->lo)] = mat(d) + o.mat(d);
    return r;
}

BimoduleHom BimoduleHom::operator-(const BimoduleHom& o) const
{
    return *this + o.scaled(Rational(-1));
}

BimoduleHom BimoduleHom::scaled(const Rational& c) const
{
    BimoduleHom r = *this;
    for (auto& m : r.mats)
        m = m.scaled(c);
    return r;
}

void BimoduleHom::validate() const
{
    auto check = [&](bool left_side) {
        const FlagRingPtr& ring = left_side ? src->left : src->right;
        for (std::size_t g = 0; g < ring->table()->size(); ++g) {
            const int e = ring->table()->var(g).degree;
            for (int d = src->lo; d <= src->hi; ++d) {
                QMatrix a = mat(d + e) * src->action(left_side, g, d);
                QMatrix b = dst->action(left_side, g, d + degree) * mat(d);
                if (!(a == b))
                    throw std::logic_error("BimoduleHom: does not intertwine actions");
            }
        }
    };
    check(true);
    check(false);
}

BimoduleHom zero_hom(const BimodPtr& src, const BimodPtr& dst, int degree)
{
    BimoduleHom h;
    h.src = src;
    h.dst = dst;
    h.degree = degree;
    h.mats.resize(static_cast<std::size_t>(std::max(0, src->hi - src->lo + 1)));
    for (int d = src->lo; d <= src->hi; ++d)
        h.mats[static_cast<std::size_t>(d - src->lo)] =
            QMatrix(static_cast<std::size_t>(dst->dim(d + degree)),
                    static_cast<std::size_t>(src->dim(d)));
    return h;
}

BimoduleHom identity_hom(const BimodPtr& m)
{
    BimoduleHom h = zero_hom(m, m, 0);
    for (int d = m->lo; d <= m->hi; ++d)
        h.mats[static_cast<std::size_t>(d - m->lo)] =
            QMatrix::identity(static_cast<std::size_t>(m->dim(d)));
    return h;
}

BimoduleHom compose(const BimoduleHom& g, const BimoduleHom& f)
{
    for (int d = f.src->lo; d <= f.src->hi; ++d)
        if (f.dst->dim(d + f.degree) != g.src->dim(d + f.degree))
            throw std::invalid_argument("compose: middle dimensions disagree");
    BimoduleHom h = zero_hom(f.src, g.dst, f.degree + g.degree);
    for (int d = f.src->lo; d <= f.src->hi; ++d)
        h.mats[static_cast<std::size_t>(d - f.src->lo)] = g.mat(d + f.degree) * f.mat(d);
    return h;
}

bool is_isomorphism(const BimoduleHom& f)
{
    for (int d = std::min(f.src->lo, f.dst->lo - f.degree);
         d <= std::max(f.src->hi, f.dst->hi - f.degree); ++d) {
        if (f.src->dim(d) != f.dst->dim(d + f.degree))
            return false;
        if (f.src->dim(d) == 0)
            continue;
        if (!f.mat(d).invertible())
            return false;
    }
    return true;
}

namespace {

/* Generic hom solver: pick bimodule generators of the source degree by
 * degree, define the map from its generator images and collect the
 * intertwining constraints into one homogeneous system. */
std::vector<BimoduleHom> generic_hom_solver(const BimodPtr& m, const BimodPtr& mt, int hom_deg)
{
    struct ExprTerm {
        bool left_side;
        std::size_t gen;
        std::size_t lower_index;
        Rational coeff;
    };
    struct Expr {
        std::vector<ExprTerm> products;
        std::vector<std::pair<std::size_t, Rational>> gens; // unknown block, coeff
    };

    std::vector<std::size_t> block_offset;
    std::size_t total_unknowns = 0;
    std::map<int, std::vector<Expr>> exprs;
    std::map<int, std::vector<QMatrix>> U;

    auto gens_of = [&](bool left_side) -> const VarTable& {
        return left_side ? *m->left->table() : *m->right->table();
    };

    for (int e = m->lo; e <= m->hi; ++e) {
        const int dim_e = m->dim(e);
        if (dim_e == 0)
            continue;
        std::vector<QVec> cols;
        std::vector<ExprTerm> col_tags;
        for (int side = 0; side < 2; ++side) {
            bool left_side = side == 0;
            const VarTable& table = gens_of(left_side);
            for (std::size_t g = 0; g < table.size(); ++g) {
                const int eg = table.var(g).degree;
                if (m->dim(e - eg) == 0)
                    continue;
                QMatrix a = m->action(left_side, g, e - eg);
                for (std::size_t b = 0; b < a.cols(); ++b) {
                    QVec col(a.rows());
                    for (std::size_t i = 0; i < a.rows(); ++i)
                        col[i] = a.at(i, b);
                    cols.push_back(std::move(col));
                    col_tags.push_back({left_side, g, b, Rational(1)});
                }
            }
        }
        Echelon span(static_cast<std::size_t>(dim_e));
        for (const auto& c : cols)
            span.add_row(QVec(c));
        std::vector<std::size_t> new_gens;
        for (std::size_t i = 0; i < static_cast<std::size_t>(dim_e); ++i) {
            QVec unit(static_cast<std::size_t>(dim_e), Rational(0));
            unit[i] = 1;
            if (!span.in_rowspace(unit)) {
                span.add_row(std::move(unit));
                new_gens.push_back(i);
            }
        }
        QMatrix A(static_cast<std::size_t>(dim_e), cols.size() + new_gens.size());
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t i = 0; i < cols[c].size(); ++i)
                A.at(i, c) = cols[c][i];
        for (std::size_t c = 0; c < new_gens.size(); ++c)
            A.at(new_gens[c], cols.size() + c) = 1;
        std::vector<std::size_t> gen_block_of(new_gens.size());
        for (std::size_t c = 0; c < new_gens.size(); ++c) {
            gen_block_of[c] = block_offset.size();
            block_offset.push_back(total_unknowns);
            total_unknowns += static_cast<std::size_t>(mt->dim(e + hom_deg));
        }
        auto& ex = exprs[e];
        ex.resize(static_cast<std::size_t>(dim_e));
        for (std::size_t i = 0; i < static_cast<std::size_t>(dim_e); ++i) {
            QVec unit(static_cast<std::size_t>(dim_e), Rational(0));
            unit[i] = 1;
            QVec sol;
            if (!A.solve(unit, sol))
                throw std::logic_error("generic_hom_solver: basis expression failed");
            for (std::size_t c = 0; c < cols.size(); ++c)
                if (!flagcat::is_zero(sol[c])) {
                    ExprTerm t = col_tags[c];
                    t.coeff = sol[c];
                    ex[i].products.push_back(t);
                }
            for (std::size_t c = 0; c < new_gens.size(); ++c)
                if (!flagcat::is_zero(sol[cols.size() + c]))
                    ex[i].gens.emplace_back(gen_block_of[c], sol[cols.size() + c]);
        }
    }

    for (int e = m->lo; e <= m->hi; ++e) {
        auto it = exprs.find(e);
        if (it == exprs.end())
            continue;
        const std::size_t rows = static_cast<std::size_t>(mt->dim(e + hom_deg));
        auto& Ue = U[e];
        Ue.assign(it->second.size(), QMatrix(rows, total_unknowns));
        for (std::size_t i = 0; i < it->second.size(); ++i) {
            const Expr& ex = it->second[i];
            QMatrix acc(rows, total_unknowns);
            for (const auto& [block, c] : ex.gens) {
                const std::size_t off = block_offset[block];
                for (std::size_t r = 0; r < rows; ++r)
                    acc.at(r, off + r) = acc.at(r, off + r) + c;
            }
            for (const ExprTerm& t : ex.products) {
                const VarTable& table = gens_of(t.left_side);
                const int eg = table.var(t.gen).degree;
                const QMatrix& lower = U.at(e - eg)[t.lower_index];
                QMatrix contrib = mt->action(t.left_side, t.gen, e - eg + hom_deg) * lower;
                acc = acc + contrib.scaled(t.coeff);
            }
            Ue[i] = std::move(acc);
        }
    }

    Echelon constraints(total_unknowns);
    for (int e = m->lo; e <= m->hi; ++e) {
        if (m->dim(e) == 0)
            continue;
        for (int side = 0; side < 2; ++side) {
            bool left_side = side == 0;
            const VarTable& table = gens_of(left_side);
            for (std::size_t g = 0; g < table.size(); ++g) {
                const int eg = table.var(g).degree;
                if (mt->dim(e + eg + hom_deg) == 0)
                    continue;
                QMatrix act = m->action(left_side, g, e);
                for (std::size_t i = 0; i < static_cast<std::size_t>(m->dim(e)); ++i) {
                    QMatrix lhs = mt->action(left_side, g, e + hom_deg) * U.at(e)[i];
                    if (m->dim(e + eg) > 0)
                        for (std::size_t c = 0; c < static_cast<std::size_t>(m->dim(e + eg)); ++c)
                            if (!flagcat::is_zero(act.at(c, i)))
                                lhs = lhs - U.at(e + eg)[c].scaled(act.at(c, i));
                    for (std::size_t r = 0; r < lhs.rows(); ++r) {
                        QVec row(total_unknowns);
                        bool nonzero = false;
                        for (std::size_t cc = 0; cc < total_unknowns; ++cc) {
                            row[cc] = lhs.at(r, cc);
                            nonzero = nonzero || !flagcat::is_zero(row[cc]);
                        }
                        if (nonzero)
                            constraints.add_row(std::move(row));
                    }
                }
            }
        }
    }

    QMatrix ns = constraints.nullspace();
    std::vector<BimoduleHom> out;
    for (std::size_t sol = 0; sol < ns.cols(); ++sol) {
        QVec v(total_unknowns);
        for (std::size_t i = 0; i < total_unknowns; ++i)
            v[i] = ns.at(i, sol);
        BimoduleHom h = zero_hom(m, mt, hom_deg);
        for (int e = m->lo; e <= m->hi; ++e) {
            if (m->dim(e) == 0 || mt->dim(e + hom_deg) == 0)
                continue;
            QMatrix te(static_cast<std::size_t>(mt->dim(e + hom_deg)),
                       static_cast<std::size_t>(m->dim(e)));
            for (std::size_t i = 0; i < static_cast<std::size_t>(m->dim(e)); ++i) {
                QVec img = U.at(e)[i].apply(v);
                for (std::size_t r = 0; r < img.size(); ++r)
                    te.at(r, i) = img[r];
            }
            h.mats[static_cast<std::size_t>(e - m->lo)] = std::move(te);
        }
        out.push_back(std::move(h));
    }
    return out;
}

/* Left-free solver: a map out of a left-free module is pinned by the images
 * of the free basis; the only constraints are right linearity there. */
std::vector<BimoduleHom> leftfree_hom_solver(const BimodPtr& m, const BimodPtr& mt, int hom_deg)
{
    const LeftFreeData& fd = *m->free_data;
    const std::size_t nfree = fd.free_degrees.size();
    std::vector<std::size_t> offset(nfree);
    std::size_t total = 0;
    for (std::size_t t = 0; t < nfree; ++t) {
        offset[t] = total;
        total += static_cast<std::size_t>(mt->dim(fd.free_degrees[t] + hom_deg));
    }

    std::map<int, std::vector<MultiPoly>> lbasis;
    auto lbasis_of = [&](int deg) -> const std::vector<MultiPoly>& {
        auto it = lbasis.find(deg);
        if (it == lbasis.end())
            it = lbasis.emplace(deg, m->left->basis(deg)).first;
        return it->second;
    };
    std::map<std::tuple<int, std::size_t, int>, QMatrix> poly_cache;
    auto act_left_mono = [&](int ldeg, std::size_t idx, int at) -> const QMatrix& {
        auto key = std::make_tuple(ldeg, idx, at);
        auto it = poly_cache.find(key);
        if (it == poly_cache.end())
            it = poly_cache.emplace(key, mt->action_poly(true, lbasis_of(ldeg)[idx], at)).first;
        return it->second;
    };

    auto free_vector = [&](std::size_t t) -> QVec {
        const int e = fd.free_degrees[t];
        const auto& dc = fd.cols[static_cast<std::size_t>(e - m->lo)];
        for (std::size_t c = 0; c < dc.pairs.size(); ++c)
            if (dc.pairs[c].second == t && dc.left_degree[c] == 0) {
                QVec v(static_cast<std::size_t>(m->dim(e)));
                for (std::size_t i = 0; i < v.size(); ++i)
                    v[i] = dc.to_module.at(i, c);
                return v;
            }
        throw std::logic_error("leftfree_hom_solver: free generator column missing");
    };

    Echelon constraints(total);
    for (std::size_t t = 0; t < nfree; ++t) {
        const int e = fd.free_degrees[t];
        QVec xt = free_vector(t);
        for (std::size_t g = 0; g < m->right->table()->size(); ++g) {
            const int eg = m->right->table()->var(g).degree;
            const int rows = mt->dim(e + eg + hom_deg);
            if (rows == 0)
                continue;
            QVec xtr = m->action(false, g, e).apply(xt);
            if (e + eg > m->hi)
                continue;
            const auto& dc = fd.cols[static_cast<std::size_t>(e + eg - m->lo)];
            QVec pair_coords = dc.to_pairs.apply(xtr);
            QMatrix row_block(static_cast<std::size_t>(rows), total);
            {
                QMatrix actr = mt->action(false, g, e + hom_deg);
                for (std::size_t r = 0; r < actr.rows(); ++r)
                    for (std::size_t c = 0; c < actr.cols(); ++c)
                        row_block.at(r, offset[t] + c) = actr.at(r, c);
            }
            for (std::size_t c = 0; c < dc.pairs.size(); ++c) {
                if (flagcat::is_zero(pair_coords[c]))
                    continue;
                const std::size_t s = dc.pairs[c].second;
                const QMatrix& actm =
                    act_left_mono(dc.left_degree[c], dc.pairs[c].first, fd.free_degrees[s] + hom_deg);
                for (std::size_t r = 0; r < actm.rows(); ++r)
                    for (std::size_t cc = 0; cc < actm.cols(); ++cc)
                        row_block.at(r, offset[s] + cc) =
                            row_block.at(r, offset[s] + cc) - pair_coords[c] * actm.at(r, cc);
            }
            for (std::size_t r = 0; r < row_block.rows(); ++r) {
                QVec row(total);
                bool nonzero = false;
                for (std::size_t cc = 0; cc < total; ++cc) {
                    row[cc] = row_block.at(r, cc);
                    nonzero = nonzero || !flagcat::is_zero(row[cc]);
                }
                if (nonzero)
                    constraints.add_row(std::move(row));
            }
        }
    }

    QMatrix ns = constraints.nullspace();
    std::vector<BimoduleHom> out;
    for (std::size_t sol = 0; sol < ns.cols(); ++sol) {
        BimoduleHom h = zero_hom(m, mt, hom_deg);
        for (int e = m->lo; e <= m->hi; ++e) {
            const int de = m->dim(e);
            const int rows = mt->dim(e + hom_deg);
            if (de == 0 || rows == 0)
                continue;
            const auto& dc = fd.cols[static_cast<std::size_t>(e - m->lo)];
            QMatrix te(static_cast<std::size_t>(rows), static_cast<std::size_t>(de));
            for (std::size_t i = 0; i < static_cast<std::size_t>(de); ++i) {
                QVec unit(static_cast<std::size_t>(de), Rational(0));
                unit[i] = 1;
                QVec pc = dc.to_pairs.apply(unit);
                QVec img(static_cast<std::size_t>(rows), Rational(0));
                for (std::size_t c = 0; c < dc.pairs.size(); ++c) {
                    if (flagcat::is_zero(pc[c]))
                        continue;
                    const std::size_t s = dc.pairs[c].second;
                    const QMatrix& actm = act_left_mono(dc.left_degree[c], dc.pairs[c].first,
                                                        fd.free_degrees[s] + hom_deg);
                    for (std::size_t r = 0; r < actm.rows(); ++r)
                        for (std::size_t cc = 0; cc < actm.cols(); ++cc)
                            img[r] += pc[c] * actm.at(r, cc) * ns.at(offset[s] + cc, sol);
                }
                for (std::size_t r = 0; r < img.size(); ++r)
                    te.at(r, i) = img[r];
            }
            h.mats[static_cast<std::size_t>(e - m->lo)] = std::move(te);
        }
        out.push_back(std::move(h));
    }
    return out;
}

} // namespace

std::vector<BimoduleHom> hom_space_basis(const BimodPtr& m, const BimodPtr& mt, int d)
{
    if (m->left != mt->left || m->right != mt->right)
        throw std::invalid_argument("hom_space_basis: corner rings differ");
    if (m->is_zero() || mt->is_zero())
        return {};
    if (m->free_data)
        return leftfree_hom_solver(m, mt, d);
    return generic_hom_solver(m, mt, d);
}

LaurentPoly hom_graded_dims(const BimodPtr& m, const BimodPtr& mt, int dmin, int dmax)
{
    LaurentPoly g;
    for (int d = dmin; d <= dmax; ++d) {
        std::size_t n = hom_space_basis(m, mt, d).size();
        if (n)
            g.set_coeff(d, Rational(static_cast<long>(n)));
    }
    return g;
}

std::optional<BimoduleHom> find_isomorphism(const BimodPtr& m, const BimodPtr& mt)
{
    if (m->left != mt->left || m->right != mt->right)
        return std::nullopt;
    for (int d = std::min(m->lo, mt->lo); d <= std::max(m->hi, mt->hi); ++d)
        if (m->dim(d) != mt->dim(d))
            return std::nullopt;
    if (m->is_zero())
        return zero_hom(m, mt, 0);
    auto basis = hom_space_basis(m, mt, 0);
    for (const auto& h : basis)
        if (is_isomorphism(h))
            return h;
    unsigned long state = 0x243f6a8885a308d3UL;
    for (int attempt = 0; attempt < 64; ++attempt) {
        BimoduleHom h = zero_hom(m, mt, 0);
        for (const auto& b : basis) {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            long c = static_cast<long>(state % 7) - 3;
            if (c != 0)
                h = h + b.scaled(Rational(c));
        }
        if (is_isomorphism(h))
            return h;
    }
    return std::nullopt;
}

SubData kernel_sub(const BimoduleHom& f)
{
    SubData s;
    s.incl.resize(static_cast<std::size_t>(std::max(0, f.src->hi - f.src->lo + 1)));
    for (int d = f.src->lo; d <= f.src->hi; ++d)
        s.incl[static_cast<std::size_t>(d - f.src->lo)] = f.mat(d).nullspace();
    return s;
}

SubData image_sub(const BimoduleHom& f)
{
    SubData s;
    const BimodPtr& dst = f.dst;
    s.incl.resize(static_cast<std::size_t>(std::max(0, dst->hi - dst->lo + 1)));
    for (int d = dst->lo; d <= dst->hi; ++d) {
        QMatrix cols = f.mat(d - f.degree);
        Echelon span(static_cast<std::size_t>(dst->dim(d)));
        std::vector<QVec> keep;
        for (std::size_t c = 0; c < cols.cols(); ++c) {
            QVec v(cols.rows());
            for (std::size_t i = 0; i < v.size(); ++i)
                v[i] = cols.at(i, c);
            if (span.add_row(QVec(v)))
                keep.push_back(std::move(v));
        }
        s.incl[static_cast<std::size_t>(d - dst->lo)] =
            from_columns(keep, static_cast<std::size_t>(dst->dim(d)));
    }
    return s;
}

SubData span_closure(const BimodPtr& m, const std::vector<std::pair<int, QVec>>& seeds)
{
    std::vector<Echelon> spans;
    std::vector<std::vector<QVec>> keep(static_cast<std::size_t>(std::max(0, m->hi - m->lo + 1)));
    for (int d = m->lo; d <= m->hi; ++d)
        spans.emplace_back(static_cast<std::size_t>(m->dim(d)));
    std::vector<std::pair<int, QVec>> work = seeds;
    while (!work.empty()) {
        auto [d, v] = work.back();
        work.pop_back();
        if (d < m->lo || d > m->hi || m->dim(d) == 0)
            continue;
        if (!spans[static_cast<std::size_t>(d - m->lo)].add_row(QVec(v)))
            continue;
        keep[static_cast<std::size_t>(d - m->lo)].push_back(v);
        for (int side = 0; side < 2; ++side) {
            bool left_side = side == 0;
            const FlagRingPtr& ring = left_side ? m->left : m->right;
            for (std::size_t g = 0; g < ring->table()->size(); ++g) {
                const int e = ring->table()->var(g).degree;
                if (m->dim(d + e) == 0)
                    continue;
                work.emplace_back(d + e, m->action(left_side, g, d).apply(v));
            }
        }
    }
    SubData s;
    s.incl.resize(keep.size());
    for (int d = m->lo; d <= m->hi; ++d)
        s.incl[static_cast<std::size_t>(d - m->lo)] = from_columns(
            keep[static_cast<std::size_t>(d - m->lo)], static_cast<std::size_t>(m->dim(d)));
    return s;
}

SubQuotient sub_bimodule(const BimodPtr& m, const SubData& sub, std::string label)
{
    auto r = std::make_shared<GradedBimodule>();
    r->left = m->left;
    r->right = m->right;
    r->lo = m->lo;
    r->hi = m->hi;
    r->label = std::move(label);
    r->dims.resize(static_cast<std::size_t>(std::max(0, m->hi - m->lo + 1)), 0);
    for (int d = m->lo; d <= m->hi; ++d)
        r->dims[static_cast<std::size_t>(d - m->lo)] =
            static_cast<int>(sub.incl[static_cast<std::size_t>(d - m->lo)].cols());
    auto build = [&](bool left_side) {
        const FlagRingPtr& ring = left_side ? m->left : m->right;
        std::vector<std::vector<QMatrix>> bank(ring->table()->size());
        for (std::size_t g = 0; g < ring->table()->size(); ++g) {
            const int e = ring->table()->var(g).degree;
            bank[g].resize(r->dims.size());
            for (int d = m->lo; d <= m->hi; ++d) {
                const QMatrix& S = sub.incl[static_cast<std::size_t>(d - m->lo)];
                QMatrix img = m->action(left_side, g, d) * S;
                const std::size_t rdim = static_cast<std::size_t>(r->dim(d + e));
                QMatrix a(rdim, S.cols());
                if (rdim > 0 && S.cols() > 0) {
                    const QMatrix& Sup = sub.incl[static_cast<std::size_t>(d + e - m->lo)];
                    for (std::size_t c = 0; c < img.cols(); ++c) {
                        QVec b(img.rows()), x;
                        for (std::size_t i = 0; i < img.rows(); ++i)
                            b[i] = img.at(i, c);
                        if (!Sup.solve(b, x))
                            throw std::logic_error("sub_bimodule: span not action closed");
                        for (std::size_t i = 0; i < x.size(); ++i)
                            a.at(i, c) = x[i];
                    }
                } else if (!img.is_zero()) {
                    throw std::logic_error("sub_bimodule: span not action closed");
                }
                bank[g][static_cast<std::size_t>(d - m->lo)] = std::move(a);
            }
        }
        return bank;
    };
    r->act_left = build(true);
    r->act_right = build(false);
    BimoduleHom incl;
    incl.src = r;
    incl.dst = m;
    incl.degree = 0;
    incl.mats = sub.incl;
    return {r, incl};
}

SubQuotient quotient_bimodule(const BimodPtr& m, const SubData& sub, std::string label)
{
    auto r = std::make_shared<GradedBimodule>();
    r->left = m->left;
    r->right = m->right;
    r->lo = m->lo;
    r->hi = m->hi;
    r->label = std::move(label);
    const std::size_t nd = static_cast<std::size_t>(std::max(0, m->hi - m->lo + 1));
    r->dims.resize(nd, 0);
    std::vector<QMatrix> proj(nd), sect(nd);
    for (int d = m->lo; d <= m->hi; ++d) {
        const std::size_t di = static_cast<std::size_t>(d - m->lo);
        const QMatrix& S = sub.incl[di];
        const std::size_t n = static_cast<std::size_t>(m->dim(d));
        Echelon span(n);
        for (std::size_t c = 0; c < S.cols(); ++c) {
            QVec v(n);
            for (std::size_t i = 0; i < n; ++i)
                v[i] = S.at(i, c);
            span.add_row(std::move(v));
        }
        std::vector<std::size_t> comp;
        for (std::size_t i = 0; i < n; ++i) {
            QVec unit(n, Rational(0));
            unit[i] = 1;
            if (!span.in_rowspace(unit)) {
                span.add_row(std::move(unit));
                comp.push_back(i);
            }
        }
        r->dims[di] = static_cast<int>(comp.size());
        QMatrix pr(comp.size(), n), sc(n, comp.size());
        if (n > 0 && (S.cols() + comp.size()) > 0) {
            QMatrix full(n, S.cols() + comp.size());
            for (std::size_t c = 0; c < S.cols(); ++c)
                for (std::size_t i = 0; i < n; ++i)
                    full.at(i, c) = S.at(i, c);
            for (std::size_t c = 0; c < comp.size(); ++c)
                full.at(comp[c], S.cols() + c) = 1;
            QMatrix inv = full.inverse();
            for (std::size_t rr = 0; rr < comp.size(); ++rr)
                for (std::size_t i = 0; i < n; ++i)
                    pr.at(rr, i) = inv.at(S.cols() + rr, i);
            for (std::size_t c = 0; c < comp.size(); ++c)
                sc.at(comp[c], c) = 1;
        }
        proj[di] = std::move(pr);
        sect[di] = std::move(sc);
    }
    auto build = [&](bool left_side) {
        const FlagRingPtr& ring = left_side ? m->left : m->right;
        std::vector<std::vector<QMatrix>> bank(ring->table()->size());
        for (std::size_t g = 0; g < ring->table()->size(); ++g) {
            const int e = ring->table()->var(g).degree;
            bank[g].resize(nd);
            for (int d = m->lo; d <= m->hi; ++d) {
                const std::size_t di = static_cast<std::size_t>(d - m->lo);
                if (d + e >= m->lo && d + e <= m->hi) {
                    const std::size_t dj = static_cast<std::size_t>(d + e - m->lo);
                    bank[g][di] = proj[dj] * (m->action(left_side, g, d) * sect[di]);
                } else {
                    bank[g][di] = QMatrix(0, static_cast<std::size_t>(r->dims[di]));
                }
            }
        }
        return bank;
    };
    r->act_left = build(true);
    r->act_right = build(false);
    BimoduleHom p;
    p.src = m;
    p.dst = r;
    p.degree = 0;
    p.mats = proj;
    return {r, p};
}

SubQuotient subquotient_bimodule(const BimodPtr& m, const SubData& sub, const SubData& img,
                                 std::string label)
{
    SubQuotient s = sub_bimodule(m, sub, label + "|cycles");
    SubData inner;
    inner.incl.resize(sub.incl.size());
    for (int d = m->lo; d <= m->hi; ++d) {
        const std::size_t di = static_cast<std::size_t>(d - m->lo);
        const QMatrix& S = sub.incl[di];
        const QMatrix& I = img.incl[di];
        QMatrix x(S.cols(), I.cols());
        for (std::size_t c = 0; c < I.cols(); ++c) {
            QVec b(I.rows()), sol;
            for (std::size_t i = 0; i < I.rows(); ++i)
                b[i] = I.at(i, c);
            if (!S.solve(b, sol))
                throw std::logic_error("subquotient: image not contained in sub");
            for (std::size_t i = 0; i < sol.size(); ++i)
                x.at(i, c) = sol[i];
        }
        inner.incl[di] = std::move(x);
    }
    return quotient_bimodule(s.module, inner, std::move(label));
}

BimodPtr ring_carrier(const FlagRingPtr& ring, bool reversed, int shift, std::string label)
{
    auto m = std::make_shared<GradedBimodule>();
    m->label = std::move(label);
    m->left = reversed ? ring->corner_ring_hi() : ring->corner_ring_lo();
    m->right = reversed ? ring->corner_ring_lo() : ring->corner_ring_hi();
    if (ring->is_zero_ring()) {
        m->lo = 0;
        m->hi = -1;
        return m;
    }
    m->lo = shift;
    m->hi = ring->top_degree() + shift;
    m->dims.resize(static_cast<std::size_t>(m->hi - m->lo + 1), 0);
    for (int d = m->lo; d <= m->hi; ++d)
        m->dims[static_cast<std::size_t>(d - m->lo)] = ring->dim(d - shift);
    auto build = [&](bool left_side) {
        const FlagRingPtr& corner = left_side ? m->left : m->right;
        const bool use_lo = left_side != reversed;
        std::vector<std::vector<QMatrix>> bank(corner->table()->size());
        for (std::size_t g = 0; g < corner->table()->size(); ++g) {
            const GradedVariable& v = corner->table()->var(g);
            MultiPoly image = use_lo ? ring->corner_image_lo(v) : ring->corner_image_hi(v);
            image = ring->normal_form(image);
            bank[g].resize(m->dims.size());
            for (int d = m->lo; d <= m->hi; ++d) {
                if (image.is_zero())
                    bank[g][static_cast<std::size_t>(d - m->lo)] =
                        QMatrix(static_cast<std::size_t>(m->dim(d + v.degree)),
                                static_cast<std::size_t>(m->dim(d)));
                else
                    bank[g][static_cast<std::size_t>(d - m->lo)] =
                        ring->mult_matrix(image, d - shift);
            }
        }
        return bank;
    };
    m->act_left = build(true);
    m->act_right = build(false);
    return m;
}

OneMorData adjoint_data(char kind, int n, int s, char side)
{
    if (kind == 'E' && side == 'L')
        return {'F', n + 2, n + 1 - s};
    if (kind == 'E' && side == 'R')
        return {'F', n + 2, -n - 1 - s};
    if (kind == 'F' && side == 'L')
        return {'E', n - 2, -n + 1 - s};
    if (kind == 'F' && side == 'R')
        return {'E', n - 2, n - 1 - s};
    throw std::invalid_argument("adjoint_data: kind must be E/F and side L/R");
}

} // namespace flagcat
