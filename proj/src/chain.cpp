#include "flagcat/chain.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace flagcat {

void attach_left_free(const std::shared_ptr<GradedBimodule>& m)
{
    LeftFreeData fd;
    const FlagRingPtr& L = m->left;
    std::map<int, std::vector<MultiPoly>> lbasis;
    auto lbasis_of = [&](int deg) -> const std::vector<MultiPoly>& {
        auto it = lbasis.find(deg);
        if (it == lbasis.end())
            it = lbasis.emplace(deg, L->basis(deg)).first;
        return it->second;
    };
    std::map<std::tuple<int, std::size_t, int>, QMatrix> act_cache;
    auto act_mono = [&](int ldeg, std::size_t idx, int at) -> const QMatrix& {
        auto key = std::make_tuple(ldeg, idx, at);
        auto it = act_cache.find(key);
        if (it == act_cache.end())
            it = act_cache.emplace(key, m->action_poly(true, lbasis_of(ldeg)[idx], at)).first;
        return it->second;
    };

    std::vector<QVec> free_vecs; // module coords at their own degree
    fd.cols.resize(static_cast<std::size_t>(std::max(0, m->hi - m->lo + 1)));
    for (int d = m->lo; d <= m->hi; ++d) {
        auto& dc = fd.cols[static_cast<std::size_t>(d - m->lo)];
        const std::size_t n = static_cast<std::size_t>(m->dim(d));
        std::vector<QVec> columns;
        Echelon span(n);
        for (std::size_t t = 0; t < fd.free_degrees.size(); ++t) {
            const int ft = fd.free_degrees[t];
            const int ldeg = d - ft;
            if (ldeg < 0 || L->dim(ldeg) == 0)
                continue;
            for (std::size_t mi = 0; mi < lbasis_of(ldeg).size(); ++mi) {
                QVec col = act_mono(ldeg, mi, ft).apply(free_vecs[t]);
                dc.pairs.emplace_back(mi, t);
                dc.left_degree.push_back(ldeg);
                span.add_row(QVec(col));
                columns.push_back(std::move(col));
            }
        }
        // complete with new free generators on standard basis vectors
        for (std::size_t i = 0; i < n; ++i) {
            QVec unit(n, Rational(0));
            unit[i] = 1;
            if (span.in_rowspace(unit))
                continue;
            span.add_row(QVec(unit));
            const std::size_t t = fd.free_degrees.size();
            fd.free_degrees.push_back(d);
            free_vecs.push_back(unit);
            dc.pairs.emplace_back(0, t); // the constant 1 of the left ring
            dc.left_degree.push_back(0);
            columns.push_back(std::move(unit));
        }
        if (columns.size() != n)
            throw std::logic_error("attach_left_free: module is not left free: " + m->label);
        dc.to_module = from_columns(columns, n);
        if (n > 0)
            dc.to_pairs = dc.to_module.inverse();
        else
            dc.to_pairs = QMatrix(0, 0);
    }
    m->free_data = std::move(fd);
}

ChainCarrier ChainCarrier::identity(const FlagRingPtr& grassmannian, int shift)
{
    return build({FactorSpec{grassmannian, false, shift, "1"}});
}

ChainCarrier ChainCarrier::build(const std::vector<FactorSpec>& specs)
{
    if (specs.empty())
        throw std::invalid_argument("ChainCarrier: empty factor list");
    ChainCarrier c;
    for (const auto& s : specs)
        if (s.ring->is_zero_ring())
            c.zero_ = true;
    if (c.zero_) {
        const auto& f = specs.front();
        const auto& l = specs.back();
        c.zero_left_ = f.reversed ? f.ring->corner_ring_hi() : f.ring->corner_ring_lo();
        c.zero_right_ = l.reversed ? l.ring->corner_ring_lo() : l.ring->corner_ring_hi();
        c.zero_dense_ = make_zero_bimodule(c.zero_left_, c.zero_right_, "0");
        return c;
    }
    for (std::size_t i = 0; i < specs.size(); ++i) {
        Step st;
        st.spec = specs[i];
        auto factor = std::const_pointer_cast<GradedBimodule>(
            ring_carrier(specs[i].ring, specs[i].reversed, specs[i].shift, specs[i].label));
        attach_left_free(factor);
        st.factor = factor;
        const LeftFreeData& fdM = *factor->free_data;
        for (std::size_t t = 0; t < fdM.free_degrees.size(); ++t) {
            const int ft = fdM.free_degrees[t];
            const auto& dc = fdM.cols[static_cast<std::size_t>(ft - factor->lo)];
            for (std::size_t cidx = 0; cidx < dc.pairs.size(); ++cidx)
                if (dc.pairs[cidx].second == t && dc.left_degree[cidx] == 0) {
                    QVec v(static_cast<std::size_t>(factor->dim(ft)));
                    for (std::size_t r = 0; r < v.size(); ++r)
                        v[r] = dc.to_module.at(r, cidx);
                    st.free_reps.push_back(std::move(v));
                    st.free_ring_degs.push_back(ft - specs[i].shift);
                    break;
                }
        }
        if (st.free_reps.size() != fdM.free_degrees.size())
            throw std::logic_error("ChainCarrier: free representative lookup failed");

        if (i == 0) {
            st.cumulative = factor;
            c.steps_.push_back(std::move(st));
            continue;
        }
        const BimodPtr& X = c.steps_.back().cumulative;
        if (X->right != factor->left)
            throw std::invalid_argument("ChainCarrier: middle rings do not match at factor " +
                                        std::to_string(i));
        auto cum = std::make_shared<GradedBimodule>();
        cum->left = X->left;
        cum->right = factor->right;
        cum->label = X->label + " (x) " + specs[i].label;
        // window and layout
        int lo = 0, hi = -1;
        bool first = true;
        for (std::size_t t = 0; t < fdM.free_degrees.size(); ++t) {
            const int ft = fdM.free_degrees[t];
            if (X->hi < X->lo)
                continue;
            if (first) {
                lo = X->lo + ft;
                hi = X->hi + ft;
                first = false;
            } else {
                lo = std::min(lo, X->lo + ft);
                hi = std::max(hi, X->hi + ft);
            }
        }
        cum->lo = lo;
        cum->hi = hi;
        const std::size_t nd = static_cast<std::size_t>(std::max(0, hi - lo + 1));
        cum->dims.assign(nd, 0);
        st.layout.resize(nd);
        for (int d = lo; d <= hi; ++d) {
            std::size_t off = 0;
            for (std::size_t t = 0; t < fdM.free_degrees.size(); ++t) {
                const int pd = d - fdM.free_degrees[t];
                const std::size_t sz = static_cast<std::size_t>(X->dim(pd));
                if (sz == 0)
                    continue;
                st.layout[static_cast<std::size_t>(d - lo)].push_back({t, pd, off, sz});
                off += sz;
            }
            cum->dims[static_cast<std::size_t>(d - lo)] = static_cast<int>(off);
        }
        // left action: block diagonal copies of the prefix action
        {
            const FlagRingPtr& ring = cum->left;
            cum->act_left.assign(ring->table()->size(), {});
            for (std::size_t g = 0; g < ring->table()->size(); ++g) {
                const int eg = ring->table()->var(g).degree;
                cum->act_left[g].resize(nd);
                for (int d = lo; d <= hi; ++d) {
                    QMatrix mat(static_cast<std::size_t>(cum->dim(d + eg)),
                                static_cast<std::size_t>(cum->dim(d)));
                    for (const auto& blk : st.layout[static_cast<std::size_t>(d - lo)]) {
                        // destination block: same t at prefix degree blk.prefix_deg + eg
                        const int dd = d + eg;
                        if (dd < lo || dd > hi)
                            continue;
                        for (const auto& dblk : st.layout[static_cast<std::size_t>(dd - lo)]) {
                            if (dblk.t != blk.t)
                                continue;
                            QMatrix a = X->action(true, g, blk.prefix_deg);
                            for (std::size_t r = 0; r < a.rows(); ++r)
                                for (std::size_t cc = 0; cc < a.cols(); ++cc)
                                    mat.at(dblk.offset + r, blk.offset + cc) = a.at(r, cc);
                        }
                    }
                    cum->act_left[g][static_cast<std::size_t>(d - lo)] = std::move(mat);
                }
            }
        }
        // right action through the rewrite of b_t . g over the free basis
        {
            const FlagRingPtr& ring = cum->right;
            cum->act_right.assign(ring->table()->size(), {});
            std::map<std::tuple<int, std::size_t, int>, QMatrix> actx_cache;
            std::map<int, std::vector<MultiPoly>> mid_basis;
            auto mid_basis_of = [&](int deg) -> const std::vector<MultiPoly>& {
                auto it = mid_basis.find(deg);
                if (it == mid_basis.end())
                    it = mid_basis.emplace(deg, factor->left->basis(deg)).first;
                return it->second;
            };
            auto actx = [&](int ldeg, std::size_t idx, int at) -> const QMatrix& {
                auto key = std::make_tuple(ldeg, idx, at);
                auto it = actx_cache.find(key);
                if (it == actx_cache.end())
                    it = actx_cache
                             .emplace(key, X->action_poly(false, mid_basis_of(ldeg)[idx], at))
                             .first;
                return it->second;
            };
            for (std::size_t g = 0; g < ring->table()->size(); ++g) {
                const int eg = ring->table()->var(g).degree;
                cum->act_right[g].resize(nd);
                // rewrite data per free generator
                struct Rw {
                    std::vector<std::tuple<int, std::size_t, std::size_t, Rational>> terms;
                };
                std::vector<Rw> rw(fdM.free_degrees.size());
                for (std::size_t t = 0; t < fdM.free_degrees.size(); ++t) {
                    const int ft = fdM.free_degrees[t];
                    QVec img = factor->action(false, g, ft).apply(st.free_reps[t]);
                    const int id = ft + eg;
                    if (id > factor->hi || factor->dim(id) == 0)
                        continue;
                    const auto& dc = fdM.cols[static_cast<std::size_t>(id - factor->lo)];
                    QVec pc = dc.to_pairs.apply(img);
                    for (std::size_t cidx = 0; cidx < dc.pairs.size(); ++cidx)
                        if (!flagcat::is_zero(pc[cidx]))
                            rw[t].terms.emplace_back(dc.left_degree[cidx], dc.pairs[cidx].first,
                                                     dc.pairs[cidx].second, pc[cidx]);
                }
                for (int d = lo; d <= hi; ++d) {
                    QMatrix mat(static_cast<std::size_t>(cum->dim(d + eg)),
                                static_cast<std::size_t>(cum->dim(d)));
                    const int dd = d + eg;
                    if (dd >= lo && dd <= hi) {
                        for (const auto& blk : st.layout[static_cast<std::size_t>(d - lo)]) {
                            for (const auto& [ldeg, midx, s, coeff] : rw[blk.t].terms) {
                                const QMatrix& A = actx(ldeg, midx, blk.prefix_deg);
                                for (const auto& dblk :
                                     st.layout[static_cast<std::size_t>(dd - lo)]) {
                                    if (dblk.t != s || dblk.prefix_deg != blk.prefix_deg + ldeg)
                                        continue;
                                    for (std::size_t r = 0; r < A.rows(); ++r)
                                        for (std::size_t cc = 0; cc < A.cols(); ++cc)
                                            mat.at(dblk.offset + r, blk.offset + cc) =
                                                mat.at(dblk.offset + r, blk.offset + cc) +
                                                coeff * A.at(r, cc);
                                }
                            }
                        }
                    }
                    cum->act_right[g][static_cast<std::size_t>(d - lo)] = std::move(mat);
                }
            }
        }
        attach_left_free(cum);
        st.cumulative = cum;
        c.steps_.push_back(std::move(st));
    }
    return c;
}

const BimodPtr& ChainCarrier::dense() const
{
    if (zero_)
        return zero_dense_;
    return steps_.back().cumulative;
}

FlagRingPtr ChainCarrier::boundary_ring(std::size_t j) const
{
    if (zero_)
        return j == 0 ? zero_left_ : zero_right_;
    if (j == 0)
        return steps_.front().factor->left;
    return steps_.at(j - 1).factor->right;
}

std::vector<ChainCarrier::RingToken> ChainCarrier::decompose(int degree, std::size_t index) const
{
    std::vector<RingToken> out(steps_.size());
    int d = degree;
    std::size_t idx = index;
    for (std::size_t i = steps_.size(); i-- > 1;) {
        const Step& st = steps_[i];
        const auto& blocks = st.layout[static_cast<std::size_t>(d - st.cumulative->lo)];
        bool found = false;
        for (const auto& blk : blocks) {
            if (idx >= blk.offset && idx < blk.offset + blk.size) {
                out[i] = RingToken{i, st.free_reps[blk.t], st.free_ring_degs[blk.t]};
                idx -= blk.offset;
                d = blk.prefix_deg;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::logic_error("ChainCarrier::decompose: index outside layout");
    }
    const Step& st0 = steps_[0];
    QVec unit(static_cast<std::size_t>(st0.cumulative->dim(d)), Rational(0));
    unit[idx] = 1;
    out[0] = RingToken{0, std::move(unit), d - st0.spec.shift};
    return out;
}

QVec ChainCarrier::append_element(std::size_t slot, bool have_state, int state_deg,
                                  const QVec& state, const QVec& elt, int elt_ring_deg,
                                  int* out_deg) const
{
    const Step& st = steps_.at(slot);
    const int internal = elt_ring_deg + st.spec.shift;
    if (!have_state) {
        if (slot != 0)
            throw std::logic_error("ChainCarrier::append_element: missing prefix");
        *out_deg = internal;
        return elt;
    }
    const BimodPtr& prev = steps_.at(slot - 1).cumulative;
    const LeftFreeData& fdM = *st.factor->free_data;
    const int target_deg = state_deg + internal;
    *out_deg = target_deg;
    const BimodPtr& cum = st.cumulative;
    QVec outv(static_cast<std::size_t>(cum->dim(target_deg)), Rational(0));
    if (internal < st.factor->lo || internal > st.factor->hi)
        return outv;
    const auto& dc = fdM.cols[static_cast<std::size_t>(internal - st.factor->lo)];
    QVec pc = dc.to_pairs.apply(elt);
    for (std::size_t cidx = 0; cidx < dc.pairs.size(); ++cidx) {
        if (flagcat::is_zero(pc[cidx]))
            continue;
        const int ldeg = dc.left_degree[cidx];
        const MultiPoly mono = st.factor->left->basis(ldeg).at(dc.pairs[cidx].first);
        QVec moved = prev->action_poly(false, mono, state_deg).apply(state);
        const std::size_t t = dc.pairs[cidx].second;
        if (target_deg < cum->lo || target_deg > cum->hi)
            continue;
        for (const auto& blk :
             st.layout[static_cast<std::size_t>(target_deg - cum->lo)]) {
            if (blk.t != t || blk.prefix_deg != state_deg + ldeg)
                continue;
            for (std::size_t r = 0; r < moved.size(); ++r)
                outv[blk.offset + r] += pc[cidx] * moved[r];
        }
    }
    return outv;
}

QVec ChainCarrier::eval_tokens(const std::vector<Token>& tokens, int expect_deg) const
{
    std::optional<MultiPoly> pending;
    bool have = false;
    int state_deg = 0;
    QVec state;
    std::size_t next_slot = 0;
    for (const Token& tok : tokens) {
        if (std::holds_alternative<BoundaryToken>(tok)) {
            const MultiPoly& w = std::get<BoundaryToken>(tok).elt;
            if (!pending)
                pending = w;
            else {
                if (pending->table() != w.table())
                    throw std::logic_error("eval_tokens: boundary ring mismatch");
                pending = *pending * w;
            }
            continue;
        }
        const RingToken& rt = std::get<RingToken>(tok);
        if (rt.slot != next_slot)
            throw std::logic_error("eval_tokens: slots out of order");
        const Step& st = steps_.at(rt.slot);
        QVec v = rt.coords;
        int rdeg = rt.ring_deg;
        if (pending) {
            const FlagRingPtr bring = boundary_ring(rt.slot);
            MultiPoly p = bring->normal_form(*pending);
            int pd = 0;
            p.is_homogeneous(&pd);
            if (p.is_zero()) {
                pd = pending->max_degree();
                pending->is_homogeneous(&pd);
            }
            // image of the boundary element inside this factor's ring
            MultiPoly img(st.spec.ring->table());
            bool use_lo = !st.spec.reversed;
            img = MultiPoly(st.spec.ring->table(), Rational(0));
            for (const auto& [mono, c] : p.terms()) {
                MultiPoly m(st.spec.ring->table(), c);
                for (std::size_t vi = 0; vi < mono.size(); ++vi)
                    for (int rep = 0; rep < mono[vi]; ++rep) {
                        const GradedVariable& gv = bring->table()->var(vi);
                        m = m * (use_lo ? st.spec.ring->corner_image_lo(gv)
                                        : st.spec.ring->corner_image_hi(gv));
                    }
                img = img + m;
            }
            img = st.spec.ring->normal_form(img);
            if (img.is_zero()) {
                v.assign(static_cast<std::size_t>(st.spec.ring->dim(rdeg + pd)), Rational(0));
                rdeg += pd;
            } else {
                MultiPoly elt = st.spec.ring->from_coords(v, rdeg);
                elt = st.spec.ring->normal_form(img * elt);
                rdeg += pd;
                v = st.spec.ring->coords(elt, rdeg);
            }
            pending.reset();
        }
        int out_deg = 0;
        state = append_element(rt.slot, have, state_deg, state, v, rdeg, &out_deg);
        state_deg = out_deg;
        have = true;
        ++next_slot;
    }
    if (pending) {
        if (have) {
            MultiPoly p = boundary_ring(steps_.size())->normal_form(*pending);
            int pd = 0;
            pending->is_homogeneous(&pd);
            QMatrix act = dense()->action_poly(false, p, state_deg, pd);
            state = act.apply(state);
            state_deg += pd;
        } else {
            // fully contracted: the chain must be a single identity factor
            if (steps_.size() != 1)
                throw std::logic_error("eval_tokens: no ring tokens for a longer chain");
            const Step& st = steps_[0];
            MultiPoly p = st.spec.ring->normal_form(*pending);
            int pd = 0;
            pending->is_homogeneous(&pd);
            state = st.spec.ring->coords(p, pd);
            state_deg = pd + st.spec.shift;
            have = true;
        }
    }
    if (!have)
        throw std::logic_error("eval_tokens: empty token stream");
    if (state_deg != expect_deg) {
        if (!std::all_of(state.begin(), state.end(), [](const Rational& r) { return sgn(r) == 0; }))
            throw std::logic_error("eval_tokens: degree bookkeeping mismatch");
        state.assign(static_cast<std::size_t>(dense()->dim(expect_deg)), Rational(0));
    }
    if (state.size() != static_cast<std::size_t>(dense()->dim(expect_deg)))
        throw std::logic_error("eval_tokens: dimension mismatch");
    return state;
}

BimoduleHom ChainCarrier::local_op(
    std::size_t j, std::size_t len, const ChainCarrier& target,
    const std::function<std::vector<std::pair<Rational, std::vector<Token>>>(
        const std::vector<RingToken>&, int)>& transform,
    int op_degree) const
{
    BimoduleHom h = zero_hom(dense(), target.dense(), op_degree);
    const BimodPtr& src = dense();
    const int slot_shift = static_cast<int>(target.size()) - static_cast<int>(size());
    for (int d = src->lo; d <= src->hi; ++d) {
        const int nd = src->dim(d);
        if (nd == 0 || target.dense()->dim(d + op_degree) == 0)
            continue;
        QMatrix mat(static_cast<std::size_t>(target.dense()->dim(d + op_degree)),
                    static_cast<std::size_t>(nd));
        for (std::size_t idx = 0; idx < static_cast<std::size_t>(nd); ++idx) {
            std::vector<RingToken> toks = decompose(d, idx);
            std::vector<RingToken> segment(toks.begin() + static_cast<long>(j),
                                           toks.begin() + static_cast<long>(j + len));
            auto pieces = transform(segment, d);
            for (const auto& [coeff, repl] : pieces) {
                std::vector<Token> full;
                for (std::size_t s = 0; s < j; ++s)
                    full.emplace_back(toks[s]);
                for (const Token& t : repl)
                    full.push_back(t);
                for (std::size_t s = j + len; s < toks.size(); ++s) {
                    RingToken rt = toks[s];
                    rt.slot = static_cast<std::size_t>(static_cast<int>(s) + slot_shift);
                    full.emplace_back(std::move(rt));
                }
                QVec img = target.eval_tokens(full, d + op_degree);
                for (std::size_t r = 0; r < img.size(); ++r)
                    mat.at(r, idx) = mat.at(r, idx) + coeff * img[r];
            }
        }
        h.mats[static_cast<std::size_t>(d - src->lo)] = std::move(mat);
    }
    return h;
}

BimoduleHom ChainCarrier::factor_mul(std::size_t slot, const MultiPoly& m) const
{
    const FlagRingPtr& ring = steps_.at(slot).spec.ring;
    MultiPoly mn = ring->normal_form(m);
    int md = 0;
    if (!mn.is_homogeneous(&md))
        throw std::invalid_argument("factor_mul: inhomogeneous multiplier");
    if (mn.is_zero())
        m.is_homogeneous(&md);
    auto transform = [&](const std::vector<RingToken>& seg, int) {
        const RingToken& tok = seg.at(0);
        MultiPoly elt = ring->from_coords(tok.coords, tok.ring_deg);
        MultiPoly prod = ring->normal_form(mn * elt);
        RingToken out{tok.slot, ring->coords(prod, tok.ring_deg + md), tok.ring_deg + md};
        std::vector<std::pair<Rational, std::vector<Token>>> res;
        res.emplace_back(Rational(1), std::vector<Token>{Token(out)});
        return res;
    };
    return local_op(slot, 1, *this, transform, md);
}

BimoduleHom ChainCarrier::factor_endo(std::size_t slot, const std::vector<QMatrix>& op,
                                      int op_lo_ring_deg, int rdeg) const
{
    const FlagRingPtr& ring = steps_.at(slot).spec.ring;
    auto transform = [&](const std::vector<RingToken>& seg, int) {
        const RingToken& tok = seg.at(0);
        const std::size_t oi = static_cast<std::size_t>(tok.ring_deg - op_lo_ring_deg);
        QVec out = oi < op.size() ? op[oi].apply(tok.coords)
                                  : QVec(static_cast<std::size_t>(ring->dim(tok.ring_deg + rdeg)),
                                         Rational(0));
        RingToken ot{tok.slot, std::move(out), tok.ring_deg + rdeg};
        std::vector<std::pair<Rational, std::vector<Token>>> res;
        res.emplace_back(Rational(1), std::vector<Token>{Token(ot)});
        return res;
    };
    return local_op(slot, 1, *this, transform, rdeg);
}

BimoduleHom ChainCarrier::insert_pair(std::size_t j, const ChainCarrier& target,
                                      const ChainCarrier& pair2, const BimoduleHom& cup) const
{
    // cup image of 1 decomposed into two-factor tokens
    const int cup_deg = cup.degree;
    QMatrix m0 = cup.mat(cup.src->lo);
    std::vector<std::pair<Rational, std::vector<Token>>> pieces;
    const int img_deg = cup.src->lo + cup_deg;
    for (std::size_t i = 0; i < m0.rows(); ++i) {
        if (flagcat::is_zero(m0.at(i, 0)))
            continue;
        auto toks = pair2.decompose(img_deg, i);
        std::vector<Token> repl;
        for (auto& rt : toks) {
            rt.slot += j;
            repl.emplace_back(rt);
        }
        pieces.emplace_back(m0.at(i, 0), std::move(repl));
    }
    auto transform = [pieces](const std::vector<RingToken>&, int) { return pieces; };
    return local_op(j, 0, target, transform, cup_deg);
}

BimoduleHom ChainCarrier::contract_pair(std::size_t j, const ChainCarrier& target,
                                        const ChainCarrier& pair2, const BimoduleHom& cap) const
{
    const FlagRingPtr bring = pair2.boundary_ring(2); // the cap lands in this corner ring
    auto transform = [&, j](const std::vector<RingToken>& seg, int) {
        std::vector<ChainCarrier::Token> two;
        RingToken a = seg.at(0), b = seg.at(1);
        a.slot = 0;
        b.slot = 1;
        const int ideg = a.ring_deg + pair2.step(0).spec.shift + b.ring_deg +
                         pair2.step(1).spec.shift;
        two.emplace_back(a);
        two.emplace_back(b);
        QVec v = pair2.eval_tokens(two, ideg);
        QVec w = cap.mat(ideg).apply(v);
        const int out_ring_deg = ideg + cap.degree - cap.dst->lo; // identity carrier shift
        MultiPoly welt = cap.dst->left->from_coords(w, out_ring_deg);
        std::vector<std::pair<Rational, std::vector<Token>>> res;
        res.emplace_back(Rational(1), std::vector<Token>{Token(BoundaryToken{welt})});
        return res;
    };
    return local_op(j, 2, target, transform, cap.degree);
}

BimoduleHom ChainCarrier::pair_endo(std::size_t j, const ChainCarrier& pair2,
                                    const BimoduleHom& op) const
{
    auto transform = [&, j](const std::vector<RingToken>& seg, int) {
        std::vector<ChainCarrier::Token> two;
        RingToken a = seg.at(0), b = seg.at(1);
        a.slot = 0;
        b.slot = 1;
        const int ideg = a.ring_deg + pair2.step(0).spec.shift + b.ring_deg +
                         pair2.step(1).spec.shift;
        two.emplace_back(a);
        two.emplace_back(b);
        QVec v = pair2.eval_tokens(two, ideg);
        QVec w = op.mat(ideg).apply(v);
        std::vector<std::pair<Rational, std::vector<Token>>> res;
        const int odeg = ideg + op.degree;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (flagcat::is_zero(w[i]))
                continue;
            auto toks = pair2.decompose(odeg, i);
            std::vector<Token> repl;
            for (auto& rt : toks) {
                rt.slot += j;
                repl.emplace_back(rt);
            }
            res.emplace_back(w[i], std::move(repl));
        }
        return res;
    };
    return local_op(j, 2, *this, transform, op.degree);
}

BimodPtr tensor_over_naive(const BimodPtr& a, const FlagRingPtr& mid, const BimodPtr& b)
{
    if (a->right != mid || b->left != mid)
        throw std::invalid_argument("tensor_over_naive: middle ring mismatch");
    auto r = std::make_shared<GradedBimodule>();
    r->left = a->left;
    r->right = b->right;
    r->label = a->label + " (x)naive " + b->label;
    if (a->is_zero() || b->is_zero() || a->hi < a->lo || b->hi < b->lo) {
        r->lo = 0;
        r->hi = -1;
        return r;
    }
    r->lo = a->lo + b->lo;
    r->hi = a->hi + b->hi;
    const std::size_t nd = static_cast<std::size_t>(r->hi - r->lo + 1);
    r->dims.assign(nd, 0);

    struct DegData {
        std::vector<std::tuple<int, std::size_t, std::size_t>> cols; // (i, ai, bj)
        std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> index;
        Echelon rel{0};
        std::vector<std::size_t> basis_cols;
    };
    std::vector<DegData> data(nd);
    for (int d = r->lo; d <= r->hi; ++d) {
        DegData& dd = data[static_cast<std::size_t>(d - r->lo)];
        for (int i = a->lo; i <= a->hi; ++i)
            for (std::size_t ai = 0; ai < static_cast<std::size_t>(a->dim(i)); ++ai)
                for (std::size_t bj = 0; bj < static_cast<std::size_t>(b->dim(d - i)); ++bj) {
                    dd.index[{i, ai, bj}] = dd.cols.size();
                    dd.cols.emplace_back(i, ai, bj);
                }
        dd.rel = Echelon(dd.cols.size());
        for (std::size_t g = 0; g < mid->table()->size(); ++g) {
            const int eg = mid->table()->var(g).degree;
            for (int i = a->lo; i <= a->hi; ++i) {
                QMatrix ra = a->action(false, g, i);        // a_i -> a_{i+eg}
                QMatrix lb = b->action(true, g, d - i - eg); // b_{d-i-eg} -> b_{d-i}
                for (std::size_t ai = 0; ai < static_cast<std::size_t>(a->dim(i)); ++ai)
                    for (std::size_t bj = 0; bj < static_cast<std::size_t>(b->dim(d - i - eg));
                         ++bj) {
                        QVec row(dd.cols.size(), Rational(0));
                        bool nonzero = false;
                        for (std::size_t c = 0; c < static_cast<std::size_t>(a->dim(i + eg)); ++c)
                            if (!flagcat::is_zero(ra.at(c, ai))) {
                                row[dd.index.at({i + eg, c, bj})] += ra.at(c, ai);
                                nonzero = true;
                            }
                        for (std::size_t c = 0; c < static_cast<std::size_t>(b->dim(d - i)); ++c)
                            if (!flagcat::is_zero(lb.at(c, bj))) {
                                row[dd.index.at({i, ai, c})] -= lb.at(c, bj);
                                nonzero = true;
                            }
                        if (nonzero)
                            dd.rel.add_row(std::move(row));
                    }
            }
        }
        dd.basis_cols = dd.rel.free_columns();
        r->dims[static_cast<std::size_t>(d - r->lo)] = static_cast<int>(dd.basis_cols.size());
    }
    auto reduce_to_basis = [&](int d, QVec full) -> QVec {
        const DegData& dd = data[static_cast<std::size_t>(d - r->lo)];
        dd.rel.reduce(full);
        QVec out(dd.basis_cols.size());
        for (std::size_t c = 0; c < dd.basis_cols.size(); ++c)
            out[c] = full[dd.basis_cols[c]];
        return out;
    };
    auto build = [&](bool left_side) {
        const FlagRingPtr& ring = left_side ? r->left : r->right;
        std::vector<std::vector<QMatrix>> bank(ring->table()->size());
        for (std::size_t g = 0; g < ring->table()->size(); ++g) {
            const int eg = ring->table()->var(g).degree;
            bank[g].resize(nd);
            for (int d = r->lo; d <= r->hi; ++d) {
                const DegData& dd = data[static_cast<std::size_t>(d - r->lo)];
                const int dtgt = d + eg;
                QMatrix mat(static_cast<std::size_t>(r->dim(dtgt)),
                            dd.basis_cols.size());
                if (dtgt >= r->lo && dtgt <= r->hi) {
                    const DegData& du = data[static_cast<std::size_t>(dtgt - r->lo)];
                    for (std::size_t c = 0; c < dd.basis_cols.size(); ++c) {
                        auto [i, ai, bj] = dd.cols[dd.basis_cols[c]];
                        QVec full(du.cols.size(), Rational(0));
                        if (left_side) {
                            QMatrix la = a->action(true, g, i);
                            for (std::size_t t = 0; t < static_cast<std::size_t>(a->dim(i + eg));
                                 ++t)
                                if (!flagcat::is_zero(la.at(t, ai)))
                                    full[du.index.at({i + eg, t, bj})] += la.at(t, ai);
                        } else {
                            QMatrix rb = b->action(false, g, d - i);
                            for (std::size_t t = 0;
                                 t < static_cast<std::size_t>(b->dim(d - i + eg)); ++t)
                                if (!flagcat::is_zero(rb.at(t, bj)))
                                    full[du.index.at({i, ai, t})] += rb.at(t, bj);
                        }
                        QVec red = reduce_to_basis(dtgt, std::move(full));
                        for (std::size_t t = 0; t < red.size(); ++t)
                            mat.at(t, c) = red[t];
                    }
                }
                bank[g][static_cast<std::size_t>(d - r->lo)] = std::move(mat);
            }
        }
        return bank;
    };
    r->act_left = build(true);
    r->act_right = build(false);
    return r;
}

} // namespace flagcat
