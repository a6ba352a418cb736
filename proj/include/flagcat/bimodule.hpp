#pragma once

#include "flagcat/flagring.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace flagcat {

class GradedBimodule;
using BimodPtr = std::shared_ptr<const GradedBimodule>;

/* One-sided freeness certificate: the module is free over its left ring with
 * homogeneous basis elements of the listed internal degrees, and column c of
 * rewrite[d] expresses the c-th (left-monomial, free-basis) pair in module
 * coordinates.  Solvers use it to shrink hom computations. */
struct LeftFreeData {
    std::vector<int> free_degrees; // internal degree of each free generator
    // per internal degree: pairs (left basis index at matching degree, free index)
    struct DegreeCols {
        std::vector<std::pair<std::size_t, std::size_t>> pairs; // (L-basis col, free idx)
        std::vector<int> left_degree;                           // degree of the L factor
        QMatrix to_module;                                      // module coords per pair
        QMatrix to_pairs;                                       // inverse
    };
    std::vector<DegreeCols> cols; // indexed by d - lo
};

/* Finite graded (L,R)-bimodule given by per-degree dimensions and the action
 * matrices of every polynomial generator of the two corner rings.  Kernels,
 * images, quotients and homology all land back in this representation. */
class GradedBimodule {
public:
    FlagRingPtr left, right;
    int lo = 0, hi = -1;    // internal degree window, empty when hi < lo
    std::vector<int> dims;  // indexed by d - lo
    // act_left[g][d - lo]: dims(d + deg g) x dims(d), g indexing left->table()
    std::vector<std::vector<QMatrix>> act_left, act_right;
    std::string label;
    std::optional<LeftFreeData> free_data;

    int dim(int d) const
    {
        return (d < lo || d > hi) ? 0 : dims[static_cast<std::size_t>(d - lo)];
    }
    bool is_zero() const;
    LaurentPoly graded_dims() const;
    Rational total_dim() const;

    // Action of a single table generator; zero-sized matrices off-window.
    QMatrix action(bool left_side, std::size_t gen, int d) const;
    // Action of an arbitrary homogeneous polynomial of the corner ring.
    // pdeg pins the degree when p is the zero polynomial.
    QMatrix action_poly(bool left_side, const MultiPoly& p, int d, int pdeg = -1) const;

    void validate() const; // commuting, degree-preserving actions
};

BimodPtr make_zero_bimodule(FlagRingPtr left, FlagRingPtr right, std::string label = "0");
BimodPtr shift_bimodule(const BimodPtr& m, int s);
BimodPtr direct_sum(const std::vector<BimodPtr>& parts);
// direct sum of f_a copies of M<a>; f must have non-negative coefficients
BimodPtr direct_sum_f(const BimodPtr& m, const LaurentPoly& f);

/* Degree-d homomorphism of graded bimodules: matrices map the degree-i
 * component of src to the degree-(i+d) component of dst. */
struct BimoduleHom {
    BimodPtr src, dst;
    int degree = 0;
    std::vector<QMatrix> mats; // indexed by i - src->lo

    QMatrix mat(int d) const; // shape-correct zero matrix off-window
    bool is_zero() const;
    bool operator==(const BimoduleHom& o) const;
    BimoduleHom operator+(const BimoduleHom& o) const;
    BimoduleHom operator-(const BimoduleHom& o) const;
    BimoduleHom scaled(const Rational& c) const;
    void validate() const; // intertwines both actions
};

BimoduleHom zero_hom(const BimodPtr& src, const BimodPtr& dst, int degree);
BimoduleHom identity_hom(const BimodPtr& m);
BimoduleHom compose(const BimoduleHom& g, const BimoduleHom& f); // g after f
bool is_isomorphism(const BimoduleHom& f);

// Basis of the space of degree-d bimodule homomorphisms.  Uses the left-free
// fast path when src carries a LeftFreeData certificate.
std::vector<BimoduleHom> hom_space_basis(const BimodPtr& m, const BimodPtr& mt, int d);
LaurentPoly hom_graded_dims(const BimodPtr& m, const BimodPtr& mt, int dmin, int dmax);

// Searches the degree-0 hom space for an isomorphism (tries basis elements,
// then small integer combinations).  Empty optional when none found.
std::optional<BimoduleHom> find_isomorphism(const BimodPtr& m, const BimodPtr& mt);

/* Sub-bimodule data: per-degree inclusion columns (independent, action
 * closed). */
struct SubData {
    std::vector<QMatrix> incl; // indexed by d - lo of the ambient module
};

SubData kernel_sub(const BimoduleHom& f);
SubData image_sub(const BimoduleHom& f);
SubData span_closure(const BimodPtr& m, const std::vector<std::pair<int, QVec>>& seeds);

struct SubQuotient {
    BimodPtr module;
    // inclusion (sub) or projection (quotient) relating it to the ambient one
    BimoduleHom map;
};

SubQuotient sub_bimodule(const BimodPtr& m, const SubData& sub, std::string label);
SubQuotient quotient_bimodule(const BimodPtr& m, const SubData& sub, std::string label);
// sub/img must both live in m with img contained in sub
SubQuotient subquotient_bimodule(const BimodPtr& m, const SubData& sub, const SubData& img,
                                 std::string label);

// The carrier of a flag ring as a bimodule over its corner rings, optionally
// with the two corners swapped (decreasing sequences) and a grading shift.
BimodPtr ring_carrier(const FlagRingPtr& ring, bool reversed, int shift, std::string label);

/* Adjoint shift bookkeeping for E and F generators. */
struct OneMorData {
    char kind; // 'E' or 'F'
    int weight;
    int shift;
    bool operator==(const OneMorData& o) const
    {
        return kind == o.kind && weight == o.weight && shift == o.shift;
    }
};
OneMorData adjoint_data(char kind, int n, int s, char side);

} // namespace flagcat
