#pragma once

#include "flagcat/laurent.hpp"
#include "flagcat/linalg.hpp"
#include "flagcat/multipoly.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace flagcat {

/* A strictly monotone dimension sequence uk inside C^N.  Single entries are
 * Grassmannians; out-of-range entries give the zero ring. */
struct FlagSequence {
    std::vector<int> entries;
    int N = 0;

    bool strictly_monotone() const;
    bool increasing() const { return entries.size() < 2 || entries[1] > entries[0]; }
    bool in_range() const;
    FlagSequence sorted() const;
    std::string str() const;
};

class FlagRing;
using FlagRingPtr = std::shared_ptr<const FlagRing>;

/* Cohomology ring of a partial flag variety, presented as a graded quotient
 * of a polynomial ring by the product-of-series ideal.  Normal forms, bases
 * and dimensions are computed degree by degree with exact linear algebra and
 * memoized.  Instances are shared through the registry in ring(). */
class FlagRing : public std::enable_shared_from_this<FlagRing> {
public:
    // Registry lookup; seq is sorted internally (the ring does not depend on
    // orientation, only the bimodule structure does).
    static FlagRingPtr make(const FlagSequence& seq);

    const FlagSequence& seq() const { return seq_; } // sorted increasing
    int N() const { return seq_.N; }
    bool is_zero_ring() const { return zero_; }
    bool is_grassmannian() const { return seq_.entries.size() == 1; }
    int corner_lo() const { return seq_.entries.front(); }
    int corner_hi() const { return seq_.entries.back(); }
    int weight_lo() const { return 2 * corner_lo() - N(); }
    int weight_hi() const { return 2 * corner_hi() - N(); }
    int top_degree() const { return top_degree_; }

    const VarTablePtr& table() const { return table_; }
    const std::vector<MultiPoly>& relations() const { return relations_; }

    int dim(int degree) const;
    std::vector<MultiPoly> basis(int degree) const;
    LaurentPoly graded_dimension() const;
    Rational total_dimension() const;

    MultiPoly normal_form(const MultiPoly& p) const;
    bool is_basis_supported(const MultiPoly& p) const;

    // Coordinates of a homogeneous normal form against basis(degree).
    QVec coords(const MultiPoly& p, int degree) const;
    MultiPoly from_coords(const QVec& v, int degree) const;

    // Matrix of multiplication by a homogeneous f on the degree-d component.
    QMatrix mult_matrix(const MultiPoly& f, int degree) const;

    // Corner Grassmannian rings and the generator images of the edge maps.
    FlagRingPtr corner_ring_lo() const;
    FlagRingPtr corner_ring_hi() const;
    MultiPoly corner_image_lo(const GradedVariable& v) const;
    MultiPoly corner_image_hi(const GradedVariable& v) const;

    MultiPoly poly_from_string(const std::string& text) const;
    MultiPoly var(VarFamily family, int index) const;

private:
    explicit FlagRing(const FlagSequence& sorted_seq);

    struct DegreeData {
        std::vector<Monomial> monomials; // descending monomial order
        std::unique_ptr<Echelon> ideal;  // rows: degree-d component of the ideal
        std::vector<std::size_t> basis_cols;
    };
    const DegreeData& degree_data(int degree) const;

    FlagSequence seq_;
    bool zero_ = false;
    int top_degree_ = -1;
    VarTablePtr table_;
    std::vector<MultiPoly> relations_;
    std::vector<int> x_positions_, y_positions_; // table positions per block index
    std::vector<std::pair<std::size_t, std::size_t>> mid_blocks_;
    mutable std::vector<std::optional<DegreeData>> cache_;
};

struct RingElement {
    FlagRingPtr ring;
    MultiPoly value; // always in normal form

    RingElement() = default;
    RingElement(FlagRingPtr r, const MultiPoly& raw);

    RingElement operator+(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator-() const;
    bool operator==(const RingElement& o) const;
    std::string str() const { return value.str(); }
};

// Quotient map of the inverse system on Grassmannian or carrier rings with
// the same block structure: x and y generators truncated, xi/eps fixed.
MultiPoly psi_ring(const FlagRing& big, const FlagRing& small, const MultiPoly& p);
RingElement psi_ring(int N_big, int N_small, const RingElement& e);

// Ring inclusion H_{k,k+a;N} -> H_{k,k+1,...,k+a;N} (eps_j to e_j(xi)) and
// its retraction f -> dd_{w0}(f) rewritten in the eps generators.
MultiPoly thick_include(const FlagRing& thick, const FlagRing& iterated, const MultiPoly& p);
MultiPoly thick_retract(const FlagRing& iterated, const FlagRing& thick, const MultiPoly& p);

// Rewrites a polynomial symmetric in the xi block as a polynomial in the
// elementary symmetric functions (eps variables of the target table).
MultiPoly symmetric_to_elementary(const MultiPoly& sym, VarTablePtr target);

FlagRingPtr grassmannian(int k, int N);
FlagRingPtr iterated_ring(int k, int a, int N);      // (k, k+1, ..., k+a)
FlagRingPtr thick_ring(int k, int a, int N);         // (k, k+a)

} // namespace flagcat
