#pragma once

#include "flagcat/bimodule.hpp"

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace flagcat {

/* One tensor factor: a flag ring viewed as a bimodule between its corner
 * rings, possibly with the corners swapped, with a grading shift. */
struct FactorSpec {
    FlagRingPtr ring;
    bool reversed = false;
    int shift = 0;
    std::string label;
};

/* Left-parenthesized tensor chain of flag-ring carriers over their shared
 * corner rings.  Tensor products over the middle rings are realized through
 * verified free-module structures (no quotients): the chain basis in each
 * degree is (basis of the first factor) x (free bases of the later factors).
 *
 * Every member carrier and every cumulative prefix carries a LeftFreeData
 * certificate, so hom spaces out of chains use the fast left-free solver. */
class ChainCarrier {
public:
    struct LayoutBlock {
        std::size_t t;      // free index of the newest factor
        int prefix_deg;     // internal degree of the prefix part
        std::size_t offset; // slice [offset, offset+size) of the chain basis
        std::size_t size;
    };
    struct Step {
        FactorSpec spec;
        BimodPtr factor;     // elementary dense carrier with LeftFreeData
        BimodPtr cumulative; // chain up to and including this factor
        std::vector<std::vector<LayoutBlock>> layout; // per cumulative degree
        std::vector<QVec> free_reps; // ring coords of the factor free basis
        std::vector<int> free_ring_degs;
    };

    static ChainCarrier build(const std::vector<FactorSpec>& specs);
    static ChainCarrier identity(const FlagRingPtr& grassmannian, int shift = 0);

    bool is_zero() const { return zero_; }
    std::size_t size() const { return steps_.size(); }
    const Step& step(std::size_t i) const { return steps_.at(i); }
    const BimodPtr& dense() const;
    FlagRingPtr boundary_ring(std::size_t j) const; // j = 0..size(): left of factor j

    /* Token stream evaluated left to right into a chain: ring elements fill
     * the factor slots in order; boundary elements multiply across. */
    struct RingToken {
        std::size_t slot;
        QVec coords; // factor-ring coordinates
        int ring_deg;
    };
    struct BoundaryToken {
        MultiPoly elt; // element of the boundary corner ring at that point
    };
    using Token = std::variant<RingToken, BoundaryToken>;

    QVec eval_tokens(const std::vector<Token>& tokens, int expect_deg) const;

    // Decompose a chain basis element into one ring token per slot.
    std::vector<RingToken> decompose(int degree, std::size_t index) const;

    // Multiplication by a factor-ring element on the given slot.
    BimoduleHom factor_mul(std::size_t slot, const MultiPoly& m) const;

    // Conjugate of a factor-ring operator (matrices per ring degree, raw
    // degree shift rdeg) acting on the given slot.
    BimoduleHom factor_endo(std::size_t slot, const std::vector<QMatrix>& op_by_ring_deg,
                            int op_lo_ring_deg, int rdeg) const;

    // Whisker of a bimodule map out of the identity carrier at boundary j:
    // cup: 1 -> (C1 C2); target is this chain with the two factors spliced in.
    BimoduleHom insert_pair(std::size_t j, const ChainCarrier& target, const ChainCarrier& pair2,
                            const BimoduleHom& cup) const;

    // Whisker of a map (C_j C_{j+1}) -> 1<s> contracting two adjacent slots.
    BimoduleHom contract_pair(std::size_t j, const ChainCarrier& target, const ChainCarrier& pair2,
                              const BimoduleHom& cap) const;

    // Whisker of an endomorphism of the 2-chain formed by slots j, j+1.
    BimoduleHom pair_endo(std::size_t j, const ChainCarrier& pair2, const BimoduleHom& op) const;

private:
    bool zero_ = false;
    FlagRingPtr zero_left_, zero_right_;
    BimodPtr zero_dense_;
    std::vector<Step> steps_;

    QVec append_element(std::size_t slot, bool have_state, int state_deg, const QVec& state,
                        const QVec& elt_ring_coords, int elt_ring_deg, int* out_deg) const;
    BimoduleHom local_op(std::size_t j, std::size_t len, const ChainCarrier& target,
                         const std::function<std::vector<std::pair<Rational, std::vector<Token>>>(
                             const std::vector<RingToken>&, int)>& transform,
                         int op_degree) const;
};

// Reference tensor product: per-degree quotient of the plain tensor product
// by the middle-balancing relations.  Used as the oracle the chain builder
// is checked against.
BimodPtr tensor_over_naive(const BimodPtr& a, const FlagRingPtr& mid, const BimodPtr& b);

// Attach a verified left-free certificate to a dense bimodule; throws when
// the module is not free over its left corner ring.
void attach_left_free(const std::shared_ptr<GradedBimodule>& m);

} // namespace flagcat
