#pragma once

#include "flagcat/chain.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace flagcat {

/* Signed sequence of E (+1) and F (-1) letters, leftmost letter acting
 * last, applied at source weight n inside the level-N flag 2-category. */
struct SignedSequence {
    std::vector<int> signs; // +1 for E, -1 for F
    int n = 0;
    int N = 0;

    int abs_sum() const;          // sum of signs
    std::string str() const;
    static std::vector<int> parse_signs(const std::string& text); // "+,-" etc.
};

struct DividedPowerEntry {
    int sign;  // +1 E, -1 F
    int power; // a_i >= 1
};

// Objects: weight n maps to H_{k;N} with n = 2k - N, the zero ring otherwise.
FlagRingPtr gamma_object(int n, int N);

// One-morphisms as left-parenthesized tensor chains of one-step carriers.
std::shared_ptr<const ChainCarrier> gamma_onemor(const SignedSequence& seq, int shift = 0);

// Divided power carriers E^{(a)} and F^{(b)} (thick flag rings with shift).
std::shared_ptr<const ChainCarrier> divided_power_onemor(const std::vector<DividedPowerEntry>& word,
                                                         int n, int N, int shift = 0);

// The E^a carrier realized as a single iterated flag ring with shift r_a.
std::shared_ptr<const ChainCarrier> e_power_ring(int a, int n, int N);

// Identity carrier of weight n.
std::shared_ptr<const ChainCarrier> identity_onemor(int n, int N, int shift = 0);

// nilHecke generators on the E^a ring carrier.
BimoduleHom dot_on_power(int i, int a, int n, int N);      // degree +2
BimoduleHom crossing_on_power(int i, int a, int n, int N); // degree -2

// dot on the E or F factor at the given slot of a word chain.
BimoduleHom dot_on_chain(const ChainCarrier& chain, std::size_t slot);

struct NilHeckeMatrixReport {
    bool pass = true;
    std::string detail;
};
NilHeckeMatrixReport check_nilhecke_on_carrier(int a, int n, int N);

/* Idempotent splitting through the thick carrier. */
struct SplitData {
    BimoduleHom e_a;        // idempotent on E^a
    BimoduleHom projection; // E^a -> E^{(a)}<a(a-1)/2>
    BimoduleHom inclusion;  // E^{(a)}<a(a-1)/2> -> E^a
    BimodPtr divided_power; // E^{(a)} carrier (unshifted)
};
BimoduleHom idempotent_e(int a, int n, int N);
SplitData split_divided_power(int a, int n, int N);

/* Solved cup/cap data for one weight. */
struct AdjunctionData {
    int n = 0, N = 0;
    std::shared_ptr<const ChainCarrier> id, fe, ef;
    BimoduleHom cup_fe; // 1_n -> FE1_n, degree 1+n
    BimoduleHom cup_ef; // 1_n -> EF1_n, degree 1-n
    BimoduleHom cap_fe; // FE1_n -> 1_n, degree 1+n
    BimoduleHom cap_ef; // EF1_n -> 1_n, degree 1-n
};
const AdjunctionData& solve_adjunction_data(int n, int N);

// Closed bubble with the given number of dots; clockwise uses the EF pair.
BimoduleHom bubble(int n, int N, bool clockwise, int dots);

struct CheckReport {
    bool pass = true;
    std::string detail;
};

// Zigzag identities for both adjunctions at weight n.
CheckReport verify_zigzags(int n, int N);
// Bubble positivity, degree-zero normalization, and dot-side cyclicity.
CheckReport verify_bubbles(int n, int N, int extra_dots = 2);
// The dot-slide identity for y_{N-k,n} through the FE cup.
CheckReport verify_cup_slide(int n, int N);

/* Graded-dimension checks of the direct sum decompositions. */
struct DecompReport {
    bool pass = true;
    LaurentPoly lhs, rhs;
};
enum class DecompKind { EaEb, EaFb, FbEa };
DecompReport check_decomposition_dims(DecompKind kind, int a, int b, int n, int N);

// Invertibility of the sl2-relation map at weight n (both signs of n).
CheckReport check_sl2_invertibility(int n, int N);

struct EndRanks {
    LaurentPoly computed, predicted;
    bool match() const { return computed == predicted; }
};
EndRanks end_space_ranks(int a, int n, int N);

// Sideways crossing FE1_n -> EF1_n (n >= 0 flavor) or EF -> FE (n <= 0).
BimoduleHom sideways_crossing(int n, int N, bool fe_to_ef);

} // namespace flagcat
