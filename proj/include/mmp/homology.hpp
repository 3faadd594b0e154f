#pragma once

#include <string>
#include <vector>

#include "mmp/chain.hpp"

namespace mmp {

// A homology class over the lattice <l, x1,...,xN> with l.l = 1, xi.xi = -1.
// Terms are signed 1-based basis handles in display order: +-1 is l, +-(k+1)
// is x_k; every coefficient is a unit. Term order is load-bearing for the
// blow-up bookkeeping (the head of a class is its first basis element).
struct HClass {
    std::vector<int> terms;

    friend bool operator==(const HClass&, const HClass&) = default;
};

int pairing(const HClass& a, const HClass& b);

// Classes of one linear configuration: row 0 is the +1 curve (class l), the
// rest follow the chain left to right. Consecutive rows pair to 1,
// non-consecutive to 0, and each row's self-pairing matches selfints.
struct EmbeddingData {
    std::size_t rank = 0;            // exceptional classes x1..xN
    std::vector<HClass> rows;
    std::vector<int> selfints;

    void assert_sound() const;
    std::vector<std::vector<int>> matrix() const;  // rows x (1 + rank), column 0 = l
};

// Lexicographically least coefficient matrix over permutations of the
// exceptional basis (l fixed). Idempotent; a complete invariant of
// basis-relabeling equivalence.
EmbeddingData canonicalize(const EmbeddingData& d);

std::string embedding_csv(const EmbeddingData& d);

// ---------------------------------------------------------------------------
// Zero strings
// ---------------------------------------------------------------------------

// Reduction decider: repeatedly delete the leftmost entry equal to 1 and
// decrement its neighbors; accept exactly when (1,1) is reached.
bool is_zero_string(const std::vector<int>& k);

// All strings with 1 <= k_i <= bounds_i accepted by is_zero_string,
// lexicographically ordered. Depth-first from the right; branches whose
// proper suffix value leaves (0, inf) are pruned exactly.
std::vector<std::vector<int>> enumerate_zero_strings(const std::vector<int>& bounds);

// ---------------------------------------------------------------------------
// Rational homology disk data of class-T0 chains
// ---------------------------------------------------------------------------

struct RhdData {
    std::vector<int> tuple;  // the zero string (k_1,...,k_e)
    EmbeddingData embedding; // the k-chain +1, 1-k1, -k2, ..., -k_e
};

// Replays the chain's generation path from [4], starting at (2,1,2) over
// rank 2 and applying the class rewrites of the two generating moves.
RhdData rhd_tuple(const Weights& w);

// Classes of the compactifying divisor +1, 1-a1, -a2, ..., -a_e of a T0
// chain inside its rational homology disk filling: the rhd classes plus one
// extra exceptional class at the unique slot with k_j = 1, a_j = 2.
EmbeddingData rhd_divisor_data(const Weights& w);

// ---------------------------------------------------------------------------
// Flip certification
// ---------------------------------------------------------------------------

struct FlipCertificate {
    bool equal = false;
    EmbeddingData y_side;      // canonical form, blow-down of Y's bracket
    EmbeddingData yplus_side;  // canonical form, blow-down of Yplus's bracket
};

// Certifies that Y and its claimed flip image bound the same filling: builds
// the compactifying-divisor classes for both blow-downs and compares their
// canonical forms. Throws NotAFlipPair on shape or fraction mismatch.
FlipCertificate certify_flip_pair(const DecoratedChain& y, const DecoratedChain& yplus);

bool verify_flip_pair(const DecoratedChain& y, const DecoratedChain& yplus);

}  // namespace mmp
