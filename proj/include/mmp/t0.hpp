#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmp/chain.hpp"
#include "mmp/rational.hpp"

namespace mmp {

// The two generating moves of class T0, seeded at [4]:
//   PrependTwoIncLast:  [b1,...,br] -> [2, b1, ..., b_{r-1}, br + 1]
//   IncFirstAppendTwo:  [b1,...,br] -> [b1 + 1, b2, ..., br, 2]
enum class T0Move : std::uint8_t { PrependTwoIncLast, IncFirstAppendTwo };

// Witness that a chain is of class T0, i.e. of type 1/n^2(1, na-1).
struct T0Certificate {
    std::int64_t n = 0;
    std::int64_t a = 0;
    std::size_t initial_index = 0;          // 1-based position of the surviving [4] image
    std::vector<T0Move> generation_path;    // forward moves from (4)

    friend bool operator==(const T0Certificate&, const T0Certificate&) = default;
};

// Witness that a chain is of class T: a rational double point (linear case:
// all weights 2) or of type 1/dn^2(1, dna-1).
struct TCertificate {
    bool rdp = false;
    std::int64_t d = 0;
    std::int64_t n = 0;
    std::int64_t a = 0;

    friend bool operator==(const TCertificate&, const TCertificate&) = default;
};

// Reverse generation from [4]; nullopt when the chain is not class T0.
std::optional<T0Certificate> t0_recognize(const Weights& w);

// Class-T recognition; smallest-d witness when several factorizations exist.
std::optional<TCertificate> t_recognize(const Weights& w);

// Breadth-first closure of {(4)} under the two moves, up to length max_len,
// sorted lexicographically.
std::vector<Weights> t0_generate(std::size_t max_len);

// Replay a generation path from (4).
Weights t0_replay(const std::vector<T0Move>& path);

// Discrepancies a_i of K = f*K_X + sum a_i E_i along a chain with entries
// >= 2: the exact solution of sum_j a_j (E_j . E_i) = w_i - 2.
std::vector<Rational> discrepancies(const Weights& w);

// K . E for the (-1)-curve at segment index i, which must be flanked by
// brackets on both sides: -1 - a_L - a_R over the adjacent bracket ends.
Rational k_dot_minus_one(const DecoratedChain& ch, std::size_t i);

// One validation rule outcome.
struct ValidationIssue {
    int rule = 0;  // 1: bracket not T0, 2: stray (-1), 3: b1 >= a1, 4: K nef
    std::string detail;
};

struct MResolutionReport {
    bool valid = true;
    std::vector<ValidationIssue> issues;
};

// Checks, in order: every bracket is T0; every plain (-1) is flanked by
// brackets; b1 >= a1 across every [A]-1-[B]; K . E >= 0 for every plain curve.
MResolutionReport validate_m_resolution(const DecoratedChain& ch);

// Strip-and-decrement reduction of a bracket pair, after
// [a1+1,...,ar,2]-1-[b1,...,bt,2] -> [a1,...,ar]-1-[b1,...,bt].
// Inputs and outputs must all be class T0 and the shape must match.
std::pair<Weights, Weights> reduce_m_pair(const Weights& A, const Weights& B);

}  // namespace mmp
