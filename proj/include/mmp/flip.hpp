#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmp/chain.hpp"

namespace mmp {

// Case A: [b1,...,bt]-1-c with i = max{ j : b_j >= 3 } >= 2 rewrites to
//         b1-[b2,...,b_{i-1},b_i - 1]-(c-b1+1).
// Case B: the bracket is (b1, 2, ..., 2) with b1 = t+3, and [b1,...]-1-c
//         rewrites to (b1-1)-(c-b1+3).
enum class FlipCase : std::uint8_t { A, B };
enum class Orientation : std::uint8_t { LeftToRight, Mirrored };

struct FlipSite {
    std::size_t position = 0;  // segment index (0-based) of the site's leftmost segment
    FlipCase kind = FlipCase::A;
    Orientation orientation = Orientation::LeftToRight;

    friend bool operator==(const FlipSite&, const FlipSite&) = default;

    std::string str() const;                        // "p:case:orient", 1-based position
    static FlipSite parse(const std::string& s);
};

// All valid flip sites, ordered left to right, LeftToRight before Mirrored.
std::vector<FlipSite> flip_sites(const DecoratedChain& ch);

// Apply the symplectic flip at a validated site.
DecoratedChain flip(const DecoratedChain& ch, const FlipSite& site);

// The converse rewrite. Case A site shape: Plain(v)-Bracket(W)-Plain(c') with
// the rebuilt bracket (v, W1,...,Wm + 1, 2^(v-2)) required to be class T0.
// Case B site shape: Plain(d)-Plain(c') with d >= 3.
//
// A flip and the antiflip at the same (position, case, orientation) triple
// are exact inverses.
DecoratedChain antiflip(const DecoratedChain& ch, const FlipSite& site);

}  // namespace mmp
