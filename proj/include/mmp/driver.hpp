#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mmp/chain.hpp"
#include "mmp/flip.hpp"

namespace mmp {

enum class MoveKind : std::uint8_t { RationalBlowUp, RationalBlowDown, Flip, Antiflip };

const char* move_kind_name(MoveKind k);

// One rewrite step with full state snapshots; replaying `before` through the
// move yields `after` exactly.
struct Move {
    MoveKind kind = MoveKind::RationalBlowUp;
    std::size_t pos = 0;    // blow-up: bracket index; blow-down: span start (0-based)
    std::size_t count = 0;  // blow-down: span length
    FlipSite site;          // flips and antiflips
    DecoratedChain before;
    DecoratedChain after;

    // Site descriptor for JSON ("bracket@p", "span@p-q", "p:case:orient"; 1-based).
    std::string site_str() const;
    // The before-state segments the move acts on, in chain notation, e.g. "6-2-2".
    std::string site_label() const;

    friend bool operator==(const Move&, const Move&) = default;
};

struct MoveTrace {
    DecoratedChain start;
    DecoratedChain end;
    std::vector<Move> moves;

    friend bool operator==(const MoveTrace&, const MoveTrace&) = default;
};

// Apply one move (site data only; snapshots in `m` are ignored).
DecoratedChain apply_move(const DecoratedChain& ch, const Move& m);

// Rational blow-ups and flips from an M-resolution down to the minimal
// resolution: rightmost bracket first, flipping whenever it sits in a
// [B]-1-c pattern. Requires validate_m_resolution to pass.
MoveTrace to_minimal(const DecoratedChain& ch);

// Rational blow-downs and antiflips from the minimal resolution to the given
// M-resolution; the formal inverse of to_minimal.
MoveTrace from_minimal(const DecoratedChain& ch);

// Reverse the move list, invert each move, swap snapshots. An involution.
MoveTrace invert_trace(const MoveTrace& t);

// Apply moves in order; when a move carries snapshots they must match.
// Throws MoveNotApplicable naming the failing index.
DecoratedChain replay(const DecoratedChain& start, const std::vector<Move>& moves);

// Numbered text rendering; `down` selects the blow-down/antiflip wording.
std::string render_trace(const MoveTrace& t, bool down);

std::string trace_to_json(const MoveTrace& t);
MoveTrace trace_from_json(const std::string& text);

}  // namespace mmp
