#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmp/errors.hpp"
#include "mmp/rational.hpp"

namespace mmp {

// A weight w stands for a rational curve of self-intersection -w.
using Weights = std::vector<int>;

// The cyclic quotient singularity 1/n(1,q).
struct Fraction {
    std::int64_t n = 0;
    std::int64_t q = 0;

    static Fraction make(std::int64_t n, std::int64_t q);
    friend bool operator==(const Fraction&, const Fraction&) = default;
    std::string str() const { return std::to_string(n) + "/" + std::to_string(q); }
};

// ---------------------------------------------------------------------------
// Hirzebruch-Jung arithmetic
// ---------------------------------------------------------------------------

// [w1,...,wr] = w1 - 1/[w2,...,wr], evaluated right to left over the
// projective line. Total: division by zero yields the point at infinity.
ProjectiveRational hj_eval(std::span<const int> w);

// Minimal resolution chain of 1/n(1,q): greedy ceiling expansion, entries >= 2.
Weights chain_from_fraction(const Fraction& f);

// Dual string (a1,...,ae): the unique chain with entries >= 2 such that
// (w1,...,wr,1,ae,...,a1) evaluates to zero.
Weights dual_string(const Weights& w);

// Sum identity for a dual pair: sum(w) = 2 len(w) + len(dual) - 1.
std::size_t dual_length(const Weights& w);

// Ordinary blow-down at index i (0-based): w[i] must equal 1; neighbors drop by 1.
Weights blow_down_once(const Weights& w, std::size_t i);

// Contract (-1)-curves leftmost-first until none remain.
// Throws CollapsedToNothing when the chain contracts away entirely.
Weights contract_to_minimal(const Weights& w);

// ---------------------------------------------------------------------------
// Decorated chains
// ---------------------------------------------------------------------------

// One vertex run of a decorated chain: either a single plain curve or a
// bracketed group of curves that has been rationally blown down.
struct Segment {
    bool bracketed = false;
    Weights w;  // plain: exactly one entry; bracket: all entries >= 2

    static Segment plain(int weight);
    static Segment bracket(Weights weights);

    bool is_plain() const { return !bracketed; }
    bool is_plain(int weight) const { return !bracketed && w[0] == weight; }
    int weight() const { return w[0]; }  // plain segments only

    friend bool operator==(const Segment&, const Segment&) = default;
};

// A linear chain of segments; consecutive segments intersect once.
class DecoratedChain {
public:
    DecoratedChain() = default;
    explicit DecoratedChain(std::vector<Segment> segs) : segs_(std::move(segs)) {}

    std::size_t size() const { return segs_.size(); }
    bool empty() const { return segs_.empty(); }
    const Segment& at(std::size_t i) const { return segs_.at(i); }
    const std::vector<Segment>& segments() const { return segs_; }

    friend bool operator==(const DecoratedChain&, const DecoratedChain&) = default;

private:
    std::vector<Segment> segs_;
};

// Chain text grammar (ASCII, canonical form has no spaces):
//   chain   := segment ("-" segment)*
//   segment := INT | "[" INT ("," INT)* "]"
DecoratedChain parse_chain(const std::string& text);
std::string format_chain(const DecoratedChain& ch);

Fraction parse_fraction(const std::string& text);  // "n/q" or "1/n(1,q)"

// Drop all bracket decorations.
Weights flatten(const DecoratedChain& ch);

// Reverse segment order; bracket contents reverse too. An involution.
DecoratedChain mirror(const DecoratedChain& ch);

// Replace the bracket at segment index b by its plain curves.
DecoratedChain rational_blow_up(const DecoratedChain& ch, std::size_t b);

// Group the plain segments [first, first+count) into one bracket.
// The span must be plain, weights >= 2, and form a class-T0 chain.
DecoratedChain rational_blow_down(const DecoratedChain& ch, std::size_t first, std::size_t count);

// Singularity identified by a decorated chain: hj of the contracted flatten.
Fraction chain_fraction(const DecoratedChain& ch);

}  // namespace mmp
