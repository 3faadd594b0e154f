#include "mmp/chain.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "mmp/t0.hpp"

namespace mmp {

Fraction Fraction::make(std::int64_t n, std::int64_t q) {
    if (n <= 0 || q <= 0 || q >= n) fail(Errc::ParseError, "fraction requires 0 < q < n");
    if (std::gcd(n, q) != 1) fail(Errc::ParseError, "fraction requires gcd(n,q) = 1");
    return {n, q};
}

// ---------------------------------------------------------------------------
// Hirzebruch-Jung arithmetic
// ---------------------------------------------------------------------------

ProjectiveRational hj_eval(std::span<const int> w) {
    if (w.empty()) fail(Errc::ParseError, "hj_eval on empty string");
    // Fold right to left; the empty suffix is the point at infinity, so that
    // w - 1/inf = w and w - 1/(0/1) = inf.
    std::int64_t p = 1, q = 0;
    for (std::size_t k = w.size(); k-- > 0;) {
        __int128 np = static_cast<__int128>(w[k]) * p - q;
        if (np > INT64_MAX || np < INT64_MIN)
            throw std::overflow_error("chain value exceeds 64 bits");
        auto c = ProjectiveRational::make(static_cast<std::int64_t>(np), p);
        p = c.p;
        q = c.q;
    }
    return {p, q};
}

Weights chain_from_fraction(const Fraction& f) {
    Weights out;
    std::int64_t n = f.n, q = f.q;
    while (q > 0) {
        std::int64_t w = (n + q - 1) / q;  // ceil(n/q)
        out.push_back(static_cast<int>(w));
        std::int64_t nn = q;
        q = w * q - n;
        n = nn;
    }
    return out;
}

Weights dual_string(const Weights& w) {
    for (int e : w)
        if (e < 2) fail(Errc::ParseError, "dual_string requires entries >= 2");
    auto v = hj_eval(w);
    Weights dual;
    if (v.q == 0) fail(Errc::ParseError, "dual_string of an infinite chain");
    dual = chain_from_fraction(Fraction::make(v.p, v.p - v.q));
    // (w1,...,wr,1,ae,...,a1) must represent zero.
    Weights cat = w;
    cat.push_back(1);
    cat.insert(cat.end(), dual.rbegin(), dual.rend());
    if (!hj_eval(cat).is_zero()) fail(Errc::ParseError, "dual_string concatenation check failed");
    return dual;
}

std::size_t dual_length(const Weights& w) {
    long sum = std::accumulate(w.begin(), w.end(), 0L);
    return static_cast<std::size_t>(sum - 2 * static_cast<long>(w.size()) + 1);
}

Weights blow_down_once(const Weights& w, std::size_t i) {
    if (i >= w.size()) fail(Errc::NotMinusOne, "index out of range");
    if (w[i] != 1) fail(Errc::NotMinusOne, "entry at blow-down index is not 1");
    if (w.size() < 2) fail(Errc::CollapsedToNothing, "blow-down of a single (-1)-curve");
    Weights out;
    out.reserve(w.size() - 1);
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k == i) continue;
        int v = w[k];
        if (k + 1 == i || (i + 1 == k)) v -= 1;
        if (v <= 0 && w.size() > 2)
            fail(Errc::CollapsedToNothing, "contraction drove a neighbor weight to " + std::to_string(v));
        out.push_back(v);
    }
    if (out.size() == 1 && out[0] <= 0)
        fail(Errc::CollapsedToNothing, "chain contracted to a non-positive curve");
    return out;
}

Weights contract_to_minimal(const Weights& w) {
    Weights cur = w;
    for (;;) {
        auto it = std::find(cur.begin(), cur.end(), 1);
        if (it == cur.end()) return cur;
        cur = blow_down_once(cur, static_cast<std::size_t>(it - cur.begin()));
    }
}

// ---------------------------------------------------------------------------
// Decorated chains
// ---------------------------------------------------------------------------

Segment Segment::plain(int weight) {
    if (weight < 1) fail(Errc::ParseError, "plain weight must be >= 1");
    Segment s;
    s.bracketed = false;
    s.w = {weight};
    return s;
}

Segment Segment::bracket(Weights weights) {
    if (weights.empty()) fail(Errc::ParseError, "empty bracket");
    for (int e : weights)
        if (e < 2) fail(Errc::ContainsMinusOne, "bracket weights must be >= 2");
    Segment s;
    s.bracketed = true;
    s.w = std::move(weights);
    return s;
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return s[i];
    }
    char take() {
        skip_ws();
        return s[i++];
    }
    int take_int() {
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '0')
            fail(Errc::ParseError, "expected positive integer at offset " + std::to_string(i));
        long v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            if (v > 1'000'000'000L) fail(Errc::ParseError, "integer too large");
            ++i;
        }
        return static_cast<int>(v);
    }
};

}  // namespace

DecoratedChain parse_chain(const std::string& text) {
    Cursor c{text};
    std::vector<Segment> segs;
    for (;;) {
        if (c.eof()) fail(Errc::ParseError, "expected segment");
        if (c.peek() == '[') {
            c.take();
            Weights w;
            w.push_back(c.take_int());
            while (!c.eof() && c.peek() == ',') {
                c.take();
                w.push_back(c.take_int());
            }
            if (c.eof() || c.take() != ']') fail(Errc::ParseError, "expected ']'");
            segs.push_back(Segment::bracket(std::move(w)));
        } else {
            segs.push_back(Segment::plain(c.take_int()));
        }
        if (c.eof()) break;
        if (c.take() != '-') fail(Errc::ParseError, "expected '-' between segments");
    }
    return DecoratedChain(std::move(segs));
}

std::string format_chain(const DecoratedChain& ch) {
    std::string out;
    for (std::size_t i = 0; i < ch.size(); ++i) {
        if (i > 0) out += '-';
        const Segment& s = ch.at(i);
        if (s.bracketed) {
            out += '[';
            for (std::size_t k = 0; k < s.w.size(); ++k) {
                if (k > 0) out += ',';
                out += std::to_string(s.w[k]);
            }
            out += ']';
        } else {
            out += std::to_string(s.w[0]);
        }
    }
    return out;
}

Fraction parse_fraction(const std::string& text) {
    Cursor c{text};
    std::int64_t a = c.take_int();
    if (!c.eof() && c.peek() == '/') {
        c.take();
        std::int64_t b = c.take_int();
        if (!c.eof() && c.peek() == '(') {
            // 1/n(1,q)
            if (a != 1) fail(Errc::ParseError, "quotient notation must start 1/");
            c.take();
            std::int64_t one = c.take_int();
            if (one != 1 || c.take() != ',') fail(Errc::ParseError, "expected (1,q)");
            std::int64_t q = c.take_int();
            if (c.take() != ')' || !c.eof()) fail(Errc::ParseError, "trailing input after fraction");
            return Fraction::make(b, q);
        }
        if (!c.eof()) fail(Errc::ParseError, "trailing input after fraction");
        return Fraction::make(a, b);
    }
    fail(Errc::ParseError, "expected n/q or 1/n(1,q)");
}

Weights flatten(const DecoratedChain& ch) {
    Weights out;
    for (const Segment& s : ch.segments()) out.insert(out.end(), s.w.begin(), s.w.end());
    return out;
}

DecoratedChain mirror(const DecoratedChain& ch) {
    std::vector<Segment> segs(ch.segments().rbegin(), ch.segments().rend());
    for (Segment& s : segs) std::reverse(s.w.begin(), s.w.end());
    return DecoratedChain(std::move(segs));
}

DecoratedChain rational_blow_up(const DecoratedChain& ch, std::size_t b) {
    if (b >= ch.size() || !ch.at(b).bracketed) fail(Errc::NotABracket, "segment is not a bracket");
    std::vector<Segment> segs;
    segs.reserve(ch.size() + ch.at(b).w.size() - 1);
    for (std::size_t i = 0; i < ch.size(); ++i) {
        if (i != b) {
            segs.push_back(ch.at(i));
            continue;
        }
        for (int w : ch.at(i).w) segs.push_back(Segment::plain(w));
    }
    return DecoratedChain(std::move(segs));
}

DecoratedChain rational_blow_down(const DecoratedChain& ch, std::size_t first, std::size_t count) {
    if (count == 0 || first + count > ch.size()) fail(Errc::NotT0, "empty or out-of-range span");
    Weights grouped;
    for (std::size_t i = first; i < first + count; ++i) {
        const Segment& s = ch.at(i);
        if (s.bracketed) fail(Errc::ContainsBracket, "span crosses an existing bracket");
        if (s.weight() == 1) fail(Errc::ContainsMinusOne, "span contains a (-1)-curve");
        grouped.push_back(s.weight());
    }
    if (!t0_recognize(grouped))
        fail(Errc::NotT0, format_chain(DecoratedChain({Segment::bracket(grouped)})) +
                              " is not a class-T0 chain");
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < first; ++i) segs.push_back(ch.at(i));
    segs.push_back(Segment::bracket(grouped));
    for (std::size_t i = first + count; i < ch.size(); ++i) segs.push_back(ch.at(i));
    return DecoratedChain(std::move(segs));
}

Fraction chain_fraction(const DecoratedChain& ch) {
    Weights minimal = contract_to_minimal(flatten(ch));
    auto v = hj_eval(minimal);
    if (v.q == 0 || v.p <= 0) fail(Errc::CollapsedToNothing, "chain does not present a singularity");
    if (v.q == v.p) fail(Errc::CollapsedToNothing, "chain contracts to a smooth point");
    return Fraction::make(v.p, v.q);
}

}  // namespace mmp
