#include "mmp/flip.hpp"

#include <algorithm>

#include "mmp/t0.hpp"

namespace mmp {

namespace {

// Index of the last entry >= 3, or 0 when none (1-based; 0 means all 2s).
std::size_t last_big_entry(const Weights& b) {
    for (std::size_t j = b.size(); j-- > 0;)
        if (b[j] >= 3) return j + 1;
    return 0;
}

std::size_t mirror_pos(std::size_t chain_len, std::size_t pos, std::size_t span) {
    return chain_len - pos - span;
}

// Validates a LeftToRight site pattern (Bracket,1,c) at pos and returns the
// case; throws InvalidSite otherwise.
FlipCase classify_flip_site(const DecoratedChain& ch, std::size_t pos) {
    if (pos + 2 >= ch.size() || !ch.at(pos).bracketed || !ch.at(pos + 1).is_plain(1) ||
        ch.at(pos + 2).bracketed)
        fail(Errc::InvalidSite, "expected [b1,...,bt]-1-c at segment " + std::to_string(pos + 1));
    const Weights& b = ch.at(pos).w;
    int c = ch.at(pos + 2).weight();
    if (!t0_recognize(b))
        fail(Errc::InvalidSite, "bracket at the site is not class T0");
    std::size_t i = last_big_entry(b);
    MMP_ASSERT(i >= 1, "a T0 bracket has an entry >= 3");
    if (i >= 2) {
        // T0 forces b1 = (t - i) + 2 here
        MMP_ASSERT(b.front() == static_cast<int>(b.size() - i) + 2, "T0 head law violated");
        if (c - b.front() + 1 < 1)
            fail(Errc::FlipBlocked, "c - b1 + 1 = " + std::to_string(c - b.front() + 1) + " < 1");
        return FlipCase::A;
    }
    // the bracket is (b1, 2, ..., 2) and T0 forces b1 = t + 3
    MMP_ASSERT(b.front() == static_cast<int>(b.size()) + 3, "T0 head law violated");
    if (c - b.front() + 3 < 1)
        fail(Errc::FlipBlocked, "c - b1 + 3 = " + std::to_string(c - b.front() + 3) + " < 1");
    return FlipCase::B;
}

DecoratedChain splice(const DecoratedChain& ch, std::size_t pos, std::size_t count,
                      std::vector<Segment> replacement) {
    std::vector<Segment> segs;
    segs.reserve(ch.size() - count + replacement.size());
    for (std::size_t i = 0; i < pos; ++i) segs.push_back(ch.at(i));
    for (Segment& s : replacement) segs.push_back(std::move(s));
    for (std::size_t i = pos + count; i < ch.size(); ++i) segs.push_back(ch.at(i));
    return DecoratedChain(std::move(segs));
}

DecoratedChain flip_ltr(const DecoratedChain& ch, std::size_t pos, FlipCase expect) {
    FlipCase k = classify_flip_site(ch, pos);
    if (k != expect) fail(Errc::InvalidSite, "site case does not match the bracket shape");
    const Weights& b = ch.at(pos).w;
    int c = ch.at(pos + 2).weight();
    if (k == FlipCase::A) {
        std::size_t i = last_big_entry(b);
        Weights inner(b.begin() + 1, b.begin() + static_cast<long>(i));
        inner.back() -= 1;
        if (!t0_recognize(inner)) fail(Errc::BrokenT0, "flip produced a non-T0 bracket");
        return splice(ch, pos, 3,
                      {Segment::plain(b.front()), Segment::bracket(std::move(inner)),
                       Segment::plain(c - b.front() + 1)});
    }
    return splice(ch, pos, 3, {Segment::plain(b.front() - 1), Segment::plain(c - b.front() + 3)});
}

DecoratedChain antiflip_ltr(const DecoratedChain& ch, std::size_t pos, FlipCase k) {
    if (k == FlipCase::A) {
        if (pos + 2 >= ch.size() || !ch.at(pos).is_plain() || !ch.at(pos + 1).bracketed ||
            ch.at(pos + 2).bracketed)
            fail(Errc::InvalidSite, "expected v-[W]-c' at segment " + std::to_string(pos + 1));
        int v = ch.at(pos).weight();
        int cp = ch.at(pos + 2).weight();
        if (v < 2) fail(Errc::InvalidSite, "leading curve of the site must have weight >= 2");
        Weights bracket = ch.at(pos + 1).w;
        bracket.back() += 1;
        bracket.insert(bracket.begin(), v);
        bracket.insert(bracket.end(), static_cast<std::size_t>(v - 2), 2);
        if (!t0_recognize(bracket)) fail(Errc::ResultNotT0, "rebuilt bracket is not class T0");
        return splice(ch, pos, 3,
                      {Segment::bracket(std::move(bracket)), Segment::plain(1),
                       Segment::plain(cp + v - 1)});
    }
    if (pos + 1 >= ch.size() || !ch.at(pos).is_plain() || !ch.at(pos + 1).is_plain())
        fail(Errc::InvalidSite, "expected d-c' at segment " + std::to_string(pos + 1));
    int d = ch.at(pos).weight();
    int cp = ch.at(pos + 1).weight();
    if (d < 3) fail(Errc::InvalidSite, "antiflip case B needs d >= 3");
    Weights bracket{d + 1};
    bracket.insert(bracket.end(), static_cast<std::size_t>(d - 3), 2);
    return splice(ch, pos, 2,
                  {Segment::bracket(std::move(bracket)), Segment::plain(1),
                   Segment::plain(cp + d - 2)});
}

}  // namespace

std::string FlipSite::str() const {
    std::string s = std::to_string(position + 1);
    s += kind == FlipCase::A ? ":A:" : ":B:";
    s += orientation == Orientation::LeftToRight ? "L" : "M";
    return s;
}

FlipSite FlipSite::parse(const std::string& s) {
    auto c1 = s.find(':');
    auto c2 = s.rfind(':');
    if (c1 == std::string::npos || c2 == c1) fail(Errc::ParseError, "site must be p:case:orient");
    long p = 0;
    try {
        p = std::stol(s.substr(0, c1));
    } catch (...) {
        fail(Errc::ParseError, "bad site position");
    }
    if (p < 1) fail(Errc::ParseError, "site position is 1-based");
    std::string k = s.substr(c1 + 1, c2 - c1 - 1);
    std::string o = s.substr(c2 + 1);
    FlipSite site;
    site.position = static_cast<std::size_t>(p - 1);
    if (k == "A")
        site.kind = FlipCase::A;
    else if (k == "B")
        site.kind = FlipCase::B;
    else
        fail(Errc::ParseError, "site case must be A or B");
    if (o == "L")
        site.orientation = Orientation::LeftToRight;
    else if (o == "M")
        site.orientation = Orientation::Mirrored;
    else
        fail(Errc::ParseError, "site orientation must be L or M");
    return site;
}

std::vector<FlipSite> flip_sites(const DecoratedChain& ch) {
    std::vector<FlipSite> out;
    DecoratedChain mir = mirror(ch);
    for (std::size_t pos = 0; pos + 2 < ch.size(); ++pos) {
        try {
            out.push_back({pos, classify_flip_site(ch, pos), Orientation::LeftToRight});
        } catch (const Error&) {
        }
        std::size_t mpos = mirror_pos(ch.size(), pos, 3);
        try {
            FlipCase k = classify_flip_site(mir, mpos);
            out.push_back({pos, k, Orientation::Mirrored});
        } catch (const Error&) {
        }
    }
    std::sort(out.begin(), out.end(), [](const FlipSite& a, const FlipSite& b) {
        if (a.position != b.position) return a.position < b.position;
        return a.orientation == Orientation::LeftToRight && b.orientation == Orientation::Mirrored;
    });
    return out;
}

DecoratedChain flip(const DecoratedChain& ch, const FlipSite& site) {
    if (site.orientation == Orientation::LeftToRight) return flip_ltr(ch, site.position, site.kind);
    if (site.position + 3 > ch.size()) fail(Errc::InvalidSite, "site out of range");
    DecoratedChain mir = mirror(ch);
    std::size_t mpos = mirror_pos(ch.size(), site.position, 3);
    return mirror(flip_ltr(mir, mpos, site.kind));
}

DecoratedChain antiflip(const DecoratedChain& ch, const FlipSite& site) {
    std::size_t span = site.kind == FlipCase::A ? 3 : 2;
    if (site.orientation == Orientation::LeftToRight)
        return antiflip_ltr(ch, site.position, site.kind);
    if (site.position + span > ch.size()) fail(Errc::InvalidSite, "site out of range");
    DecoratedChain mir = mirror(ch);
    std::size_t mpos = mirror_pos(ch.size(), site.position, span);
    return mirror(antiflip_ltr(mir, mpos, site.kind));
}

}  // namespace mmp
