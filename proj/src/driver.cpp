#include "mmp/driver.hpp"

#include <algorithm>

#include <json.hpp>

#include "mmp/t0.hpp"

namespace mmp {

namespace {

std::size_t total_curves(const DecoratedChain& ch) {
    std::size_t n = 0;
    for (const Segment& s : ch.segments()) n += s.w.size();
    return n;
}

std::size_t bracket_count(const DecoratedChain& ch) {
    std::size_t n = 0;
    for (const Segment& s : ch.segments()) n += s.bracketed ? 1 : 0;
    return n;
}

std::string segments_label(const DecoratedChain& ch, std::size_t first, std::size_t count) {
    std::vector<Segment> span(ch.segments().begin() + static_cast<long>(first),
                              ch.segments().begin() + static_cast<long>(first + count));
    return format_chain(DecoratedChain(std::move(span)));
}

std::size_t move_span(const Move& m) {
    switch (m.kind) {
        case MoveKind::RationalBlowUp: return 1;
        case MoveKind::RationalBlowDown: return m.count;
        case MoveKind::Flip: return 3;
        case MoveKind::Antiflip: return m.site.kind == FlipCase::A ? 3 : 2;
    }
    return 0;
}

std::size_t move_pos(const Move& m) {
    return (m.kind == MoveKind::Flip || m.kind == MoveKind::Antiflip) ? m.site.position : m.pos;
}

// Initial-curve survival at a flip: the image of [4] in the flipped bracket
// is never among the curves the flip consumes.
void assert_initial_curve_survives(const Weights& bracket, FlipCase k) {
    auto cert = t0_recognize(bracket);
    MMP_ASSERT(cert.has_value(), "flip sites carry T0 brackets");
    if (k == FlipCase::B) {
        MMP_ASSERT(cert->initial_index == 1, "initial curve of (b1,2,...,2) is the head");
    } else {
        std::size_t i = 0;
        for (std::size_t j = bracket.size(); j-- > 0;)
            if (bracket[j] >= 3) {
                i = j + 1;
                break;
            }
        MMP_ASSERT(cert->initial_index <= i, "initial curve sits among the consumed curves");
    }
}

MoveTrace mirror_trace(const MoveTrace& t) {
    MoveTrace out;
    out.start = mirror(t.start);
    out.end = mirror(t.end);
    for (const Move& m : t.moves) {
        Move mm = m;
        std::size_t span = move_span(m);
        std::size_t pos = move_pos(m);
        std::size_t mpos = m.before.size() - pos - span;
        if (m.kind == MoveKind::Flip || m.kind == MoveKind::Antiflip) {
            mm.site.position = mpos;
            mm.site.orientation = m.site.orientation == Orientation::LeftToRight
                                      ? Orientation::Mirrored
                                      : Orientation::LeftToRight;
        } else {
            mm.pos = mpos;
        }
        mm.before = mirror(m.before);
        mm.after = mirror(m.after);
        out.moves.push_back(std::move(mm));
    }
    return out;
}

MoveTrace to_minimal_impl(const DecoratedChain& ch) {
    MoveTrace trace;
    trace.start = ch;
    DecoratedChain cur = ch;
    Fraction f = chain_fraction(ch);
    for (;;) {
        std::size_t rb = cur.size();
        for (std::size_t i = cur.size(); i-- > 0;)
            if (cur.at(i).bracketed) {
                rb = i;
                break;
            }
        if (rb == cur.size()) break;

        Move m;
        m.before = cur;
        bool flip_shape = rb + 2 < cur.size() && cur.at(rb + 1).is_plain(1) &&
                          cur.at(rb + 2).is_plain();
        if (flip_shape) {
            const Weights& b = cur.at(rb).w;
            std::size_t i = 0;
            for (std::size_t j = b.size(); j-- > 0;)
                if (b[j] >= 3) {
                    i = j + 1;
                    break;
                }
            FlipSite site;
            site.position = rb;
            site.orientation = Orientation::LeftToRight;
            site.kind = i >= 2 ? FlipCase::A : FlipCase::B;
            // flip() throws FlipBlocked when the c-inequality fails, which for
            // the driver means the b1 >= a1 law was violated upstream.
            DecoratedChain next = flip(cur, site);
            assert_initial_curve_survives(b, site.kind);
            m.kind = MoveKind::Flip;
            m.site = site;
            m.after = next;
        } else {
            m.kind = MoveKind::RationalBlowUp;
            m.pos = rb;
            m.after = rational_blow_up(cur, rb);
        }

        MMP_ASSERT(total_curves(m.after) + bracket_count(m.after) <
                       total_curves(cur) + bracket_count(cur),
                   "driver move did not shrink the configuration");
        MMP_ASSERT(chain_fraction(m.after) == f, "driver move changed the singularity");
        cur = m.after;
        trace.moves.push_back(std::move(m));
    }
    for (const Segment& s : cur.segments())
        if (s.is_plain(1)) fail(Errc::FlipBlocked, "driver left a stray (-1)-curve");
    if (flatten(cur) != chain_from_fraction(f))
        fail(Errc::FlipBlocked, "driver did not reach the minimal resolution");
    trace.end = cur;
    return trace;
}

}  // namespace

const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::RationalBlowUp: return "RationalBlowUp";
        case MoveKind::RationalBlowDown: return "RationalBlowDown";
        case MoveKind::Flip: return "Flip";
        case MoveKind::Antiflip: return "Antiflip";
    }
    return "?";
}

std::string Move::site_str() const {
    switch (kind) {
        case MoveKind::RationalBlowUp: return "bracket@" + std::to_string(pos + 1);
        case MoveKind::RationalBlowDown:
            return "span@" + std::to_string(pos + 1) + "-" + std::to_string(pos + count);
        case MoveKind::Flip:
        case MoveKind::Antiflip: return site.str();
    }
    return "?";
}

std::string Move::site_label() const {
    return segments_label(before, move_pos(*this), move_span(*this));
}

DecoratedChain apply_move(const DecoratedChain& ch, const Move& m) {
    switch (m.kind) {
        case MoveKind::RationalBlowUp: return rational_blow_up(ch, m.pos);
        case MoveKind::RationalBlowDown: return rational_blow_down(ch, m.pos, m.count);
        case MoveKind::Flip: return flip(ch, m.site);
        case MoveKind::Antiflip: return antiflip(ch, m.site);
    }
    fail(Errc::MoveNotApplicable, "unknown move kind");
}

MoveTrace to_minimal(const DecoratedChain& ch) {
    auto report = validate_m_resolution(ch);
    if (!report.valid) {
        std::string what = "not an M-resolution:";
        for (const auto& issue : report.issues) what += " [" + issue.detail + "]";
        fail(Errc::InvalidMResolution, what);
    }
    try {
        return to_minimal_impl(ch);
    } catch (const Error& e) {
        if (e.code() != Errc::FlipBlocked) throw;
        // Defensive mirror retry; unreachable for valid inputs.
        return mirror_trace(to_minimal_impl(mirror(ch)));
    }
}

MoveTrace from_minimal(const DecoratedChain& ch) { return invert_trace(to_minimal(ch)); }

MoveTrace invert_trace(const MoveTrace& t) {
    MoveTrace out;
    out.start = t.end;
    out.end = t.start;
    for (auto it = t.moves.rbegin(); it != t.moves.rend(); ++it) {
        Move m;
        m.before = it->after;
        m.after = it->before;
        switch (it->kind) {
            case MoveKind::RationalBlowUp:
                m.kind = MoveKind::RationalBlowDown;
                m.pos = it->pos;
                m.count = it->before.at(it->pos).w.size();
                break;
            case MoveKind::RationalBlowDown:
                m.kind = MoveKind::RationalBlowUp;
                m.pos = it->pos;
                break;
            case MoveKind::Flip:
                m.kind = MoveKind::Antiflip;
                m.site = it->site;
                break;
            case MoveKind::Antiflip:
                m.kind = MoveKind::Flip;
                m.site = it->site;
                break;
        }
        out.moves.push_back(std::move(m));
    }
    return out;
}

DecoratedChain replay(const DecoratedChain& start, const std::vector<Move>& moves) {
    DecoratedChain cur = start;
    for (std::size_t i = 0; i < moves.size(); ++i) {
        const Move& m = moves[i];
        if (!m.before.empty() && !(m.before == cur))
            fail(Errc::MoveNotApplicable,
                 "move " + std::to_string(i + 1) + " expects state " + format_chain(m.before) +
                     " but the chain is " + format_chain(cur));
        try {
            cur = apply_move(cur, m);
        } catch (const Error& e) {
            fail(Errc::MoveNotApplicable, "move " + std::to_string(i + 1) + ": " + e.what());
        }
        if (!m.after.empty() && !(m.after == cur))
            fail(Errc::MoveNotApplicable,
                 "move " + std::to_string(i + 1) + " produced " + format_chain(cur) +
                     " instead of " + format_chain(m.after));
    }
    return cur;
}

std::string render_trace(const MoveTrace& t, bool down) {
    std::string out;
    out += down ? "0. The minimal resolution: " : "0. The M-resolution: ";
    out += format_chain(t.start);
    out += '\n';
    std::size_t n = 1;
    for (const Move& m : t.moves) {
        out += std::to_string(n++) + ". ";
        switch (m.kind) {
            case MoveKind::Antiflip: out += "A symplectic antiflip along "; break;
            case MoveKind::RationalBlowDown: out += "A rational blow-down along "; break;
            case MoveKind::Flip: out += "A symplectic flip along "; break;
            case MoveKind::RationalBlowUp: out += "A rational blow-up along "; break;
        }
        out += m.site_label() + ": " + format_chain(m.after) + '\n';
    }
    return out;
}

std::string trace_to_json(const MoveTrace& t) {
    nlohmann::json j;
    j["start"] = format_chain(t.start);
    j["end"] = format_chain(t.end);
    j["moves"] = nlohmann::json::array();
    for (const Move& m : t.moves) {
        j["moves"].push_back({{"kind", move_kind_name(m.kind)},
                              {"site", m.site_str()},
                              {"before", format_chain(m.before)},
                              {"after", format_chain(m.after)}});
    }
    return j.dump(2);
}

MoveTrace trace_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::ParseError, std::string("bad trace JSON: ") + e.what());
    }
    MoveTrace t;
    t.start = parse_chain(j.at("start").get<std::string>());
    t.end = parse_chain(j.at("end").get<std::string>());
    for (const auto& jm : j.at("moves")) {
        Move m;
        std::string kind = jm.at("kind").get<std::string>();
        std::string site = jm.at("site").get<std::string>();
        m.before = parse_chain(jm.at("before").get<std::string>());
        m.after = parse_chain(jm.at("after").get<std::string>());
        if (kind == "RationalBlowUp") {
            m.kind = MoveKind::RationalBlowUp;
            if (site.rfind("bracket@", 0) != 0) fail(Errc::ParseError, "expected bracket@p");
            m.pos = std::stoul(site.substr(8)) - 1;
        } else if (kind == "RationalBlowDown") {
            m.kind = MoveKind::RationalBlowDown;
            auto dash = site.find('-', 5);
            if (site.rfind("span@", 0) != 0 || dash == std::string::npos)
                fail(Errc::ParseError, "expected span@p-q");
            std::size_t p = std::stoul(site.substr(5, dash - 5));
            std::size_t q = std::stoul(site.substr(dash + 1));
            if (p < 1 || q < p) fail(Errc::ParseError, "bad span");
            m.pos = p - 1;
            m.count = q - p + 1;
        } else if (kind == "Flip" || kind == "Antiflip") {
            m.kind = kind == "Flip" ? MoveKind::Flip : MoveKind::Antiflip;
            m.site = FlipSite::parse(site);
        } else {
            fail(Errc::ParseError, "unknown move kind " + kind);
        }
        t.moves.push_back(std::move(m));
    }
    return t;
}

}  // namespace mmp
