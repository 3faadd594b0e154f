#include <doctest.h>

#include <random>

#include "mmp/driver.hpp"
#include "mmp/t0.hpp"

using namespace mmp;

TEST_CASE("to_minimal on the worked M-resolutions") {
    SUBCASE("1/37(1,10)") {
        MoveTrace t = to_minimal(parse_chain("[5,2]-1-[6,2,2]"));
        CHECK(format_chain(t.end) == "4-4-2-2");
        REQUIRE(t.moves.size() == 2);
        CHECK(t.moves[0].kind == MoveKind::RationalBlowUp);
        CHECK(t.moves[0].pos == 2);
        CHECK(t.moves[1].kind == MoveKind::Flip);
        CHECK(format_chain(t.moves[0].after) == "[5,2]-1-6-2-2");
    }
    SUBCASE("1/81(1,47)") {
        MoveTrace t = to_minimal(parse_chain("[2,5,3]-1-[2,5,3]-2"));
        CHECK(format_chain(t.end) == "2-4-3-3-2");
        REQUIRE(t.moves.size() == 3);
        CHECK(t.moves[0].kind == MoveKind::RationalBlowUp);
        CHECK(t.moves[1].kind == MoveKind::Flip);
        CHECK(t.moves[2].kind == MoveKind::Flip);
        CHECK(format_chain(t.moves[1].after) == "2-[5,2]-1-5-3-2");
    }
    SUBCASE("1/45(1,26)") {
        MoveTrace t = to_minimal(parse_chain("[2,5]-1-[5,2]"));
        CHECK(format_chain(t.end) == "2-4-4-2");
        REQUIRE(t.moves.size() == 3);
        CHECK(t.moves[0].kind == MoveKind::RationalBlowUp);
        CHECK(t.moves[1].kind == MoveKind::Flip);
        CHECK(t.moves[2].kind == MoveKind::RationalBlowUp);  // the leftover [4]
        CHECK(format_chain(t.moves[1].after) == "2-[4]-4-2");
    }
}

TEST_CASE("from_minimal reproduces the reference move sequences") {
    SUBCASE("1/37(1,10)") {
        MoveTrace t = from_minimal(parse_chain("[5,2]-1-[6,2,2]"));
        CHECK(format_chain(t.start) == "4-4-2-2");
        REQUIRE(t.moves.size() == 2);
        CHECK(t.moves[0].kind == MoveKind::Antiflip);
        CHECK(t.moves[0].site_label() == "4-4");
        CHECK(format_chain(t.moves[0].after) == "[5,2]-1-6-2-2");
        CHECK(t.moves[1].kind == MoveKind::RationalBlowDown);
        CHECK(t.moves[1].site_label() == "6-2-2");
        CHECK(format_chain(t.moves[1].after) == "[5,2]-1-[6,2,2]");
    }
    SUBCASE("1/81(1,47)") {
        MoveTrace t = from_minimal(parse_chain("[2,5,3]-1-[2,5,3]-2"));
        CHECK(format_chain(t.start) == "2-4-3-3-2");
        REQUIRE(t.moves.size() == 3);
        CHECK(t.moves[0].site_label() == "4-3");
        CHECK(format_chain(t.moves[0].after) == "2-[5,2]-1-5-3-2");
        CHECK(t.moves[1].site_label() == "2-[5,2]-1");
        CHECK(format_chain(t.moves[1].after) == "[2,5,3]-1-2-5-3-2");
        CHECK(t.moves[2].site_label() == "2-5-3");
        CHECK(format_chain(t.moves[2].after) == "[2,5,3]-1-[2,5,3]-2");
    }
    SUBCASE("1/45(1,26)") {
        MoveTrace t = from_minimal(parse_chain("[2,5]-1-[5,2]"));
        CHECK(format_chain(t.start) == "2-4-4-2");
        REQUIRE(t.moves.size() == 3);
        CHECK(t.moves[0].kind == MoveKind::RationalBlowDown);
        CHECK(t.moves[0].site_label() == "4");
        CHECK(t.moves[1].kind == MoveKind::Antiflip);
        CHECK(t.moves[1].site_label() == "2-[4]-4");
        CHECK(t.moves[2].site_label() == "5-2");
        CHECK(format_chain(t.end) == "[2,5]-1-[5,2]");
    }
}

TEST_CASE("mirrored-orientation inputs drive down directly") {
    // the mirror image of [5,2]-1-[6,2,2] is a valid M-resolution in its own
    // right and needs no orientation normalization
    MoveTrace t = to_minimal(parse_chain("[2,2,6]-1-[2,5]"));
    CHECK(format_chain(t.end) == "2-2-4-4");
    REQUIRE(t.moves.size() == 4);
    MoveTrace down = from_minimal(parse_chain("[2,2,6]-1-[2,5]"));
    CHECK(down.moves[0].site_label() == "4");
    CHECK(down.moves[1].site_label() == "2-[4]-4");
    CHECK(format_chain(replay(down.start, down.moves)) == "[2,2,6]-1-[2,5]");
}

TEST_CASE("a five-move trace with plain context on both flanks") {
    MoveTrace t = from_minimal(parse_chain("[2,5,3]-1-[2,5,3]-1-[2,5,3]-2-3"));
    CHECK(format_chain(t.start) == "2-4-2-3-3-2-3");
    CHECK(t.moves.size() == 5);
    CHECK(replay(t.start, t.moves) == t.end);
}

TEST_CASE("chains of three bracketed singularities") {
    // [4]-1-[4]-1-[4] drives down through two case-B flips
    MoveTrace t = to_minimal(parse_chain("[4]-1-[4]-1-[4]"));
    CHECK(format_chain(t.end) == "3-2-3");
    REQUIRE(t.moves.size() == 3);
    CHECK(t.moves[0].kind == MoveKind::RationalBlowUp);
    CHECK(t.moves[1].kind == MoveKind::Flip);
    CHECK(t.moves[2].kind == MoveKind::Flip);
    CHECK(replay(from_minimal(parse_chain("[4]-1-[4]-1-[4]")).start,
                 from_minimal(parse_chain("[4]-1-[4]-1-[4]")).moves) ==
          parse_chain("[4]-1-[4]-1-[4]"));
}

TEST_CASE("invert_trace is an involution and replay matches snapshots") {
    for (const char* s : {"[5,2]-1-[6,2,2]", "[2,5,3]-1-[2,5,3]-2", "[2,5]-1-[5,2]", "2-4-3-3-2"}) {
        MoveTrace t = to_minimal(parse_chain(s));
        MoveTrace inv = invert_trace(t);
        CHECK(invert_trace(inv) == t);
        CHECK(replay(t.start, t.moves) == t.end);
        CHECK(replay(inv.start, inv.moves) == inv.end);
    }
    MoveTrace empty;
    empty.start = parse_chain("2-3-2");
    empty.end = empty.start;
    CHECK(invert_trace(empty) == empty);
}

TEST_CASE("replay rejects wrong moves") {
    MoveTrace t = to_minimal(parse_chain("[5,2]-1-[6,2,2]"));
    CHECK(replay(t.start, t.moves) == t.end);
    CHECK_THROWS_AS(replay(parse_chain("[4]-1-[4]"), t.moves), Error);
    CHECK(replay(parse_chain("[4]-1-[4]"), {}) == parse_chain("[4]-1-[4]"));
}

TEST_CASE("to_minimal rejects invalid inputs") {
    CHECK_THROWS_AS(to_minimal(parse_chain("[4]-1-3")), Error);
    CHECK_THROWS_AS(to_minimal(parse_chain("[6,2,2]-1-[5,2]")), Error);
    CHECK_THROWS_AS(to_minimal(parse_chain("[3,3]")), Error);
}

TEST_CASE("trace JSON round trip") {
    MoveTrace t = from_minimal(parse_chain("[2,5,3]-1-[2,5,3]-2"));
    MoveTrace back = trace_from_json(trace_to_json(t));
    CHECK(back == t);
    CHECK(replay(back.start, back.moves) == t.end);
}

TEST_CASE("driver soundness on synthetic M-resolutions") {
    std::mt19937 rng(43);
    std::uniform_int_distribution<int> dlen(2, 6), dw(2, 6), dmoves(1, 3);
    int instances = 0;
    while (instances < 200) {
        Weights minimal(static_cast<std::size_t>(dlen(rng)));
        for (int& x : minimal) x = dw(rng);
        std::vector<Segment> segs;
        for (int x : minimal) segs.push_back(Segment::plain(x));
        DecoratedChain cur(std::move(segs));

        // random antiflips and blow-downs
        int steps = dmoves(rng);
        for (int s = 0; s < steps; ++s) {
            std::vector<DecoratedChain> candidates;
            for (std::size_t pos = 0; pos + 1 < cur.size(); ++pos) {
                for (FlipCase k : {FlipCase::A, FlipCase::B}) {
                    try {
                        candidates.push_back(antiflip(cur, FlipSite{pos, k, Orientation::LeftToRight}));
                    } catch (const Error&) {
                    }
                }
            }
            for (std::size_t pos = 0; pos < cur.size(); ++pos)
                for (std::size_t count = 1; pos + count <= cur.size(); ++count) {
                    try {
                        candidates.push_back(rational_blow_down(cur, pos, count));
                    } catch (const Error&) {
                    }
                }
            if (candidates.empty()) break;
            std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
            cur = candidates[pick(rng)];
        }
        if (!validate_m_resolution(cur).valid) continue;
        bool any_bracket = false;
        for (const Segment& s : cur.segments()) any_bracket = any_bracket || s.bracketed;
        if (!any_bracket) continue;
        ++instances;

        Fraction f = chain_fraction(cur);
        MoveTrace t = to_minimal(cur);
        CHECK(flatten(t.end) == chain_from_fraction(f));
        DecoratedChain state = t.start;
        for (const Move& m : t.moves) {
            CHECK(chain_fraction(state) == f);
            state = apply_move(state, m);
            CHECK(state == m.after);
        }
        CHECK(state == t.end);
        CHECK(replay(from_minimal(cur).start, from_minimal(cur).moves) == cur);
    }
}

TEST_CASE("determinism") {
    auto a = trace_to_json(from_minimal(parse_chain("[2,5,3]-1-[2,5,3]-2")));
    auto b = trace_to_json(from_minimal(parse_chain("[2,5,3]-1-[2,5,3]-2")));
    CHECK(a == b);
}
