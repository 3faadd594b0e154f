#include <doctest.h>

#include <random>
#include <set>

#include "mmp/flip.hpp"
#include "mmp/homology.hpp"
#include "mmp/t0.hpp"

using namespace mmp;

namespace {

std::vector<int> v(std::initializer_list<int> xs) { return std::vector<int>(xs); }

// Brute-force oracle over a bounds box.
std::vector<std::vector<int>> brute_zero_strings(const std::vector<int>& bounds) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(bounds.size(), 1);
    for (;;) {
        if (is_zero_string(cur)) out.push_back(cur);
        std::size_t i = 0;
        while (i < bounds.size() && cur[i] == bounds[i]) cur[i++] = 1;
        if (i == bounds.size()) break;
        cur[i] += 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("is_zero_string") {
    CHECK(is_zero_string(v({2, 1, 2})));
    CHECK(is_zero_string(v({1, 1})));
    CHECK(is_zero_string(v({3, 2, 1, 3, 2})));
    CHECK(is_zero_string(v({1, 2, 1})));
    CHECK(!is_zero_string(v({2, 2})));
    CHECK(!is_zero_string(v({1})));
    CHECK(!is_zero_string(v({2, 1, 1})));

    SUBCASE("accepted strings evaluate to zero") {
        // reduction steps are blow-downs, which preserve the evaluation
        for (const auto& k : brute_zero_strings({4, 4, 4, 4})) CHECK(hj_eval(k).is_zero());
        for (const auto& k : brute_zero_strings({3, 3, 3, 3, 3})) CHECK(hj_eval(k).is_zero());
    }

    SUBCASE("formally-zero strings that no blow-up sequence produces") {
        // These evaluate to 0/1 projectively but pass through 0 or infinity
        // midway; the reduction decider rejects them by design.
        CHECK(hj_eval(v({1, 1, 1, 1, 1})).is_zero());
        CHECK(!is_zero_string(v({1, 1, 1, 1, 1})));
        CHECK(hj_eval(v({2, 1, 1, 1, 1, 2})).is_zero());
        CHECK(!is_zero_string(v({2, 1, 1, 1, 1, 2})));
    }
}

TEST_CASE("enumerate_zero_strings") {
    CHECK(enumerate_zero_strings(v({2, 1, 2})) == std::vector<std::vector<int>>{{2, 1, 2}});
    CHECK(enumerate_zero_strings(v({1, 1})) == std::vector<std::vector<int>>{{1, 1}});
    CHECK(enumerate_zero_strings(v({1})).empty());

    auto big = enumerate_zero_strings(v({3, 2, 3, 3, 3}));
    CHECK(std::find(big.begin(), big.end(), v({3, 2, 1, 3, 2})) != big.end());
    CHECK(big == brute_zero_strings({3, 2, 3, 3, 3}));
    CHECK(enumerate_zero_strings(v({4, 4, 4, 4})) == brute_zero_strings({4, 4, 4, 4}));
    CHECK(enumerate_zero_strings(v({2, 5, 5, 2, 4})) == brute_zero_strings({2, 5, 5, 2, 4}));
}

TEST_CASE("rhd tuples of small brackets") {
    CHECK(rhd_tuple({4}).tuple == v({2, 1, 2}));
    CHECK(rhd_tuple({5, 2}).tuple == v({2, 2, 1, 3}));
    CHECK(rhd_tuple({2, 5, 3}).tuple == v({3, 2, 1, 3, 2}));
    CHECK_THROWS_AS(rhd_tuple({3, 3}), Error);

    SUBCASE("base classes match the seed data") {
        auto base = rhd_tuple({4});
        auto m = base.embedding.matrix();
        // rows: l; l-x1-x2; x2; x1-x2
        CHECK(m == std::vector<std::vector<int>>{
                       {1, 0, 0}, {1, -1, -1}, {0, 0, 1}, {0, 1, -1}});
    }
}

TEST_CASE("rhd tuple shape law for every T0 chain of length <= 6") {
    for (const Weights& b : t0_generate(6)) {
        RhdData r = rhd_tuple(b);
        Weights a = dual_string(b);
        REQUIRE(r.tuple.size() == a.size());
        CHECK(is_zero_string(r.tuple));
        int special = 0;
        for (std::size_t j = 0; j < a.size(); ++j) {
            CHECK(r.tuple[j] <= a[j]);
            if (r.tuple[j] == a[j]) continue;
            CHECK(r.tuple[j] == 1);
            CHECK(a[j] == 2);
            ++special;
        }
        CHECK(special == 1);
        r.embedding.assert_sound();
        rhd_divisor_data(b).assert_sound();
    }
}

TEST_CASE("canonicalize") {
    auto base = rhd_tuple({4}).embedding;
    EmbeddingData swapped = base;
    for (HClass& c : swapped.rows)
        for (int& t : c.terms) {
            if (t == 2) t = 3;
            else if (t == -2) t = -3;
            else if (t == 3) t = 2;
            else if (t == -3) t = -2;
        }
    CHECK(canonicalize(base).matrix() == canonicalize(swapped).matrix());
    CHECK(canonicalize(canonicalize(base)).matrix() == canonicalize(base).matrix());
}

TEST_CASE("flip certification on the worked pairs") {
    CHECK(verify_flip_pair(parse_chain("[5,2]-1-6"), parse_chain("4-4")));
    CHECK(verify_flip_pair(parse_chain("[5,2]-1-5"), parse_chain("4-3")));
    CHECK(verify_flip_pair(parse_chain("[2,5,3]-1-2"), parse_chain("2-[5,2]-1")));
    CHECK(verify_flip_pair(parse_chain("[2,5]-1-5"), parse_chain("2-[4]-4")));
    CHECK(verify_flip_pair(parse_chain("[5,2]-1-6-2-2"), parse_chain("4-4-2-2")));
    // mirrored orientation of the first pair
    CHECK(verify_flip_pair(parse_chain("6-1-[2,5]"), parse_chain("4-4")));

    CHECK_THROWS_AS(verify_flip_pair(parse_chain("[5,2]-1-6"), parse_chain("4-5")), Error);
    CHECK_THROWS_AS(verify_flip_pair(parse_chain("4-4"), parse_chain("4-4")), Error);
}

TEST_CASE("flip certification beyond the small pool") {
    // a length-6 case-B bracket and a length-7 case-A bracket
    CHECK(verify_flip_pair(parse_chain("[9,2,2,2,2,2]-1-12"), parse_chain("8-6")));
    DecoratedChain y = parse_chain("[3,2,2,2,5,6,2]-1-5");
    DecoratedChain yplus = flip(y, FlipSite{0, FlipCase::A, Orientation::LeftToRight});
    CHECK(format_chain(yplus) == "3-[2,2,2,5,5]-3");
    CHECK(verify_flip_pair(y, yplus));
}

TEST_CASE("flip certification on random valid pairs") {
    std::mt19937 rng(20240813);
    std::vector<Weights> pool = t0_generate(5);
    std::uniform_int_distribution<std::size_t> dpool(0, pool.size() - 1);
    std::uniform_int_distribution<int> dc(0, 3);
    int done = 0;
    while (done < 60) {
        const Weights& b = pool[dpool(rng)];
        std::size_t i = 0;
        for (std::size_t j = b.size(); j-- > 0;)
            if (b[j] >= 3) {
                i = j + 1;
                break;
            }
        int cmin = i >= 2 ? b.front() : b.front() - 2;
        int c = std::max(1, cmin + dc(rng));
        std::vector<Segment> segs{Segment::bracket(b), Segment::plain(1), Segment::plain(c)};
        DecoratedChain y(std::move(segs));
        FlipSite s{0, i >= 2 ? FlipCase::A : FlipCase::B, Orientation::LeftToRight};
        DecoratedChain yplus = flip(y, s);
        auto cert = certify_flip_pair(y, yplus);
        CHECK(cert.equal);
        if (cert.y_side.rank > 14) continue;  // context for the acceptance bound
        ++done;
    }
}

TEST_CASE("flip certification with plain context and mirrored sites") {
    std::mt19937 rng(20240817);
    std::vector<Weights> pool = t0_generate(5);
    std::uniform_int_distribution<std::size_t> dpool(0, pool.size() - 1);
    std::uniform_int_distribution<int> dc(0, 3), dctx(1, 2), dw(2, 6);
    int done = 0;
    while (done < 40) {
        const Weights& b = pool[dpool(rng)];
        std::size_t i = 0;
        for (std::size_t j = b.size(); j-- > 0;)
            if (b[j] >= 3) {
                i = j + 1;
                break;
            }
        int cmin = i >= 2 ? b.front() : b.front() - 2;
        int c = std::max(1, cmin + dc(rng));
        std::vector<Segment> segs;
        for (int k = dctx(rng); k > 0; --k) segs.push_back(Segment::plain(dw(rng)));
        std::size_t pos = segs.size();
        segs.push_back(Segment::bracket(b));
        segs.push_back(Segment::plain(1));
        segs.push_back(Segment::plain(c));
        for (int k = dctx(rng); k > 0; --k) segs.push_back(Segment::plain(dw(rng)));
        DecoratedChain y(std::move(segs));
        FlipSite s{pos, i >= 2 ? FlipCase::A : FlipCase::B, Orientation::LeftToRight};
        std::bernoulli_distribution coin(0.5);
        if (coin(rng)) {
            s.position = y.size() - pos - 3;
            s.orientation = Orientation::Mirrored;
            y = mirror(y);
        }
        DecoratedChain yplus = flip(y, s);
        bool equal = false;
        try {
            equal = verify_flip_pair(y, yplus);
        } catch (const Error& e) {
            // context can make the whole chain collapse to a smooth point;
            // such configurations bound no singularity and are out of scope
            CHECK(e.code() == Errc::NotAFlipPair);
            continue;
        }
        CHECK(equal);
        ++done;
    }
}
