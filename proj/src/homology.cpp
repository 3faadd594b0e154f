#include "mmp/homology.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "mmp/flip.hpp"
#include "mmp/t0.hpp"

namespace mmp {

namespace {

constexpr int kL = 1;  // basis handle of l

int basis_of(int term) { return std::abs(term); }
int sign_of(int term) { return term > 0 ? 1 : -1; }

HClass with_term(HClass c, int term) {
    c.terms.push_back(term);
    return c;
}

}  // namespace

int pairing(const HClass& a, const HClass& b) {
    int acc = 0;
    for (int s : a.terms)
        for (int t : b.terms)
            if (basis_of(s) == basis_of(t))
                acc += sign_of(s) * sign_of(t) * (basis_of(s) == kL ? 1 : -1);
    return acc;
}

void EmbeddingData::assert_sound() const {
    MMP_ASSERT(rows.size() == selfints.size(), "row/selfint mismatch");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        MMP_ASSERT(pairing(rows[i], rows[i]) == selfints[i],
                   "self-intersection mismatch at row " + std::to_string(i));
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            int expect = (j == i + 1) ? 1 : 0;
            MMP_ASSERT(pairing(rows[i], rows[j]) == expect,
                       "adjacency pairing mismatch at rows " + std::to_string(i) + "," +
                           std::to_string(j));
        }
    }
    for (const HClass& c : rows)
        for (int t : c.terms)
            MMP_ASSERT(basis_of(t) <= static_cast<int>(rank) + 1, "basis handle out of range");
}

std::vector<std::vector<int>> EmbeddingData::matrix() const {
    std::vector<std::vector<int>> m(rows.size(), std::vector<int>(rank + 1, 0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int t : rows[i].terms) m[i][static_cast<std::size_t>(basis_of(t)) - 1] += sign_of(t);
    return m;
}

EmbeddingData canonicalize(const EmbeddingData& d) {
    auto m = d.matrix();
    std::size_t nrows = m.size();
    // Column-sorting yields the row-major lexicographic minimum: at the first
    // row where two columns differ, the smaller entry must come first.
    std::vector<std::vector<int>> cols(d.rank, std::vector<int>(nrows));
    for (std::size_t c = 0; c < d.rank; ++c)
        for (std::size_t r = 0; r < nrows; ++r) cols[c][r] = m[r][c + 1];
    std::sort(cols.begin(), cols.end());

    EmbeddingData out;
    out.rank = d.rank;
    out.selfints = d.selfints;
    out.rows.resize(nrows);
    for (std::size_t r = 0; r < nrows; ++r) {
        HClass row;
        if (m[r][0] != 0) row.terms.push_back(m[r][0] > 0 ? kL : -kL);
        for (std::size_t c = 0; c < d.rank; ++c) {
            int v = cols[c][r];
            MMP_ASSERT(v == 0 || v == 1 || v == -1, "unit coefficients only");
            if (v != 0) row.terms.push_back(v * static_cast<int>(c + 2));
        }
        out.rows[r] = std::move(row);
    }
    return out;
}

std::string embedding_csv(const EmbeddingData& d) {
    std::string out;
    for (const auto& row : d.matrix()) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += std::to_string(row[c]);
        }
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Zero strings
// ---------------------------------------------------------------------------

bool is_zero_string(const std::vector<int>& k) {
    for (int e : k)
        if (e < 1) fail(Errc::ParseError, "zero strings take entries >= 1");
    std::vector<int> cur = k;
    for (;;) {
        if (cur.size() == 2 && cur[0] == 1 && cur[1] == 1) return true;
        auto it = std::find(cur.begin(), cur.end(), 1);
        if (it == cur.end() || cur.size() < 2) return false;
        std::size_t i = static_cast<std::size_t>(it - cur.begin());
        if (i > 0) cur[i - 1] -= 1;
        if (i + 1 < cur.size()) cur[i + 1] -= 1;
        cur.erase(cur.begin() + static_cast<long>(i));
    }
}

std::vector<std::vector<int>> enumerate_zero_strings(const std::vector<int>& bounds) {
    for (int b : bounds)
        if (b < 1) fail(Errc::ParseError, "bounds must be >= 1");
    std::vector<std::vector<int>> out;
    if (bounds.empty()) return out;
    std::vector<int> pick(bounds.size());

    // Fill positions right to left carrying the suffix value p/q. Accepted
    // strings have every proper suffix value finite and positive, so prune
    // any branch that leaves (0, inf).
    auto step = [](std::int64_t k, std::int64_t p, std::int64_t q) {
        return ProjectiveRational::make(k * p - q, p);
    };
    std::size_t e = bounds.size();

    auto rec = [&](auto&& self, std::size_t idx, std::int64_t p, std::int64_t q) -> void {
        if (idx == 0) return;
        std::size_t pos = idx - 1;
        for (int k = 1; k <= bounds[pos]; ++k) {
            auto v = idx == e ? ProjectiveRational::make(k, 1) : step(k, p, q);
            if (pos > 0) {
                if (v.p <= 0 || v.q <= 0) continue;
            } else {
                if (!v.is_zero()) continue;
            }
            pick[pos] = k;
            if (pos == 0) {
                if (is_zero_string(pick)) out.push_back(pick);
            } else {
                self(self, pos, v.p, v.q);
            }
        }
    };
    rec(rec, e, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Rational homology disk data
// ---------------------------------------------------------------------------

namespace {

struct RhdState {
    std::vector<int> k;
    std::vector<HClass> u;  // u[0] unused; u[1..e] are the non-l chain vertices
    int rank = 0;

    int fresh() { return ++rank + 1; }  // new exceptional basis handle
};

RhdState rhd_base() {
    RhdState s;
    s.k = {2, 1, 2};
    s.rank = 2;
    s.u.resize(4);
    s.u[1].terms = {kL, -2, -3};  // l - x1 - x2
    s.u[2].terms = {3};           // x2
    s.u[3].terms = {2, -3};       // x1 - x2
    return s;
}

// Chain move [b1,...,br] -> [b1+1, b2, ..., br, 2];
// tuple (k1,...,ke) -> (2, k1, ..., k_{e-1}, ke+1).
void rhd_move_inc_first(RhdState& s) {
    int F = s.fresh();
    std::size_t e = s.k.size();
    HClass old_u1 = s.u[1];
    MMP_ASSERT(old_u1.terms.size() >= 2 && old_u1.terms[0] == kL, "malformed head class");
    int head = old_u1.terms[1];
    MMP_ASSERT(head < 0, "head class must subtract its first basis element");

    std::vector<HClass> nu(e + 2);
    nu[1].terms = {kL, head, -F};
    nu[2].terms = {F};
    nu[2].terms.insert(nu[2].terms.end(), old_u1.terms.begin() + 2, old_u1.terms.end());
    for (std::size_t j = 2; j < e; ++j) nu[j + 1] = s.u[j];
    nu[e + 1] = with_term(s.u[e], -F);
    s.u = std::move(nu);

    std::vector<int> nk;
    nk.push_back(2);
    nk.insert(nk.end(), s.k.begin(), s.k.end());
    nk.back() += 1;
    s.k = std::move(nk);
}

// Chain move [b1,...,br] -> [2, b1, ..., b_{r-1}, br+1];
// tuple (k1,...,ke) -> (k1+1, k2, ..., ke, 2).
void rhd_move_prepend_two(RhdState& s) {
    int F = s.fresh();
    std::size_t e = s.k.size();
    HClass old_u1 = s.u[1];
    MMP_ASSERT(!s.u[e].terms.empty() && s.u[e].terms[0] > 0, "malformed tail class");
    int tail_head = s.u[e].terms[0];

    std::vector<HClass> nu(e + 2);
    nu[1].terms = {kL, -F};
    nu[1].terms.insert(nu[1].terms.end(), old_u1.terms.begin() + 1, old_u1.terms.end());
    for (std::size_t j = 2; j <= e; ++j) nu[j] = s.u[j];
    nu[e + 1].terms = {F, -tail_head};
    s.u = std::move(nu);

    s.k.push_back(2);
    s.k.front() += 1;
}

EmbeddingData state_embedding(const RhdState& s, const std::vector<int>& selfint_weights) {
    // selfint_weights is the tuple whose chain is +1, 1-w1, -w2, ...
    EmbeddingData d;
    d.rank = static_cast<std::size_t>(s.rank);
    d.rows.resize(s.u.size());
    d.rows[0].terms = {kL};
    for (std::size_t i = 1; i < s.u.size(); ++i) d.rows[i] = s.u[i];
    d.selfints.resize(s.u.size());
    d.selfints[0] = 1;
    d.selfints[1] = 1 - selfint_weights[0];
    for (std::size_t i = 2; i < s.u.size(); ++i)
        d.selfints[i] = -selfint_weights[i - 1];
    d.assert_sound();
    return d;
}

RhdState rhd_state(const Weights& w) {
    auto cert = t0_recognize(w);
    if (!cert) fail(Errc::NotT0, "rhd data exists only for class-T0 chains");
    RhdState s = rhd_base();
    for (T0Move m : cert->generation_path) {
        if (m == T0Move::IncFirstAppendTwo)
            rhd_move_inc_first(s);
        else
            rhd_move_prepend_two(s);
    }
    return s;
}

}  // namespace

RhdData rhd_tuple(const Weights& w) {
    RhdState s = rhd_state(w);
    RhdData out;
    out.tuple = s.k;
    out.embedding = state_embedding(s, s.k);
    MMP_ASSERT(is_zero_string(out.tuple), "rhd tuple must be a zero string");
    return out;
}

EmbeddingData rhd_divisor_data(const Weights& w) {
    RhdState s = rhd_state(w);
    Weights a = dual_string(w);
    MMP_ASSERT(a.size() == s.k.size(), "rhd tuple and dual string lengths differ");
    std::size_t special = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (s.k[j] == a[j]) continue;
        MMP_ASSERT(s.k[j] == 1 && a[j] == 2 && special == 0, "rhd shape law violated");
        special = j + 1;
    }
    MMP_ASSERT(special != 0, "the rhd tuple differs from the dual string in one slot");
    s.u[special] = with_term(s.u[special], -s.fresh());
    std::vector<int> weights(a.begin(), a.end());
    return state_embedding(s, weights);
}

// ---------------------------------------------------------------------------
// Flip certification
// ---------------------------------------------------------------------------

namespace {

// Divisor classes for the minimal resolution filling of a chain with dual
// string dM: consecutive blocks of fresh classes sharing one element.
EmbeddingData embed_minimal(const Weights& dM) {
    EmbeddingData d;
    d.rows.push_back({{kL}});
    d.selfints.push_back(1);
    int next = 2;  // next fresh basis handle
    int prev_tail = 0;
    for (std::size_t m = 0; m < dM.size(); ++m) {
        HClass row;
        int fresh_needed = dM[m];
        if (m == 0) {
            row.terms.push_back(kL);
        } else {
            row.terms.push_back(prev_tail);
            fresh_needed -= 1;
        }
        for (int i = 0; i < fresh_needed; ++i) row.terms.push_back(-(next++));
        prev_tail = -row.terms.back();
        d.selfints.push_back(m == 0 ? 1 - dM[0] : -dM[m]);
        d.rows.push_back(std::move(row));
    }
    d.rank = static_cast<std::size_t>(next - 2);
    d.assert_sound();
    return d;
}

// Renumber exceptional handles of `rows` densely in order of first use.
EmbeddingData compact(std::vector<HClass> rows, std::vector<int> selfints) {
    std::map<int, int> remap;
    int next = 2;
    for (HClass& c : rows)
        for (int& t : c.terms) {
            if (basis_of(t) == kL) continue;
            auto [it, fresh] = remap.try_emplace(basis_of(t), next);
            if (fresh) ++next;
            t = sign_of(t) * it->second;
        }
    EmbeddingData d;
    d.rank = static_cast<std::size_t>(next - 2);
    d.rows = std::move(rows);
    d.selfints = std::move(selfints);
    d.assert_sound();
    return d;
}

HClass exceptional_part(const HClass& c) {
    HClass out;
    for (int t : c.terms)
        if (basis_of(t) != kL) out.terms.push_back(t);
    return out;
}

// Divisor classes of the filling that blows down bracket G inside the
// configuration v-[G]-w (w may be 1): the front/back 2-blocks carry fresh
// telescoping classes; the middle carries the rhd divisor classes of G.
EmbeddingData embed_bracket_between(int v, const Weights& g, int wgt, const Weights& dM) {
    EmbeddingData cp = rhd_divisor_data(g);
    Weights a = dual_string(g);
    std::size_t e = a.size();
    MMP_ASSERT(e >= 2, "T0 dual strings have length >= 3");

    // Structural decomposition of the ambient dual string.
    Weights expect;
    expect.insert(expect.end(), static_cast<std::size_t>(v - 2), 2);
    expect.push_back(a[0] + 1);
    expect.insert(expect.end(), a.begin() + 1, a.end() - 1);
    if (wgt >= 2) {
        expect.push_back(a.back() + 1);
        expect.insert(expect.end(), static_cast<std::size_t>(wgt - 2), 2);
    }
    if (expect != dM) fail(Errc::NotAFlipPair, "dual string does not match the site decomposition");

    int next = static_cast<int>(cp.rank) + 2;
    std::vector<HClass> rows;
    rows.push_back({{kL}});

    std::vector<int> front(static_cast<std::size_t>(v - 1));
    for (int& h : front) h = next++;
    if (v >= 3) {
        rows.push_back({{kL, -front[0], -front[1]}});
        for (std::size_t j = 1; j + 1 < front.size(); ++j)
            rows.push_back({{front[j], -front[j + 1]}});
    }

    std::size_t retained = wgt >= 2 ? e : e - 1;
    for (std::size_t m = 1; m <= retained; ++m) {
        HClass row;
        if (m == 1) {
            if (v >= 3)
                row.terms.push_back(front.back());
            else
                row.terms = {kL, -front[0]};
            HClass ep = exceptional_part(cp.rows[1]);
            row.terms.insert(row.terms.end(), ep.terms.begin(), ep.terms.end());
        } else {
            row = cp.rows[m];
        }
        if (m == retained && wgt >= 2) row.terms.push_back(-next);
        rows.push_back(std::move(row));
    }
    if (wgt >= 2) {
        std::vector<int> back(static_cast<std::size_t>(wgt - 1));
        for (int& h : back) h = next++;
        for (std::size_t j = 0; j + 1 < back.size(); ++j)
            rows.push_back({{back[j], -back[j + 1]}});
    }

    std::vector<int> selfints;
    selfints.push_back(1);
    selfints.push_back(1 - dM[0]);
    for (std::size_t i = 1; i < dM.size(); ++i) selfints.push_back(-dM[i]);
    return compact(std::move(rows), std::move(selfints));
}

// Divisor classes of the filling that blows down bracket B inside [B]-1-c:
// the bracket's rhd divisor classes with a fresh telescope grafted where the
// ambient chain extends past the bracket's own divisor.
EmbeddingData embed_bracket_head(const Weights& b, const Weights& dM) {
    EmbeddingData ch = rhd_divisor_data(b);
    Weights ahat = dual_string(b);
    std::size_t ehat = ahat.size();

    std::vector<HClass> rows;
    rows.push_back({{kL}});

    bool short_form = dM.size() == ehat - 2;
    if (short_form) {
        for (std::size_t i = 0; i + 2 < ehat; ++i)
            if (dM[i] != ahat[i]) fail(Errc::NotAFlipPair, "dual prefix mismatch");
        for (std::size_t m = 1; m + 2 <= ehat; ++m) rows.push_back(ch.rows[m]);
    } else {
        if (dM.size() < ehat - 1) fail(Errc::NotAFlipPair, "dual string too short for the site");
        for (std::size_t i = 0; i + 2 < ehat; ++i)
            if (dM[i] != ahat[i]) fail(Errc::NotAFlipPair, "dual prefix mismatch");
        if (dM[ehat - 2] != ahat[ehat - 2] + 1)
            fail(Errc::NotAFlipPair, "dual pivot entry mismatch");
        for (std::size_t i = ehat - 1; i < dM.size(); ++i)
            if (dM[i] != 2) fail(Errc::NotAFlipPair, "dual tail is not a 2-block");

        std::size_t tail = dM.size() - (ehat - 1);
        int next = static_cast<int>(ch.rank) + 2;
        std::vector<int> t(tail + 1);
        for (int& h : t) h = next++;
        for (std::size_t m = 1; m + 2 <= ehat; ++m) rows.push_back(ch.rows[m]);
        rows.push_back(with_term(ch.rows[ehat - 1], -t[0]));
        for (std::size_t j = 0; j + 1 < t.size(); ++j) rows.push_back({{t[j], -t[j + 1]}});
    }

    std::vector<int> selfints;
    selfints.push_back(1);
    selfints.push_back(1 - dM[0]);
    for (std::size_t i = 1; i < dM.size(); ++i) selfints.push_back(-dM[i]);
    return compact(std::move(rows), std::move(selfints));
}

struct LocalPair {
    DecoratedChain y;      // [B]-1-c, bracket leftmost
    DecoratedChain yplus;  // v-[G]-w or x-y
};

// Find the unique flip site in y, check flipping it yields yplus, and strip
// the common context. Mirrored pairs are normalized to bracket-left form.
LocalPair localize(const DecoratedChain& y, const DecoratedChain& yplus) {
    std::size_t bracket_pos = y.size();
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!y.at(i).bracketed) continue;
        if (bracket_pos != y.size()) fail(Errc::NotAFlipPair, "Y must contain exactly one bracket");
        bracket_pos = i;
    }
    if (bracket_pos == y.size()) fail(Errc::NotAFlipPair, "Y carries no bracket");

    for (Orientation o : {Orientation::LeftToRight, Orientation::Mirrored}) {
        std::size_t pos = o == Orientation::LeftToRight ? bracket_pos
                          : bracket_pos >= 2            ? bracket_pos - 2
                                                        : y.size();
        if (pos + 3 > y.size()) continue;
        for (FlipCase kind : {FlipCase::A, FlipCase::B}) {
            FlipSite site{pos, kind, o};
            DecoratedChain flipped;
            try {
                flipped = flip(y, site);
            } catch (const Error&) {
                continue;
            }
            if (!(flipped == yplus)) continue;
            std::vector<Segment> ys(y.segments().begin() + static_cast<long>(pos),
                                    y.segments().begin() + static_cast<long>(pos) + 3);
            std::size_t out_len = kind == FlipCase::A ? 3 : 2;
            std::vector<Segment> ps(yplus.segments().begin() + static_cast<long>(pos),
                                    yplus.segments().begin() + static_cast<long>(pos + out_len));
            LocalPair lp{DecoratedChain(std::move(ys)), DecoratedChain(std::move(ps))};
            if (o == Orientation::Mirrored) {
                lp.y = mirror(lp.y);
                lp.yplus = mirror(lp.yplus);
            }
            return lp;
        }
    }
    fail(Errc::NotAFlipPair, "Yplus is not the flip of Y at any site");
}

}  // namespace

FlipCertificate certify_flip_pair(const DecoratedChain& y, const DecoratedChain& yplus) {
    Fraction fy, fp;
    try {
        fy = chain_fraction(y);
        fp = chain_fraction(yplus);
    } catch (const Error& e) {
        fail(Errc::NotAFlipPair, std::string("configuration does not bound a singularity: ") +
                                     e.what());
    }
    if (!(fy == fp))
        fail(Errc::NotAFlipPair,
             "different singularities: " + fy.str() + " versus " + fp.str());

    LocalPair lp = localize(y, yplus);
    Weights minimal = contract_to_minimal(flatten(lp.y));
    Weights dM = dual_string(minimal);

    EmbeddingData y_side = embed_bracket_head(lp.y.at(0).w, dM);

    EmbeddingData yplus_side;
    if (lp.yplus.size() == 3 && lp.yplus.at(1).bracketed) {
        yplus_side = embed_bracket_between(lp.yplus.at(0).weight(), lp.yplus.at(1).w,
                                           lp.yplus.at(2).weight(), dM);
    } else {
        yplus_side = embed_minimal(dM);
    }

    FlipCertificate cert;
    cert.y_side = canonicalize(y_side);
    cert.yplus_side = canonicalize(yplus_side);
    cert.equal = cert.y_side.rank == cert.yplus_side.rank &&
                 cert.y_side.matrix() == cert.yplus_side.matrix();
    return cert;
}

bool verify_flip_pair(const DecoratedChain& y, const DecoratedChain& yplus) {
    return certify_flip_pair(y, yplus).equal;
}

}  // namespace mmp
