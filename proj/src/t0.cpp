#include "mmp/t0.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace mmp {

namespace {

std::int64_t isqrt(std::int64_t n) {
    std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::string weights_str(const Weights& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s + ")";
}

}  // namespace

std::optional<T0Certificate> t0_recognize(const Weights& w) {
    for (int e : w)
        if (e < 2) return std::nullopt;

    // Walk the unique reverse path to (4). The two reverse moves are mutually
    // exclusive: no T0 chain both starts and ends with 2.
    Weights cur = w;
    std::vector<T0Move> reversed;
    while (!(cur.size() == 1 && cur[0] == 4)) {
        if (cur.size() < 2) return std::nullopt;
        if (cur.front() == 2 && cur.back() >= 3) {
            cur.erase(cur.begin());
            cur.back() -= 1;
            reversed.push_back(T0Move::PrependTwoIncLast);
        } else if (cur.back() == 2 && cur.front() >= 3) {
            cur.pop_back();
            cur.front() -= 1;
            reversed.push_back(T0Move::IncFirstAppendTwo);
        } else {
            return std::nullopt;
        }
    }

    T0Certificate cert;
    cert.generation_path.assign(reversed.rbegin(), reversed.rend());
    cert.initial_index = 1;
    for (T0Move m : cert.generation_path)
        if (m == T0Move::PrependTwoIncLast) cert.initial_index += 1;

    // Redundant cross-check against the fraction form n^2/(na-1).
    auto v = hj_eval(w);
    std::int64_t n = isqrt(v.p);
    if (n * n != v.p) return std::nullopt;
    std::int64_t a = (v.q + 1) / n;
    if (n < 2 || a < 1 || a >= n || n * a - 1 != v.q || std::gcd(n, a) != 1) return std::nullopt;
    cert.n = n;
    cert.a = a;
    return cert;
}

std::optional<TCertificate> t_recognize(const Weights& w) {
    if (w.empty()) return std::nullopt;
    for (int e : w)
        if (e < 2) return std::nullopt;
    if (std::all_of(w.begin(), w.end(), [](int e) { return e == 2; })) {
        TCertificate c;
        c.rdp = true;
        return c;
    }
    auto v = hj_eval(w);
    for (std::int64_t d = 1; d <= v.p; ++d) {
        if (v.p % d != 0) continue;
        std::int64_t m = v.p / d;
        std::int64_t n = isqrt(m);
        if (n * n != m || n < 2) continue;
        if ((v.q + 1) % (d * n) != 0) continue;
        std::int64_t a = (v.q + 1) / (d * n);
        if (a < 1 || a >= n || std::gcd(n, a) != 1) continue;
        TCertificate c;
        c.d = d;
        c.n = n;
        c.a = a;
        return c;
    }
    return std::nullopt;
}

std::vector<Weights> t0_generate(std::size_t max_len) {
    std::set<Weights> seen;
    std::vector<Weights> frontier{{4}};
    if (max_len >= 1) seen.insert({4});
    while (!frontier.empty()) {
        std::vector<Weights> next;
        for (const Weights& w : frontier) {
            if (w.size() + 1 > max_len) continue;
            Weights a = w;
            a.insert(a.begin(), 2);
            a.back() += 1;
            Weights b = w;
            b.front() += 1;
            b.push_back(2);
            if (seen.insert(a).second) next.push_back(std::move(a));
            if (seen.insert(b).second) next.push_back(std::move(b));
        }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

Weights t0_replay(const std::vector<T0Move>& path) {
    Weights w{4};
    for (T0Move m : path) {
        if (m == T0Move::PrependTwoIncLast) {
            w.insert(w.begin(), 2);
            w.back() += 1;
        } else {
            w.front() += 1;
            w.push_back(2);
        }
    }
    return w;
}

std::vector<Rational> discrepancies(const Weights& w) {
    for (int e : w)
        if (e < 2) fail(Errc::ParseError, "discrepancies require entries >= 2");
    std::size_t r = w.size();
    // Tridiagonal Thomas sweep: -w_i a_i + a_{i-1} + a_{i+1} = w_i - 2.
    std::vector<Rational> diag(r), rhs(r);
    for (std::size_t i = 0; i < r; ++i) {
        diag[i] = Rational(-w[i]);
        rhs[i] = Rational(w[i] - 2);
    }
    for (std::size_t i = 1; i < r; ++i) {
        Rational m = Rational(1) / diag[i - 1];
        diag[i] = diag[i] - m;
        rhs[i] = rhs[i] - m * rhs[i - 1];
        MMP_ASSERT(!(diag[i] == Rational(0)), "singular intersection system");
    }
    std::vector<Rational> a(r);
    a[r - 1] = rhs[r - 1] / diag[r - 1];
    for (std::size_t i = r - 1; i-- > 0;) a[i] = (rhs[i] - a[i + 1]) / diag[i];
    for (const Rational& x : a)
        MMP_ASSERT(Rational(-1) < x && x <= Rational(0), "discrepancy out of range");
    return a;
}

Rational k_dot_minus_one(const DecoratedChain& ch, std::size_t i) {
    if (i >= ch.size() || !ch.at(i).is_plain(1))
        fail(Errc::NotFlankedByBrackets, "segment is not a plain (-1)-curve");
    if (i == 0 || i + 1 == ch.size() || !ch.at(i - 1).bracketed || !ch.at(i + 1).bracketed)
        fail(Errc::NotFlankedByBrackets, "(-1)-curve lacks a bracket on some side");
    Rational left = discrepancies(ch.at(i - 1).w).back();
    Rational right = discrepancies(ch.at(i + 1).w).front();
    return Rational(-1) - left - right;
}

MResolutionReport validate_m_resolution(const DecoratedChain& ch) {
    MResolutionReport rep;
    auto flag = [&](int rule, std::string detail) {
        rep.valid = false;
        rep.issues.push_back({rule, std::move(detail)});
    };

    // Rule 1: every bracket is class T0.
    for (std::size_t i = 0; i < ch.size(); ++i) {
        if (ch.at(i).bracketed && !t0_recognize(ch.at(i).w))
            flag(1, "bracket at segment " + std::to_string(i + 1) + " is not class T0");
    }

    // Rule 2: every plain (-1)-curve passes through two bracketed singularities.
    for (std::size_t i = 0; i < ch.size(); ++i) {
        if (!ch.at(i).is_plain(1)) continue;
        bool ok = i > 0 && i + 1 < ch.size() && ch.at(i - 1).bracketed && ch.at(i + 1).bracketed;
        if (!ok) flag(2, "(-1)-curve at segment " + std::to_string(i + 1) +
                             " does not touch brackets on both sides");
    }

    // Rule 3: across every [A]-1-[B], the first entry of B dominates.
    for (std::size_t i = 0; i + 2 < ch.size(); ++i) {
        if (ch.at(i).bracketed && ch.at(i + 1).is_plain(1) && ch.at(i + 2).bracketed) {
            int a1 = ch.at(i).w.front();
            int b1 = ch.at(i + 2).w.front();
            if (b1 < a1)
                flag(3, "b1 >= a1 fails at segments " + std::to_string(i + 1) + "-" +
                            std::to_string(i + 3) + ": " + std::to_string(b1) + " < " +
                            std::to_string(a1));
        }
    }

    // Rule 4: K is nef on every plain curve. Weight-1 curves use the flanked
    // form; weight >= 2 curves use (w-2) - a_L - a_R with a = 0 at plain or
    // missing neighbors.
    for (std::size_t i = 0; i < ch.size(); ++i) {
        if (ch.at(i).bracketed) continue;
        Rational kd(0);
        if (ch.at(i).weight() == 1) {
            bool flanked = i > 0 && i + 1 < ch.size() && ch.at(i - 1).bracketed && ch.at(i + 1).bracketed;
            if (!flanked) continue;  // already reported by rule 2
            kd = k_dot_minus_one(ch, i);
        } else {
            kd = Rational(ch.at(i).weight() - 2);
            if (i > 0 && ch.at(i - 1).bracketed && t0_recognize(ch.at(i - 1).w))
                kd = kd - discrepancies(ch.at(i - 1).w).back();
            if (i + 1 < ch.size() && ch.at(i + 1).bracketed && t0_recognize(ch.at(i + 1).w))
                kd = kd - discrepancies(ch.at(i + 1).w).front();
        }
        if (kd < Rational(0))
            flag(4, "K . E = " + kd.str() + " < 0 at segment " + std::to_string(i + 1));
    }
    return rep;
}

std::pair<Weights, Weights> reduce_m_pair(const Weights& A, const Weights& B) {
    if (A.size() < 2 || A.back() != 2 || A.front() < 3)
        fail(Errc::ShapeMismatch, "A must look like (a1+1,...,ar,2) with a1+1 >= 3");
    if (B.size() < 2 || B.back() != 2)
        fail(Errc::ShapeMismatch, "B must end in 2");
    Weights a(A.begin(), A.end() - 1);
    a.front() -= 1;
    Weights b(B.begin(), B.end() - 1);
    if (!t0_recognize(a))
        fail(Errc::ShapeMismatch, "reduced left chain " + weights_str(a) + " is not class T0");
    if (!t0_recognize(b))
        fail(Errc::ShapeMismatch, "reduced right chain " + weights_str(b) + " is not class T0");
    return {a, b};
}

}  // namespace mmp
