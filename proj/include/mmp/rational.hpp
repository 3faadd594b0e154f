#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mmp {

// Exact rational arithmetic on int64 with 128-bit intermediates.
// Throws std::overflow_error if a reduced value no longer fits.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                       i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        i128 l = i128(a.num_) * b.den_;
        i128 r = i128(b.num_) * a.den_;
        return l < r ? std::strong_ordering::less
             : l > r ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    using i128 = __int128;

    static Rational from128(i128 n, i128 d) {
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("rational overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }
    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
    void normalize() {
        if (den_ == 0) throw std::domain_error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

// Value of a Hirzebruch-Jung string as an exact point of the projective line.
// Canonical form: gcd(|p|,|q|) = 1, q >= 0, and the point at infinity is (1,0).
struct ProjectiveRational {
    std::int64_t p = 1;
    std::int64_t q = 0;

    static ProjectiveRational make(std::int64_t p, std::int64_t q) {
        if (p == 0 && q == 0) throw std::domain_error("projective (0,0) is undefined");
        if (q == 0) return {1, 0};
        if (q < 0) { p = -p; q = -q; }
        std::int64_t g = std::gcd(p < 0 ? -p : p, q);
        if (g > 1) { p /= g; q /= g; }
        return {p, q};
    }
    static ProjectiveRational infinity() { return {1, 0}; }

    bool is_infinity() const { return q == 0; }
    bool is_zero() const { return p == 0; }

    friend bool operator==(const ProjectiveRational&, const ProjectiveRational&) = default;

    std::string str() const { return is_infinity() ? "inf" : std::to_string(p) + "/" + std::to_string(q); }
};

}  // namespace mmp
