#pragma once

#include <cstdint>
#include <string>

namespace boxlab {

// Exact rational on 64-bit numerator/denominator, always normalized (gcd 1,
// denominator > 0).  Density counts never use floating division: ratios,
// thresholds and margins are compared through 128-bit cross products, so every
// verdict is exact.  Arithmetic throws ArgumentError on overflow instead of
// silently wrapping.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d);

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(-num, den); }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const;
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    // "p/q", or just "p" when q == 1.
    std::string str() const;

    // Accepts "p", "-p", "p/q" and plain decimals like "0.25" (parsed exactly).
    static Rational parse(const std::string& text);

    // x^n for small non-negative n; throws ArgumentError on overflow.
    static Rational pow(const Rational& x, int n);
};

}  // namespace boxlab
