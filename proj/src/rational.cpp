#include "boxlab/rational.hpp"

#include <cctype>
#include <numeric>

#include "boxlab/error.hpp"

namespace boxlab {

namespace {

using i128 = __int128;

long long checked_narrow(i128 v, const char* what) {
    if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
        throw ArgumentError(std::string("rational overflow in ") + what);
    return static_cast<long long>(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational make(i128 n, i128 d, const char* what) {
    if (d == 0) throw ArgumentError("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    r.num = checked_narrow(n, what);
    r.den = checked_narrow(d, what);
    return r;
}

}  // namespace

Rational::Rational(long long n, long long d) { *this = make(n, d, "constructor"); }

Rational Rational::operator+(const Rational& o) const {
    return make(static_cast<i128>(num) * o.den + static_cast<i128>(o.num) * den,
                static_cast<i128>(den) * o.den, "+");
}

Rational Rational::operator-(const Rational& o) const {
    return make(static_cast<i128>(num) * o.den - static_cast<i128>(o.num) * den,
                static_cast<i128>(den) * o.den, "-");
}

Rational Rational::operator*(const Rational& o) const {
    return make(static_cast<i128>(num) * o.num, static_cast<i128>(den) * o.den, "*");
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw ArgumentError("rational division by zero");
    return make(static_cast<i128>(num) * o.den, static_cast<i128>(den) * o.num, "/");
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<i128>(num) * o.den < static_cast<i128>(o.num) * den;
}

bool Rational::operator<=(const Rational& o) const {
    return static_cast<i128>(num) * o.den <= static_cast<i128>(o.num) * den;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw ArgumentError("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            size_t p1 = 0, p2 = 0;
            long long n = std::stoll(text.substr(0, slash), &p1);
            long long d = std::stoll(text.substr(slash + 1), &p2);
            if (p1 != slash || p2 != text.size() - slash - 1)
                throw ArgumentError("bad rational literal: " + text);
            return Rational(n, d);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) {
            size_t p = 0;
            long long n = std::stoll(text, &p);
            if (p != text.size()) throw ArgumentError("bad rational literal: " + text);
            return Rational(n);
        }
        // Decimal: integer part + fraction digits over a power of ten.
        std::string ip = text.substr(0, dot), fp = text.substr(dot + 1);
        if (fp.empty() || fp.size() > 18) throw ArgumentError("bad decimal literal: " + text);
        for (char c : fp)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ArgumentError("bad decimal literal: " + text);
        bool neg = !ip.empty() && ip[0] == '-';
        long long whole = 0;
        if (!ip.empty() && ip != "-" && ip != "+") {
            size_t p = 0;
            whole = std::stoll(ip, &p);
            if (p != ip.size()) throw ArgumentError("bad decimal literal: " + text);
        }
        long long scale = 1;
        for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
        long long frac = fp.empty() ? 0 : std::stoll(fp);
        long long n = (whole < 0 || neg) ? whole * scale - frac : whole * scale + frac;
        return Rational(n, scale);
    } catch (const std::invalid_argument&) {
        throw ArgumentError("bad rational literal: " + text);
    } catch (const std::out_of_range&) {
        throw ArgumentError("rational literal out of range: " + text);
    }
}

Rational Rational::pow(const Rational& x, int n) {
    if (n < 0) throw ArgumentError("negative rational power");
    Rational r(1);
    for (int i = 0; i < n; ++i) r = r * x;
    return r;
}

}  // namespace boxlab
