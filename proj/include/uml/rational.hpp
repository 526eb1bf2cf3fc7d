#ifndef UML_RATIONAL_HPP
#define UML_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace uml {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

// integer power, e >= 0
inline Int ipow(const Int& b, long e) {
    if (e < 0) throw std::invalid_argument("ipow: negative exponent");
    Int r = 1, x = b;
    for (long k = e; k > 0; k >>= 1) {
        if (k & 1) r *= x;
        x *= x;
    }
    return r;
}

// b^e as a rational, any sign of e (b nonzero for e < 0)
inline Rat rpow(const Int& b, long e) {
    if (e >= 0) return Rat(ipow(b, e));
    if (b == 0) throw std::domain_error("rpow: 0 to negative power");
    return Rat(Int(1), ipow(b, -e));
}

// multiplicity of prime q in nonzero integer n
inline long ord_int(const Int& q, Int n) {
    if (n == 0) throw std::domain_error("ord_int: zero");
    if (n < 0) n = -n;
    long v = 0;
    while (n % q == 0) { n /= q; ++v; }
    return v;
}

// q-adic valuation of a nonzero rational
inline long ord_rat(const Int& q, const Rat& r) {
    if (r == 0) throw std::domain_error("ord_rat: zero");
    return ord_int(q, num(r)) - ord_int(q, den(r));
}

// floor(log base) -- not needed; floor division helper for Int
inline Int floordiv(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline Int mod_pos(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// inverse of a modulo m, gcd(a,m)=1
inline Int mod_inverse(const Int& a, const Int& m) {
    Int old_r = mod_pos(a, m), r = m;
    Int old_t = 1, t = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r != 1) throw std::domain_error("mod_inverse: not coprime");
    return mod_pos(old_t, m);
}

// parse "a/b" or "a" (optional sign, decimal digits)
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    auto chk = [&](const std::string& t) {
        if (t.empty()) throw std::invalid_argument("parse_rat: empty");
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) throw std::invalid_argument("parse_rat: bad number");
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("parse_rat: bad digit");
    };
    if (slash == std::string::npos) {
        chk(s);
        return Rat(Int(s));
    }
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    chk(a); chk(b);
    Int d(b);
    if (d == 0) throw std::invalid_argument("parse_rat: zero denominator");
    return Rat(Int(a), d);
}

// canonical form: "a" if integral else "a/b", b > 0
inline std::string rat_str(const Rat& r) {
    std::string s = num(r).str();
    if (den(r) != 1) s += "/" + den(r).str();
    return s;
}

} // namespace uml

#endif
