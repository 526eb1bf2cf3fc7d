#ifndef UML_PADIC_HPP
#define UML_PADIC_HPP

#include "rational.hpp"
#include <optional>

namespace uml {

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// base-field prime p and value-side prime s, distinct
struct PrimePair {
    Int p;
    Int s;
    PrimePair(Int p_, Int s_) : p(std::move(p_)), s(std::move(s_)) {
        if (!is_prime(p) || !is_prime(s)) throw std::invalid_argument("PrimePair: not prime");
        if (p == s) throw std::invalid_argument("PrimePair: p == s");
    }
};

// exact norm value: zero, or base^exp with rational exp
struct NormVal {
    Int base;
    bool zero = true;
    Rat exp = 0;

    static NormVal zero_of(const Int& b) { return {b, true, 0}; }
    static NormVal pow_of(const Int& b, const Rat& e) { return {b, false, e}; }

    NormVal operator*(const NormVal& o) const {
        if (base != o.base) throw std::invalid_argument("NormVal: base mismatch");
        if (zero || o.zero) return zero_of(base);
        return pow_of(base, exp + o.exp);
    }
    bool operator<(const NormVal& o) const {
        if (base != o.base) throw std::invalid_argument("NormVal: base mismatch");
        if (zero) return !o.zero;
        if (o.zero) return false;
        return exp < o.exp;
    }
    bool operator==(const NormVal& o) const {
        return base == o.base && zero == o.zero && (zero || exp == o.exp);
    }
    bool operator<=(const NormVal& o) const { return *this < o || *this == o; }

    // exact rational value when the exponent is integral
    Rat value() const {
        if (zero) return 0;
        if (den(exp) != 1) throw std::domain_error("NormVal: non-integral exponent");
        long e = static_cast<long>(num(exp));
        return rpow(base, e);
    }
    std::string str() const {
        if (zero) return "0";
        if (exp == 0) return "1";
        return base.str() + "^" + rat_str(exp);
    }
};

inline std::optional<long> ord_opt(const Int& q, const Rat& x) {
    if (x == 0) return std::nullopt;
    return ord_rat(q, x);
}

// |x|_q = q^(-ord_q x), 0 for x = 0
inline NormVal abs_q(const Int& q, const Rat& x) {
    if (x == 0) return NormVal::zero_of(q);
    return NormVal::pow_of(q, Rat(-ord_rat(q, x)));
}

inline NormVal k_norm(const PrimePair& P, const Rat& x) { return abs_q(P.p, x); }
inline NormVal s_norm(const PrimePair& P, const Rat& x) { return abs_q(P.s, x); }

// p-part fractional piece: x mod Z_p, a rational in [0,1) with p-power denominator.
// lowest terms make the numerator p-free whenever p divides the denominator.
inline Rat fractional_part(const Int& p, const Rat& x) {
    if (x == 0) return 0;
    Int b = den(x);
    long m = ord_int(p, b);
    if (m == 0) return 0;
    Int pm = ipow(p, m);
    Int b0 = b / pm;
    Int u = mod_pos(num(x) * mod_inverse(b0, pm), pm);
    return Rat(u, pm);
}

} // namespace uml

#endif
