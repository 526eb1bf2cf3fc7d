#ifndef UML_CYCLO_HPP
#define UML_CYCLO_HPP

#include "rational.hpp"
#include <vector>

namespace uml {

// element of Q(zeta) for a root of unity of order p^k, power-basis coordinates
struct CycloValue {
    Int p;
    long k = 0;                // root order p^k; k = 0 means plain rationals
    std::vector<Rat> coef;     // size phi(p^k)

    static long phi(const Int& p, long k) {
        if (k == 0) return 1;
        return static_cast<long>(Int((p - 1) * ipow(p, k - 1)));
    }

    static CycloValue zero(const Int& p, long k) {
        return CycloValue{p, k, std::vector<Rat>(phi(p, k), Rat(0))};
    }
    static CycloValue constant(const Int& p, long k, const Rat& c) {
        CycloValue v = zero(p, k);
        v.coef[0] = c;
        return v;
    }

    // add c * zeta^e in place, exponent reduced once through the minimal polynomial
    void add_term(Int e, const Rat& c) {
        if (c == 0) return;
        Int pk = ipow(p, k);
        e = mod_pos(e, pk);
        long ph = phi(p, k);
        if (e < ph) {
            coef[static_cast<long>(e)] += c;
            return;
        }
        // zeta^(phi + r) = -sum_i zeta^(r + i p^(k-1)), 0 <= r < p^(k-1)
        long r = static_cast<long>(Int(e - ph));
        Int pk1 = ipow(p, k - 1);
        for (Int i = 0; i <= p - 2; ++i)
            coef[r + static_cast<long>(Int(i * pk1))] -= c;
    }

    static CycloValue root_power(const Int& p, long k, const Int& e, const Rat& c = Rat(1)) {
        CycloValue v = zero(p, k);
        v.add_term(e, c);
        return v;
    }

    CycloValue embed_to(long K) const {
        if (K < k) throw std::invalid_argument("embed_to: lower level");
        if (K == k) return *this;
        CycloValue v = zero(p, K);
        Int lift = ipow(p, K - k);
        for (long e = 0; e < (long)coef.size(); ++e)
            v.add_term(Int(e) * lift, coef[e]);
        return v;
    }

    CycloValue plus(const CycloValue& o) const {
        long K = std::max(k, o.k);
        CycloValue a = embed_to(K), b = o.embed_to(K);
        for (size_t i = 0; i < a.coef.size(); ++i) a.coef[i] += b.coef[i];
        return a;
    }

    CycloValue scaled(const Rat& c) const {
        CycloValue v = *this;
        for (Rat& x : v.coef) x *= c;
        return v;
    }

    CycloValue times(const CycloValue& o) const {
        long K = std::max(k, o.k);
        CycloValue a = embed_to(K), b = o.embed_to(K);
        CycloValue out = zero(p, K);
        for (long i = 0; i < (long)a.coef.size(); ++i) {
            if (a.coef[i] == 0) continue;
            for (long j = 0; j < (long)b.coef.size(); ++j) {
                if (b.coef[j] == 0) continue;
                out.add_term(Int(i) + Int(j), a.coef[i] * b.coef[j]);
            }
        }
        return out;
    }

    // multiply by zeta^e
    CycloValue rotated(const Int& e) const {
        CycloValue out = zero(p, k);
        for (long i = 0; i < (long)coef.size(); ++i)
            if (coef[i] != 0) out.add_term(Int(i) + e, coef[i]);
        return out;
    }

    bool is_zero() const {
        for (const Rat& c : coef)
            if (c != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < coef.size(); ++i)
            if (coef[i] != 0) return false;
        return true;
    }
    Rat rational_part() const {
        if (!is_rational()) throw std::domain_error("rational_part: irrational value");
        return coef[0];
    }

    bool equals(const CycloValue& o) const {
        return plus(o.scaled(Rat(-1))).is_zero();
    }

    // drop to the smallest level representing the same value; the level-K
    // subfield occupies exactly the basis positions divisible by p^(k-K)
    CycloValue compressed() const {
        for (long K = 0; K < k; ++K) {
            long lift = static_cast<long>(ipow(p, k - K));
            long ph = phi(p, K);
            CycloValue cand = zero(p, K);
            bool ok = true;
            for (long i = 0; i < (long)coef.size() && ok; ++i) {
                if (coef[i] == 0) continue;
                if (i % lift != 0 || i / lift >= ph) ok = false;
                else cand.coef[i / lift] = coef[i];
            }
            if (ok) return cand;
        }
        return *this;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        for (long i = 0; i < (long)coef.size(); ++i) {
            if (coef[i] == 0) continue;
            if (!out.empty()) out += " + ";
            out += rat_str(coef[i]);
            if (i == 1) out += "*z";
            else if (i > 1) out += "*z^" + std::to_string(i);
        }
        if (k > 0) out += " | z = primitive " + ipow(p, k).str() + "-th root of 1";
        return out;
    }
};

} // namespace uml

#endif
