#ifndef UML_LAURENT_HPP
#define UML_LAURENT_HPP

#include "padic.hpp"
#include <map>
#include <vector>

namespace uml {

// geometric tail sum_{k >= k0} c * u^k * T^(dir*k), dir = +1 or -1
struct TailRecord {
    Rat c;
    Rat u;
    long k0 = 0;
    int dir = 1;

    // s-adic convergence at T = t: |u * t^dir|_s < 1
    bool converges_at(const Int& s, const Rat& t) const {
        if (c == 0) return true;
        Rat q = dir == 1 ? Rat(u * t) : Rat(u / t);
        if (q == 0) return true;
        return ord_rat(s, q) > 0;
    }
    // convergence when only |T|_s = s^te is known
    bool converges_for_norm(const Int& s, const Rat& te) const {
        if (c == 0 || u == 0) return true;
        return Rat(-ord_rat(s, u)) + te * dir < 0;
    }
    Rat ratio_at(const Rat& t) const {
        if (dir == -1 && t == 0) throw std::domain_error("tail: T = 0 with negative powers");
        return dir == 1 ? Rat(u * t) : Rat(u / t);
    }
    Rat sum_at(const Int& s, const Rat& t) const {
        if (c == 0) return 0;
        Rat q = ratio_at(t);
        if (q == 0) {
            if (k0 > 0) return 0;
            if (k0 == 0) return c;
            throw std::domain_error("tail: zero ratio with negative start");
        }
        if (!(ord_rat(s, q) > 0)) throw std::domain_error("tail: divergent at this T");
        // c * q^k0 / (1 - q), exact limit of the partial sums
        Rat qk0 = 1, base = q;
        long e = k0;
        if (e < 0) { base = Rat(1) / q; e = -e; }
        for (long i = 0; i < e; ++i) qk0 *= base;
        return c * qk0 / (Rat(1) - q);
    }
    Rat partial_at(const Rat& t, long terms) const {
        if (c == 0) return 0;
        Rat q = ratio_at(t), acc = 0;
        for (long k = k0; k < k0 + terms; ++k) {
            long e = k;
            Rat base = q, pw = 1;
            if (e < 0) {
                if (q == 0) throw std::domain_error("tail: zero ratio with negative start");
                base = Rat(1) / q;
                e = -e;
            }
            for (long i = 0; i < e; ++i) pw *= base;
            acc += c * pw;
        }
        return acc;
    }
};

// finite Laurent polynomial in T together with geometric tails
struct LaurentT {
    std::map<long, Rat> mono; // exponent of T -> coefficient
    std::vector<TailRecord> tails;

    static LaurentT zero() { return {}; }
    static LaurentT monomial(long e, const Rat& c) {
        LaurentT f;
        if (c != 0) f.mono[e] = c;
        return f;
    }

    void add_mono(long e, const Rat& c) {
        if (c == 0) return;
        auto it = mono.find(e);
        if (it == mono.end()) mono[e] = c;
        else {
            it->second += c;
            if (it->second == 0) mono.erase(it);
        }
    }
    void add_tail(const TailRecord& t) {
        if (t.c != 0 && t.u != 0) tails.push_back(t);
        else if (t.c != 0 && t.u == 0 && t.k0 == 0) add_mono(0, t.c);
    }

    LaurentT plus(const LaurentT& o) const {
        LaurentT f = *this;
        for (const auto& [e, c] : o.mono) f.add_mono(e, c);
        for (const TailRecord& t : o.tails) f.add_tail(t);
        return f;
    }
    LaurentT scaled(const Rat& a) const {
        LaurentT f;
        if (a == 0) return f;
        for (const auto& [e, c] : mono) f.mono[e] = c * a;
        for (TailRecord t : tails) { t.c *= a; f.tails.push_back(t); }
        return f;
    }

    bool converges_at(const Int& s, const Rat& t) const {
        for (const TailRecord& tr : tails)
            if (!tr.converges_at(s, t)) return false;
        return true;
    }
    bool converges_for_norm(const Int& s, const Rat& te) const {
        for (const TailRecord& tr : tails)
            if (!tr.converges_for_norm(s, te)) return false;
        return true;
    }

    Rat evaluate(const Int& s, const Rat& t) const {
        Rat acc = 0;
        for (const auto& [e, c] : mono) {
            long ex = e;
            Rat pw = 1, base = t;
            if (ex < 0) {
                if (t == 0) throw std::domain_error("evaluate: T = 0 with negative powers");
                base = Rat(1) / t;
                ex = -ex;
            }
            for (long i = 0; i < ex; ++i) pw *= base;
            acc += c * pw;
        }
        for (const TailRecord& tr : tails) acc += tr.sum_at(s, t);
        return acc;
    }

    // finite truncation: monomials plus the first `terms` entries of each tail
    Rat partial_evaluate(const Rat& t, long terms) const {
        LaurentT head;
        head.mono = mono;
        Rat acc = 0;
        for (const auto& [e, c] : head.mono) {
            long ex = e;
            Rat pw = 1, base = t;
            if (ex < 0) { base = Rat(1) / t; ex = -ex; }
            for (long i = 0; i < ex; ++i) pw *= base;
            acc += c * pw;
        }
        for (const TailRecord& tr : tails) acc += tr.partial_at(t, terms);
        return acc;
    }

    bool is_zero() const { return mono.empty() && tails.empty(); }

    std::string str() const {
        std::string out;
        for (const auto& [e, c] : mono) {
            if (!out.empty()) out += " + ";
            out += rat_str(c);
            if (e != 0) out += "*T^" + std::to_string(e);
        }
        for (const TailRecord& t : tails) {
            if (!out.empty()) out += " + ";
            std::string var = t.dir == 1 ? "T" : "T^-1";
            out += "sum_{k>=" + std::to_string(t.k0) + "} " + rat_str(t.c) +
                   "*(" + rat_str(t.u) + "*" + var + ")^k";
        }
        return out.empty() ? "0" : out;
    }
};

} // namespace uml

#endif
