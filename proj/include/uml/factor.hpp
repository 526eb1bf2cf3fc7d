#ifndef UML_FACTOR_HPP
#define UML_FACTOR_HPP

#include "measures.hpp"
#include <variant>

namespace uml {

// geometric series sum_{i>=i0} r^i = r^i0/(1-r), valid when |r|_s < 1
inline Rat geo_sum(const Int& s, const Rat& r, long i0) {
    if (r == 0) return i0 <= 0 ? Rat(1) : Rat(0); // only the i = 0 term survives
    if (!(ord_rat(s, r) > 0)) throw std::domain_error("geo_sum: |r| >= 1");
    Rat ri = 1, base = r;
    long e = i0;
    if (e < 0) { base = Rat(1) / r; e = -e; }
    for (long i = 0; i < e; ++i) ri *= base;
    return ri / (Rat(1) - r);
}

// layered measure at depth n: density a(j) on each sphere {ord = j}, j < n,
// and a(n) on the core ball {ord >= n}
struct ShellFactor {
    long n = 1;
    bool normalized = true; // divide by the closed-form total mass

    static Rat raw_density(const PrimePair& P, long j, long n) {
        Rat s(P.s), p(P.p);
        if (j >= n) return (Rat(1) - rpow(P.s, -n)) * rpow(P.p, -n);
        // (1-s)(1-1/p) s^(2n-1-j) p^(-n)
        return (Rat(1) - s) * (Rat(1) - Rat(1) / p) * rpow(P.s, 2 * n - 1 - j) * rpow(P.p, -n);
    }

    // total mass: layers summed s-adically in closed form
    static Rat raw_total(const PrimePair& P, long n) {
        Rat s(P.s), p(P.p);
        Rat layer = (Rat(1) - s) * (Rat(1) - Rat(1) / p) * (Rat(1) - Rat(1) / p)
                  * rpow(P.s, n) * rpow(P.p, 1 - 2 * n) / (Rat(1) - s * p);
        Rat core = (Rat(1) - rpow(P.s, -n)) * rpow(P.p, -2 * n);
        return layer + core;
    }

    // partial total over spheres j >= jmin only (plus the core)
    static Rat raw_total_window(const PrimePair& P, long n, long jmin) {
        Rat t = (Rat(1) - rpow(P.s, -n)) * rpow(P.p, -n) * rpow(P.p, -n);
        for (long j = jmin; j < n; ++j)
            t += raw_density(P, j, n) * sphere_haar(P.p, j);
        return t;
    }

    Rat scale(const PrimePair& P) const {
        return normalized ? Rat(Rat(1) / raw_total(P, n)) : Rat(1);
    }
    Rat density_at_ord(const PrimePair& P, long j) const {
        return raw_density(P, std::min(j, n), n) * scale(P);
    }
    Rat mass(const PrimePair& P) const {
        return normalized ? Rat(1) : raw_total(P, n);
    }
    // integral over {ord >= A}
    Rat tail_integral(const PrimePair& P, long A) const {
        if (A >= n) return density_at_ord(P, n) * rpow(P.p, -A);
        Rat t = density_at_ord(P, n) * rpow(P.p, -n);
        for (long j = A; j < n; ++j) t += density_at_ord(P, j) * sphere_haar(P.p, j);
        return t;
    }
};

// unit-mass measure whose density decays in powers of s away from x0:
// density C at {ord(x - x0) >= e} and C * s^(q(e-o)) on the sphere {ord = o}, o < e
struct NuFactor {
    long q = 2;    // decay exponent
    long e = 0;    // ord of the scale parameter
    Rat x0 = 0;

    Rat w(const PrimePair& P) const { return rpow(P.s, q); }

    // C = p^e (1 - s^q p)/(1 - s^q) makes the total mass exactly 1
    Rat C(const PrimePair& P) const {
        Rat W = w(P);
        return rpow(P.p, e) * (Rat(1) - W * Rat(P.p)) / (Rat(1) - W);
    }
    Rat density_at_ord(const PrimePair& P, long o) const {
        if (o >= e) return C(P);
        Rat W = w(P), pw = 1;
        for (long i = 0; i < e - o; ++i) pw *= W;
        return C(P) * pw;
    }
    Rat mass(const PrimePair&) const { return 1; }
    // integral over {ord(x - x0) >= A}
    Rat tail_integral(const PrimePair& P, long A) const {
        if (A >= e) return C(P) * rpow(P.p, -A);
        Rat t = C(P) * rpow(P.p, -e);
        for (long o = A; o < e; ++o) t += density_at_ord(P, o) * sphere_haar(P.p, o);
        return t;
    }
};

// plain one-dimensional cell measure as a factor
struct CellFactor {
    CellMeasure m;
};

struct Factor {
    std::variant<ShellFactor, NuFactor, CellFactor> v;

    static Factor shell(long n, bool normalized = true) { return {ShellFactor{n, normalized}}; }
    static Factor nu(long q, long e, Rat x0 = 0) { return {NuFactor{q, e, std::move(x0)}}; }
    static Factor cell(CellMeasure m) { return {CellFactor{std::move(m)}}; }

    Rat mass(const PrimePair& P) const {
        if (auto* sf = std::get_if<ShellFactor>(&v)) return sf->mass(P);
        if (auto* nf = std::get_if<NuFactor>(&v)) return nf->mass(P);
        return std::get<CellFactor>(v).m.mass();
    }

    Rat center(const PrimePair&) const {
        if (auto* nf = std::get_if<NuFactor>(&v)) return nf->x0;
        return 0;
    }

    Rat density_at(const PrimePair& P, const Rat& x) const {
        if (auto* cf = std::get_if<CellFactor>(&v)) return cf->m.density_at({x});
        Rat d = x - center(P);
        if (auto* sf = std::get_if<ShellFactor>(&v)) {
            long j = d == 0 ? sf->n : std::min(ord_rat(P.p, d), sf->n);
            return sf->density_at_ord(P, j);
        }
        const NuFactor& nf = std::get<NuFactor>(v);
        long o = d == 0 ? nf.e : std::min(ord_rat(P.p, d), nf.e);
        return nf.density_at_ord(P, o);
    }

    // exact integral over a one-dimensional ball
    Rat ball_integral(const PrimePair& P, const Ball& b) const {
        if (b.dim() != 1) throw std::invalid_argument("ball_integral: not 1-dim");
        if (auto* cf = std::get_if<CellFactor>(&v)) return cf->m.measure_of(b);
        Rat ctr = b.c[0] - center(P);
        long A = b.k[0];
        bool zero_centered = (ctr == 0) || ord_rat(P.p, ctr) >= A;
        if (auto* sf = std::get_if<ShellFactor>(&v)) {
            if (zero_centered) return sf->tail_integral(P, A);
            return sf->density_at_ord(P, ord_rat(P.p, ctr)) * rpow(P.p, -A);
        }
        const NuFactor& nf = std::get<NuFactor>(v);
        if (zero_centered) return nf.tail_integral(P, A);
        return nf.density_at_ord(P, ord_rat(P.p, ctr)) * rpow(P.p, -A);
    }

    Rat clopen_integral(const PrimePair& P, const ClopenSet& s) const {
        Rat t = 0;
        for (const Ball& b : s.cells) t += ball_integral(P, b);
        return t;
    }

    // sup of |density|_s over {ord(x - x0) < r}: the escaping region
    NormVal norm_outside(const PrimePair& P, long r) const {
        if (auto* cf = std::get_if<CellFactor>(&v)) {
            NormVal m = NormVal::zero_of(P.s);
            for (const auto& [b, d] : cf->m.cells) {
                bool meets = b.c[0] != 0 ? ord_rat(P.p, b.c[0]) < r : b.k[0] < r;
                if (meets) m = std::max(m, s_norm(P, d));
            }
            return m;
        }
        if (auto* sf = std::get_if<ShellFactor>(&v)) {
            // densities on spheres j < r; include the core value when r > n
            NormVal m = s_norm(P, sf->density_at_ord(P, std::min(r - 1, sf->n)));
            if (r > sf->n) m = std::max(m, s_norm(P, sf->density_at_ord(P, sf->n)));
            return m;
        }
        const NuFactor& nf = std::get<NuFactor>(v);
        return s_norm(P, nf.density_at_ord(P, std::min(r - 1, nf.e)));
    }

    // smallest radius exponent A with full mass inside {ord(x-x0) >= A}, if any
    std::optional<long> support_radius(const PrimePair& P) const {
        if (auto* cf = std::get_if<CellFactor>(&v)) {
            std::optional<long> r;
            for (const auto& [b, d] : cf->m.cells) {
                long lo = b.c[0] != 0 ? std::min(ord_rat(P.p, b.c[0]), b.k[0]) : b.k[0];
                r = r ? std::min(*r, lo) : lo;
            }
            return r;
        }
        return std::nullopt; // layered families meet every sphere
    }
};

} // namespace uml

#endif
