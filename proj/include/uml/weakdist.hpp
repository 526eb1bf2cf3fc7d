#ifndef UML_WEAKDIST_HPP
#define UML_WEAKDIST_HPP

#include "config.hpp"
#include "factor.hpp"

namespace uml {

// projective family of product measures: level n uses the first n factors
struct Tower {
    PrimePair P;
    std::vector<Factor> factors;

    size_t levels() const { return factors.size(); }

    // measure of a polydisc cylinder through the first dim(A) coordinates
    Rat cell_measure(const Ball& b) const {
        if (b.dim() > factors.size())
            throw std::invalid_argument("cell_measure: not enough factors");
        Rat t = 1;
        for (size_t i = 0; i < b.dim(); ++i)
            t *= factors[i].ball_integral(P, Ball{{b.c[i]}, {b.k[i]}});
        return t;
    }
    Rat set_measure(const ClopenSet& A) const {
        Rat t = 0;
        for (const Ball& b : A.cells) t += cell_measure(b);
        return t;
    }
    // the same cylinder read at a deeper level: extra factors contribute their mass
    Rat set_measure_at_level(const ClopenSet& A, size_t level) const {
        if (level < A.dim() || level > factors.size())
            throw std::invalid_argument("set_measure_at_level: bad level");
        Rat t = set_measure(A);
        for (size_t i = A.dim(); i < level; ++i) t *= factors[i].mass(P);
        return t;
    }
};

struct ConsistencyReport {
    bool consistent = true;
    long witness_index = -1; // first factor past the base with mass != 1
    Rat witness_mass = 1;
    ClopenSet witness_set;   // cylinder where the two levels disagree
    Rat level_lo = 0, level_hi = 0;
};

inline ConsistencyReport consistency_check(const Tower& T, const ClopenSet& probe) {
    ConsistencyReport r;
    for (size_t i = 1; i < T.factors.size(); ++i) {
        if (T.factors[i].mass(T.P) != 1) {
            r.consistent = false;
            r.witness_index = (long)i;
            r.witness_mass = T.factors[i].mass(T.P);
            r.witness_set = probe;
            r.level_lo = T.set_measure_at_level(probe, i);
            r.level_hi = T.set_measure_at_level(probe, i + 1);
            return r;
        }
    }
    r.level_lo = r.level_hi = T.set_measure(probe);
    return r;
}

struct TightnessReport {
    std::vector<std::pair<long, NormVal>> profile; // radius exponent -> escaping norm
    bool certified = false; // strictly shrinking along the schedule
};

// uniform escape-of-mass bound: the largest |density|_s any factor shows
// outside {ord >= r}, tracked along a schedule of growing balls (r decreasing)
inline TightnessReport tightness_check(const Tower& T, const std::vector<long>& radii) {
    TightnessReport rep;
    for (long r : radii) {
        NormVal worst = NormVal::zero_of(T.P.s);
        for (const Factor& f : T.factors) worst = std::max(worst, f.norm_outside(T.P, r));
        rep.profile.push_back({r, worst});
    }
    rep.certified = !rep.profile.empty();
    for (size_t i = 1; i < rep.profile.size(); ++i) {
        const NormVal& prev = rep.profile[i - 1].second;
        const NormVal& cur = rep.profile[i].second;
        if (!(cur < prev) && !(cur == prev && cur.zero)) rep.certified = false;
    }
    return rep;
}

// integral of psi (a function of the first dim coordinates) at each truncation
// level: the values agree exactly when the deeper factors all have mass 1
inline std::vector<Rat> martingale_values(const Tower& T, const StepFunction& psi,
                                          size_t max_level) {
    std::vector<Rat> out;
    for (size_t lvl = psi.dim(); lvl <= std::min(max_level, T.factors.size()); ++lvl) {
        Rat t = 0;
        for (const auto& [b, v] : psi.pieces) {
            Rat cell = 1;
            for (size_t i = 0; i < b.dim(); ++i)
                cell *= T.factors[i].ball_integral(T.P, Ball{{b.c[i]}, {b.k[i]}});
            for (size_t i = b.dim(); i < lvl; ++i) cell *= T.factors[i].mass(T.P);
            t += v * cell;
        }
        out.push_back(t);
    }
    return out;
}

// ---- the scale-parameter transform functional ----

// G_e(x) = integral of chi(xy) against the unit-mass decay family with
// threshold e: an exact step function of M = ord(x), vanishing below -e
inline Rat g_transform_at_ord(const PrimePair& P, long q, long e, long M) {
    if (M < -e) return 0;
    NuFactor nf{q, e, Rat(0)};
    return nf.tail_integral(P, -M) - nf.density_at_ord(P, -M - 1) * rpow(P.p, M);
}

// integral of G_e * f over one cell of f (value v), in closed form
inline Rat g_transform_cell_integral(const PrimePair& P, long q, long e,
                                     const Ball& cell, const Rat& v) {
    if (cell.dim() != 1) throw std::invalid_argument("g_transform: 1-dim only");
    NuFactor nf{q, e, Rat(0)};
    Rat W = nf.w(P);
    long k = cell.k[0];
    bool zero_in = cell.c[0] == 0 || ord_rat(P.p, cell.c[0]) >= k;
    if (!zero_in) {
        long M = ord_rat(P.p, cell.c[0]);
        return v * g_transform_at_ord(P, q, e, M) * rpow(P.p, -k);
    }
    // ball about 0: haar part plus the G - 1 tail, both exact
    Rat pe = rpow(P.p, e);
    Rat pm1 = Rat(P.p) - 1;
    if (k < -e) return v * (pe - pm1 * pe * W / (Rat(1) - W));
    Rat Wk = 1;
    for (long i = 0; i < e + k + 1; ++i) Wk *= W;
    return v * (rpow(P.p, -k) - pm1 * pe * Wk / (Rat(1) - W));
}

// product functional: S(f) = prod over coordinates of integral G_e * f_l
inline Rat s_xi_value(const PrimePair& P, long q, long e,
                      const std::vector<StepFunction>& fs) {
    Rat t = 1;
    for (const StepFunction& f : fs) {
        Rat c = 0;
        for (const auto& [b, v] : f.pieces) c += g_transform_cell_integral(P, q, e, b, v);
        t *= c;
    }
    return t;
}

struct SXiSample {
    long xi_ord;     // ord of the scale parameter
    long e_eff;      // threshold used by the kernel under the chosen reading
    Rat value;
    NormVal gap;     // |S(f) - limit|_s
};

struct SXiReport {
    OrdReading reading = OrdReading::Quotient;
    Rat limit;       // product of the plain volume integrals
    std::vector<SXiSample> samples;
    bool certified = false; // gaps strictly shrink along the schedule
};

// trend of S(f) toward the volume integral as the scale parameter moves in the
// direction selected by the reading of the two-argument valuation
inline SXiReport s_xi_trend(const PrimePair& P, long q, const std::vector<long>& xi_ords,
                            const std::vector<StepFunction>& fs,
                            OrdReading reading = OrdReading::Quotient) {
    SXiReport rep;
    rep.reading = reading;
    rep.limit = 1;
    for (const StepFunction& f : fs) {
        Rat c = 0;
        for (const auto& [b, v] : f.pieces) c += v * b.haar(P.p);
        rep.limit = rep.limit * c;
    }
    for (long xo : xi_ords) {
        SXiSample smp;
        smp.xi_ord = xo;
        smp.e_eff = reading == OrdReading::Quotient ? xo : -xo;
        smp.value = s_xi_value(P, q, smp.e_eff, fs);
        smp.gap = s_norm(P, smp.value - rep.limit);
        rep.samples.push_back(smp);
    }
    rep.certified = !rep.samples.empty();
    for (size_t i = 1; i < rep.samples.size(); ++i)
        if (!(rep.samples[i].gap < rep.samples[i - 1].gap)) rep.certified = false;
    return rep;
}

} // namespace uml

#endif
