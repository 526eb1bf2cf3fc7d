#ifndef UML_PDIFF_HPP
#define UML_PDIFF_HPP

#include "factor.hpp"
#include "laurent.hpp"

namespace uml {

// kernel weight on the sphere {ord(x-y) = j}: s^(-j) T^j with T = s^(-b)
inline LaurentT pd_kernel_weight(const PrimePair& P, long j, const Rat& coef) {
    return LaurentT::monomial(j, coef * rpow(P.s, -j));
}

// (D f)(x) = integral of (f(x) - f(y)) s^(-j) T^j dy, j = ord(x - y),
// over the whole line or over a clopen window; exact Laurent data in T
inline LaurentT pd_evaluate(const PrimePair& P, const StepFunction& f, const Rat& x,
                            const ClopenSet* domain = nullptr) {
    for (const auto& [b, v] : f.pieces)
        if (b.dim() != 1) throw std::invalid_argument("pd_evaluate: 1-dim only");
    Rat fx = f.value_at(P.p, {x});
    std::vector<Ball> walls;
    for (const auto& [b, v] : f.pieces) walls.push_back(b);
    long R = 0;
    if (domain) {
        for (const Ball& b : domain->cells) walls.push_back(b);
    } else {
        // bounding ball about 0 containing the support and x
        if (x != 0) R = std::min(R, ord_rat(P.p, x));
        for (const auto& [b, v] : f.pieces) {
            R = std::min(R, b.k[0]);
            if (b.c[0] != 0) R = std::min(R, ord_rat(P.p, b.c[0]));
        }
        walls.push_back(ord_ball(R));
    }
    LaurentT out;
    for (const Ball& leaf : arrangement_leaves(P.p, walls)) {
        if (domain && !domain->contains_point(P.p, leaf.c)) continue;
        Rat v = f.value_at(P.p, leaf.c);
        if (leaf.contains_point(P.p, {x})) {
            if (v != fx) throw std::logic_error("pd_evaluate: leaf value mismatch at x");
            continue; // integrand vanishes where f equals f(x)
        }
        if (v == fx) continue;
        Rat d = x - leaf.c[0];
        long j = ord_rat(P.p, d); // constant on a leaf not containing x
        out = out.plus(pd_kernel_weight(P, j, (fx - v) * leaf.haar(P.p)));
    }
    if (!domain && fx != 0) {
        // spheres below the bounding ball: geometric tail in T^(-1), ratio sp/T
        TailRecord tail;
        tail.c = fx * (Rat(1) - Rat(1, P.p));
        tail.u = Rat(P.s * P.p);
        tail.k0 = -R + 1;
        tail.dir = -1;
        out.add_tail(tail);
    }
    return out;
}

// lambda-profile of a shifted set: mu(S - lambda a) as a step function of lambda,
// each (measure cell, set cell) pair switching on inside one lambda-ball
inline StepFunction shift_profile(const CellMeasure& mu, const Rat& a, const ClopenSet& S) {
    if (a == 0) throw std::invalid_argument("shift_profile: zero direction");
    const PrimePair& P = mu.P;
    long oa = ord_rat(P.p, a);
    std::vector<std::pair<Ball, Rat>> contrib;
    for (const auto& [C, d] : mu.cells) {
        if (C.dim() != 1) throw std::invalid_argument("shift_profile: 1-dim only");
        for (const Ball& B : S.cells) {
            long m = std::min(C.k[0], B.k[0]);
            long M = std::max(C.k[0], B.k[0]);
            Rat ctr = (B.c[0] - C.c[0]) / a;
            contrib.push_back({Ball{{ctr}, {m - oa}}, d * rpow(P.p, -M)});
        }
    }
    return StepFunction{accumulate_cells(P.p, contrib)};
}

// integral of (mu(S) - mu(S - lambda a)) s^(-j) T^j d lambda, j = ord(lambda):
// the derivative-like pairing of the shift gap against the kernel
inline LaurentT pd_measure_shift(const CellMeasure& mu, const Rat& a, const ClopenSet& S) {
    const PrimePair& P = mu.P;
    StepFunction phi = shift_profile(mu, a, S);
    Rat muS = mu.measure_of(S);
    std::vector<Ball> walls;
    long R = 0;
    for (const auto& [b, v] : phi.pieces) {
        walls.push_back(b);
        R = std::min(R, b.k[0]);
        if (b.c[0] != 0) R = std::min(R, ord_rat(P.p, b.c[0]));
    }
    walls.push_back(ord_ball(R));
    LaurentT out;
    for (const Ball& leaf : arrangement_leaves(P.p, walls)) {
        Rat v = phi.value_at(P.p, leaf.c);
        if (leaf.contains_point(P.p, {Rat(0)})) {
            if (v != muS) throw std::logic_error("pd_measure_shift: profile wrong at 0");
            continue; // h(0) = 0 and h is locally constant
        }
        Rat h = v - muS;
        if (h == 0) continue;
        long j = ord_rat(P.p, leaf.c[0]);
        out = out.plus(pd_kernel_weight(P, j, h * leaf.haar(P.p)));
    }
    if (muS != 0) {
        TailRecord tail;
        tail.c = -muS * (Rat(1) - Rat(1, P.p));
        tail.u = Rat(P.s * P.p);
        tail.k0 = -R + 1;
        tail.dir = -1;
        out.add_tail(tail);
    }
    return out;
}

// ---- decay order of shift gaps for the heavy-tailed unit-mass family ----

struct SmallnessSample {
    long m = 0;          // shift t = p^m
    long gap_ord = 0;    // ord_s of nu(S + t) - nu(S)
    Rat fitted;          // gap_ord / m
};

struct SmallnessReport {
    long q = 0;
    std::vector<SmallnessSample> samples;
    size_t ball_count = 0;
    bool exact_power = false; // every sample fits gap = |t|^q on the nose
};

// witness family: tiers of balls pinned just off the heavy threshold so that a
// shift by p^m collides exactly one tier into the heavy region, with tier
// multiplicities s^(q i) sized to make that collision dominate at order q*m.
// every ball sits inside a single sphere, so its integral is
// density(min(ord, E)) * p^(-radius); only the ord census changes under a shift
inline SmallnessReport smallness_order(const PrimePair& P, long q = 2, long E = 6,
                                       long tiers = 5, long radius = 23) {
    NuFactor nf{q, E, Rat(0)};
    std::vector<Int> centers;
    Int pE = ipow(P.p, E);
    for (long i = 1; i <= tiers; ++i) {
        Int mult = ipow(P.s, q * i);
        Int off = ipow(P.p, i);
        for (Int w = 0; w < mult; ++w)
            centers.push_back(pE * (Int(1) + w) - off);
    }
    std::vector<Rat> dens(E + 1);
    for (long o = 0; o <= E; ++o) dens[o] = nf.density_at_ord(P, o);
    auto capped_ord = [&](const Int& c) {
        if (c == 0) throw std::logic_error("smallness_order: ball at the origin");
        long o = ord_int(P.p, c);
        if (o >= radius) throw std::logic_error("smallness_order: ball spans spheres");
        return std::min(o, E);
    };
    SmallnessReport rep;
    rep.q = q;
    rep.ball_count = centers.size();
    rep.exact_power = true;
    Rat ball_haar = rpow(P.p, -radius);
    for (long m = 1; m <= tiers; ++m) {
        Int t = ipow(P.p, m);
        std::vector<long> census(E + 1, 0);
        for (const Int& c : centers) {
            census[capped_ord(c + t)] += 1;
            census[capped_ord(c)] -= 1;
        }
        Rat gap = 0;
        for (long o = 0; o <= E; ++o)
            if (census[o] != 0) gap += Rat(census[o]) * dens[o] * ball_haar;
        if (gap == 0) throw std::logic_error("smallness_order: zero gap");
        SmallnessSample smp;
        smp.m = m;
        smp.gap_ord = ord_rat(P.s, gap);
        smp.fitted = Rat(smp.gap_ord, m);
        if (smp.fitted != q) rep.exact_power = false;
        rep.samples.push_back(smp);
    }
    return rep;
}

} // namespace uml

#endif
