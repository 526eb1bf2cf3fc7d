#ifndef UML_CHECKS_HPP
#define UML_CHECKS_HPP

#include <algorithm>
#include <chrono>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "uml/fourier.hpp"
#include "uml/measures.hpp"
#include "uml/pdiff.hpp"
#include "uml/quasi.hpp"
#include "uml/shells.hpp"
#include "uml/weakdist.hpp"

// End-to-end verification battery.  Every check is exact (rational or
// cyclotomic equality); tolerances appear only as s-adic order thresholds on
// truncation gaps.  run_all_checks() is what both the test runner and the
// command-line `selftest` execute.

namespace uml {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    long ms = 0;
    long limit_ms = 0;
};

namespace checks {

using Clock = std::chrono::steady_clock;

inline long ri(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long long>(hi - lo + 1));
}

inline Rat rand_rat(std::mt19937_64& rng, long maxnum, bool nonzero) {
    static const long dens[] = {1, 2, 3, 4, 5, 6, 8, 9};
    long n = ri(rng, -maxnum, maxnum);
    if (nonzero)
        while (n == 0) n = ri(rng, -maxnum, maxnum);
    return Rat(n, dens[ri(rng, 0, 7)]);
}

// random measure supported on level-L cells of Z_p^d, distinct centers
inline CellMeasure rand_measure(std::mt19937_64& rng, const PrimePair& P,
                                size_t d, long L, long count) {
    long side = static_cast<long>(ipow(P.p, L));
    long total = 1;
    for (size_t i = 0; i < d; ++i) total *= side;
    count = std::min(count, total);
    std::vector<long> idx(total);
    std::iota(idx.begin(), idx.end(), 0L);
    for (long i = total - 1; i > 0; --i) std::swap(idx[i], idx[ri(rng, 0, i)]);
    std::vector<std::pair<Ball, Rat>> cells;
    for (long c = 0; c < count; ++c) {
        long code = idx[c];
        std::vector<Rat> ctr(d);
        for (size_t i = 0; i < d; ++i) {
            ctr[i] = Rat(code % side);
            code /= side;
        }
        cells.push_back({Ball{ctr, std::vector<long>(d, L)}, rand_rat(rng, 9, true)});
    }
    return CellMeasure::make(P, cells);
}

inline CellMeasure rand_prob_measure(std::mt19937_64& rng, const PrimePair& P,
                                     size_t d, long L, long count) {
    for (int tries = 0; tries < 64; ++tries) {
        CellMeasure m = rand_measure(rng, P, d, L, count);
        if (m.mass() != 0) return m.normalized();
    }
    return CellMeasure::haar_unit(P, d);
}

inline StepFunction rand_step(std::mt19937_64& rng, const Int& p, size_t d,
                              long L, long count) {
    PrimePair P{p, p == 2 ? Int(3) : Int(2)};
    CellMeasure m = rand_measure(rng, P, d, L, count);
    std::vector<std::pair<Ball, Rat>> pieces(m.cells.begin(), m.cells.end());
    return StepFunction::make(p, pieces);
}

template <typename F>
inline CheckResult timed(int id, const std::string& name, long limit_ms, F body) {
    CheckResult r;
    r.id = id;
    r.name = name;
    r.limit_ms = limit_ms;
    auto t0 = Clock::now();
    std::ostringstream out;
    try {
        r.pass = body(out);
    } catch (const std::exception& e) {
        r.pass = false;
        out << " exception: " << e.what();
    }
    r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    if (r.ms >= limit_ms) r.pass = false;
    r.detail = out.str();
    return r;
}

// 1. closed-form total mass of the shell family is exactly 1 after
//    normalization; the truncated window at j_min = -12 agrees with the
//    closed form to order >= 10 in s
inline CheckResult check_shell_mass() {
    return timed(1, "shell-normalization", 1000, [](std::ostringstream& out) {
        PrimePair P{2, 3};
        bool ok = true;
        out << "window gap ord:";
        for (long n = 1; n <= 3; ++n) {
            Factor f = Factor::shell(n);
            ok = ok && f.mass(P) == 1;
            Rat gap = ShellFactor::raw_total(P, n) - ShellFactor::raw_total_window(P, n, -12);
            long o = gap == 0 ? 9999 : ord_rat(P.s, gap);
            ok = ok && o >= 10;
            out << " " << o;
            NormalizeReport r = normalize_check(P, n, -12);
            ok = ok && r.ok;
        }
        out << " (need >= 10); normalized mass exact 1 for n=1,2,3";
        return ok;
    });
}

// 2. shifting by ord(a) >= n moves no mass: the set-level gap vanishes on
//    every shell, and densities match on the exhaustive grid at level n+3
inline CheckResult check_shift_gap() {
    return timed(2, "shift-invariance-gap", 1000, [](std::ostringstream& out) {
        PrimePair P{2, 3};
        bool ok = true;
        long sets = 0, points = 0;
        for (long n = 1; n <= 3; ++n) {
            ShellFactor sf{n, true};
            Factor f = Factor::shell(n);
            std::vector<Rat> shifts = {rpow(P.p, n), -rpow(P.p, n), 3 * rpow(P.p, n),
                                       rpow(P.p, n + 2) * Rat(5)};
            std::vector<ClopenSet> targets;
            for (long j = -4; j < n; ++j) targets.push_back(sphere(P.p, j));
            targets.push_back(ClopenSet{{ord_ball(n)}});
            for (const auto& A : targets)
                for (const auto& a : shifts) {
                    ok = ok && quasi_invariance_gap(P, sf, A, a) == 0;
                    ++sets;
                }
            long G = n + 3;
            Int reps = ipow(P.p, G + 4);
            for (const auto& a : shifts)
                for (Int t = 0; t < reps; ++t) {
                    Rat x = Rat(t) * rpow(P.p, -4);
                    ok = ok && f.density_at(P, x - a) == f.density_at(P, x);
                    ++points;
                }
        }
        out << sets << " set gaps exactly 0, " << points
            << " grid densities equal under every shift with ord(a) >= n";
        return ok;
    });
}

// 3. characteristic table then inversion reproduces the measure exactly
inline CheckResult check_fourier_roundtrip() {
    return timed(3, "fourier-roundtrip", 10000, [](std::ostringstream& out) {
        PrimePair P{2, 3};
        std::mt19937_64 rng(11);
        bool ok = true;
        for (int i = 0; i < 50; ++i) {
            size_t d = 1 + i % 2;
            long L = 1 + i % 3;
            CellMeasure mu = rand_measure(rng, P, d, L, ri(rng, 1, 6));
            CellMeasure back = invert_theta(P, theta_table(mu, 3));
            ok = ok && back.same_measure(mu);
        }
        out << "50 random measures (dims <= 2, levels <= 3) reconstructed exactly";
        return ok;
    });
}

// 4. transform rules on full dual grids at level 3: convolution factorizes,
//    the product measure factorizes, and affine images twist by a character
inline CheckResult check_conv_product() {
    return timed(4, "convolution-product-affine", 10000, [](std::ostringstream& out) {
        PrimePair P{2, 3};
        std::mt19937_64 rng(22);
        static const Rat cs[] = {Rat(2), Rat(1, 2), Rat(3), Rat(3, 2), Rat(5), Rat(1, 4)};
        bool ok = true;
        for (int i = 0; i < 20; ++i) {
            CellMeasure mu = rand_prob_measure(rng, P, 1, 1 + i % 2, ri(rng, 1, 4));
            CellMeasure nu = rand_prob_measure(rng, P, 1, 1 + (i + 1) % 2, ri(rng, 1, 4));
            ok = ok && check_convolution(mu, nu, 3);
            ok = ok && check_product(mu, nu, 3);
            Rat c = cs[ri(rng, 0, 5)], t = rand_rat(rng, 6, false);
            CellMeasure im = mu.image_affine({c}, {t});
            for (const auto& xi : dual_grid(P.p, 3, 1)) {
                CycloValue lhs = theta(im, xi);
                CycloValue rhs = character_value(P, xi, {t}).times(theta(mu, {xi[0] * c}));
                ok = ok && lhs.equals(rhs);
            }
        }
        out << "20 probability pairs: theta(mu*nu)=theta(mu)theta(nu), "
               "theta(mu x nu) splits, affine image twists by a character "
               "(full level-3 dual grids)";
        return ok;
    });
}

// 5. the shift-density cocycle satisfies its three composition laws exactly
inline CheckResult check_cocycle() {
    return timed(5, "cocycle-identities", 5000, [](std::ostringstream& out) {
        PrimePair P{2, 3};
        std::mt19937_64 rng(33);
        bool ok = true;
        for (int i = 0; i < 200; ++i) {
            long n = 1 + i % 10;
            ShellFactor f{n, true};
            static const long odd[] = {1, 3, 5, 7, 9};
            auto small_shift = [&](void) {
                return rpow(P.p, n) * Rat(ri(rng, 1, 20) * (ri(rng, 0, 1) ? 1 : -1),
                                          odd[ri(rng, 0, 4)]);
            };
            Rat a = small_shift(), b = small_shift();
            long j = ri(rng, -5, n + 3);
            Rat x = rpow(P.p, j) * Rat(odd[ri(rng, 0, 4)], odd[ri(rng, 0, 4)]);
            ok = ok && cocycle_identity_I(P, f, a, b, x);
            ok = ok && cocycle_identity_II(P, f, x);
            ok = ok && cocycle_identity_III(P, f, a, x);
        }
        out << "200 samples x 3 identities, families n = 1..10, exact";
        return ok;
    });
}

// 6. product-family dichotomy: the constant-decay family is singular with a
//    certified envelope, the finitely-perturbed family is equivalent with the
//    exact product, and both agree with per-factor density inspection
inline CheckResult check_dichotomy() {
    return timed(6, "product-dichotomy", 5000, [](std::ostringstream& out) {
        PrimePair P{2, 3};
        CellMeasure haar = CellMeasure::haar_unit(P, 1);
        CellMeasure mu3 = haar.scaled(3), mu9 = haar.scaled(9);
        bool ok = true;
        // direct inspection: measured per-factor exponents at N <= 12
        std::vector<Rat> measured;
        for (int j = 0; j < 12; ++j) {
            NormVal b = beta_factor(mu3, haar);
            ok = ok && !b.zero;
            measured.push_back(-b.exp);
        }
        BetaFamily constant{measured, true, measured.back()};
        KakutaniReport rs = kakutani_classify(constant);
        ok = ok && rs.verdict == Kakutani::Singular && rs.certificate_N == 40;
        for (size_t N = 0; N < rs.partial_exponents.size(); ++N)
            ok = ok && rs.partial_exponents[N] == Rat(static_cast<long>(N + 1));
        NormVal b9 = beta_factor(mu9, haar);
        BetaFamily perturbed{{-beta_factor(mu3, haar).exp, -b9.exp}, true, Rat(0)};
        KakutaniReport re = kakutani_classify(perturbed);
        ok = ok && re.verdict == Kakutani::Equivalent && re.product == Rat(-3);
        for (size_t N = 1; N < re.partial_exponents.size(); ++N)
            ok = ok && re.partial_exponents[N] == Rat(3);
        out << "constant family singular (certificate N=" << rs.certificate_N
            << "), perturbed family equivalent (product exponent "
            << rat_str(re.product) << "), inspection at N <= 12 agrees";
        return ok;
    });
}

// 7. pushforward density: the closed formula |det U|^(-1) f(U^(-1) x) equals
//    the preimage-mass oracle, pointwise and as measures
inline CheckResult check_transform() {
    return timed(7, "pushforward-density", 10000, [](std::ostringstream& out) {
        PrimePair P{2, 3};
        std::mt19937_64 rng(44);
        using Mat = std::vector<std::vector<Rat>>;
        std::vector<Mat> mats = {
            {{Rat(2)}},
            {{Rat(1, 2)}},
            {{Rat(3)}},
            {{Rat(2), Rat(0)}, {Rat(0), Rat(1, 2)}},
            {{Rat(1), Rat(1, 2)}, {Rat(0), Rat(1)}},
            {{Rat(2), Rat(1)}, {Rat(0), Rat(3)}},
        };
        bool ok = true;
        long points = 0;
        for (const Mat& U : mats) {
            size_t d = U.size();
            CellMeasure mu = rand_prob_measure(rng, P, d, 2, ri(rng, 1, 4));
            TransformResult r = transform_density(mu, U, 4);
            ok = ok && r.agree;
            for (int q = 0; q < 20; ++q) {
                std::vector<Rat> x(d);
                for (size_t i = 0; i < d; ++i)
                    x[i] = Rat(ri(rng, -40, 40), 1) * rpow(P.p, -1);
                ok = ok && r.formula.density_at(x) == r.oracle.density_at(x);
                ++points;
            }
        }
        out << mats.size() << " diagonal/triangular matrices, measures agree, "
            << points << " sample densities equal exactly";
        return ok;
    });
}

// 8. kernel-operator closed forms: the unit-ball indicator evaluates to -3/5
//    at T = 1 with depth-25 partials within 3^-20; the compactly-supported
//    variant vanishes on the support; linearity and translation covariance
inline CheckResult check_kernel_closed_forms() {
    return timed(8, "kernel-closed-forms", 5000, [](std::ostringstream& out) {
        PrimePair P{2, 3};
        std::mt19937_64 rng(55);
        bool ok = true;
        ClopenSet unit{{Ball::unit(1)}};
        StepFunction ch = StepFunction::indicator(unit);
        LaurentT full = pd_evaluate(P, ch, Rat(0));
        Rat v = full.evaluate(P.s, Rat(1));
        ok = ok && v == Rat(-3, 5);
        Rat part = full.partial_evaluate(Rat(1), 25);
        long gap_ord = v == part ? 9999 : ord_rat(P.s, v - part);
        ok = ok && gap_ord >= 20;
        for (long t = 0; t < 8; ++t) {
            LaurentT inside = pd_evaluate(P, ch, Rat(t), &unit);
            ok = ok && inside.is_zero();
        }
        long lin = 0, trans = 0;
        for (int i = 0; i < 50; ++i) {
            StepFunction f = rand_step(rng, P.p, 1, ri(rng, 1, 3), ri(rng, 1, 5));
            StepFunction g = rand_step(rng, P.p, 1, ri(rng, 1, 3), ri(rng, 1, 5));
            Rat al = rand_rat(rng, 9, true), be = rand_rat(rng, 9, true);
            Rat x = Rat(ri(rng, -8, 15));
            LaurentT lhs = pd_evaluate(P, f.scaled(al).plus(P.p, g.scaled(be)), x);
            LaurentT fa = pd_evaluate(P, f, x), gb = pd_evaluate(P, g, x);
            for (Rat T : {Rat(1), Rat(2)}) {
                ok = ok && lhs.evaluate(P.s, T) ==
                               al * fa.evaluate(P.s, T) + be * gb.evaluate(P.s, T);
            }
            ++lin;
            Rat t = Rat(ri(rng, -6, 6));
            LaurentT moved = pd_evaluate(P, f.shifted(P.p, {t}), x + t);
            for (Rat T : {Rat(1), Rat(2)})
                ok = ok && moved.evaluate(P.s, T) == fa.evaluate(P.s, T);
            ++trans;
        }
        out << "value -3/5 exact, depth-25 partial gap ord " << gap_ord
            << " (need >= 20), vanishes on support, linearity x" << lin
            << " and translation x" << trans << " exact";
        return ok;
    });
}

// 9. towers: products of unit-mass factors pass consistency exactly; the
//    shell tower passes tightness on a uniform radius schedule; a seeded
//    inconsistent tower is rejected with a concrete witness
inline CheckResult check_towers() {
    return timed(9, "tower-consistency-tightness", 5000, [](std::ostringstream& out) {
        PrimePair P{2, 3};
        std::mt19937_64 rng(77);
        ClopenSet probe = ClopenSet::of(P.p, {Ball{{Rat(1)}, {2}}});
        bool ok = true;
        Tower good{P, {Factor::shell(1), Factor::shell(2), Factor::shell(3), Factor::nu(2, 1)}};
        ok = ok && consistency_check(good, probe).consistent;
        Tower cells{P, {Factor::cell(rand_prob_measure(rng, P, 1, 2, 3)),
                        Factor::cell(CellMeasure::haar_unit(P, 1)),
                        Factor::cell(rand_prob_measure(rng, P, 1, 1, 2))}};
        ok = ok && consistency_check(cells, probe).consistent;
        TightnessReport tr = tightness_check(good, {-2, -4, -6, -8});
        ok = ok && tr.certified;
        ok = ok && !tr.profile.empty() &&
             tr.profile.back().second < NormVal::pow_of(P.s, -10);
        Tower bad{P, {Factor::shell(1), Factor::shell(2, false)}};
        ConsistencyReport cr = consistency_check(bad, probe);
        ok = ok && !cr.consistent && cr.witness_index == 1 &&
             cr.witness_mass == Rat(121, 720) && cr.level_lo != cr.level_hi;
        out << "unit-mass towers consistent; tightness certified down to "
            << (tr.profile.empty() ? std::string("-") : tr.profile.back().second.str())
            << "; seeded defect rejected with witness index " << cr.witness_index
            << " mass " << rat_str(cr.witness_mass);
        return ok;
    });
}

// 10. cylinder integrals are stable under adding unit-mass tail factors
inline CheckResult check_martingale() {
    return timed(10, "truncation-martingale", 5000, [](std::ostringstream& out) {
        PrimePair P{2, 3};
        std::mt19937_64 rng(66);
        Tower T{P, {Factor::shell(1), Factor::shell(2), Factor::shell(3),
                    Factor::nu(2, 0), Factor::nu(2, 1),
                    Factor::cell(rand_prob_measure(rng, P, 1, 2, 3)),
                    Factor::cell(rand_prob_measure(rng, P, 1, 1, 2)),
                    Factor::cell(CellMeasure::haar_unit(P, 1))}};
        bool ok = true;
        for (int i = 0; i < 50; ++i) {
            size_t d = 1 + i % 3;
            StepFunction psi = rand_step(rng, P.p, d, ri(rng, 1, 2), ri(rng, 1, 4));
            std::vector<Rat> vals = martingale_values(T, psi, 7);
            ok = ok && vals.size() >= 2;
            for (size_t k = 1; k < vals.size(); ++k) ok = ok && vals[k] == vals[0];
        }
        out << "50 random cylinder functions, integrals equal across all "
               "truncation levels below 8";
        return ok;
    });
}

}  // namespace checks

inline std::vector<CheckResult> run_all_checks() {
    using namespace checks;
    return {check_shell_mass(),    check_shift_gap(), check_fourier_roundtrip(),
            check_conv_product(),  check_cocycle(),   check_dichotomy(),
            check_transform(),     check_kernel_closed_forms(),
            check_towers(),        check_martingale()};
}

inline int print_check_lines(const std::vector<CheckResult>& rs, std::ostream& os) {
    int failures = 0;
    for (const auto& r : rs) {
        os << (r.pass ? "[PASS] " : "[FAIL] ") << (r.id < 10 ? "0" : "") << r.id
           << " " << r.name << ": " << r.detail << "; " << r.ms << " ms (limit "
           << r.limit_ms << ")\n";
        if (!r.pass) ++failures;
    }
    return failures;
}

}  // namespace uml

#endif
