#ifndef UML_QUASI_HPP
#define UML_QUASI_HPP

#include "factor.hpp"
#include <sstream>

namespace uml {

// ---- layered measure diagnostics ----

struct NormalizeReport {
    Rat raw_total;          // closed-form mass of the raw densities
    Rat window_total;       // finite window approximation of the same mass
    long window_jmin;
    Rat normalized_mass;    // after rescaling, exactly 1
    NormVal sup_density;    // s-size of the largest normalized density
    NormVal core_gap;       // |m(core ball) - 1|_s for the normalized measure
    long expected_gap_exp;  // the gap should be exactly s^(-2n)
    bool ok;
};

inline NormalizeReport normalize_check(const PrimePair& P, long n, long window_jmin) {
    NormalizeReport r;
    r.raw_total = ShellFactor::raw_total(P, n);
    r.window_jmin = window_jmin;
    r.window_total = ShellFactor::raw_total_window(P, n, window_jmin);
    ShellFactor f{n, true};
    r.normalized_mass = f.mass(P);
    NormVal sup = NormVal::zero_of(P.s);
    for (long j = std::min(0L, -n); j <= n; ++j)
        sup = std::max(sup, s_norm(P, f.density_at_ord(P, j)));
    r.sup_density = sup;
    Rat core = f.tail_integral(P, n); // normalized measure of the core ball
    r.core_gap = s_norm(P, core - 1);
    r.expected_gap_exp = -2 * n;
    r.ok = r.normalized_mass == 1
        && sup == NormVal::pow_of(P.s, Rat(0))
        && r.core_gap == NormVal::pow_of(P.s, Rat(r.expected_gap_exp));
    return r;
}

// ---- shift cocycle of the layered measure ----

// density ratio rho(a, x) = f(x - a)/f(x); densities of the layered family never vanish
inline Rat rho_shift(const PrimePair& P, const ShellFactor& f, const Rat& a, const Rat& x) {
    Factor F = Factor{f};
    Rat fx = F.density_at(P, x);
    if (fx == 0) throw std::domain_error("rho_shift: zero density");
    return F.density_at(P, x - a) / fx;
}

// m_n(A + a) - m_n(A), exact; vanishes identically once ord(a) >= n
inline Rat quasi_invariance_gap(const PrimePair& P, const ShellFactor& f,
                                const ClopenSet& A, const Rat& a) {
    Factor F = Factor{f};
    ClopenSet shiftedA = A.shifted(P.p, {a});
    return F.clopen_integral(P, shiftedA) - F.clopen_integral(P, A);
}

// the three composition laws of the shift cocycle
inline bool cocycle_identity_I(const PrimePair& P, const ShellFactor& f,
                               const Rat& a, const Rat& b, const Rat& x) {
    return rho_shift(P, f, a + b, x) == rho_shift(P, f, b, x) * rho_shift(P, f, a, x - b);
}
inline bool cocycle_identity_II(const PrimePair& P, const ShellFactor& f, const Rat& x) {
    return rho_shift(P, f, Rat(0), x) == 1;
}
inline bool cocycle_identity_III(const PrimePair& P, const ShellFactor& f,
                                 const Rat& a, const Rat& x) {
    return rho_shift(P, f, a, x) * rho_shift(P, f, -a, x - a) == 1;
}

// ---- equivalence/singularity of product families ----

// beta of one factor pair: sup of |d mu|_s over the support of nu
inline NormVal beta_factor(const CellMeasure& mu, const CellMeasure& nu) {
    NormVal m = NormVal::zero_of(mu.P.s);
    for (const auto& [leaf, dmu, dnu] : overlay_cells(mu.P.p, mu.cells, nu.cells))
        if (dnu != 0) m = std::max(m, s_norm(mu.P, dmu));
    return m;
}

// family of beta values given as s-power exponents: beta_j = s^(-e_j).
// head lists the first entries; beyond it either all are e = tail_exp (complete)
// or nothing is known (sampled)
struct BetaFamily {
    std::vector<Rat> head;
    bool complete = true;
    Rat tail_exp = 0;

    void validate() const {
        for (const Rat& e : head)
            if (e < 0) throw std::invalid_argument("beta family: exponent < 0 means beta > 1");
        if (complete && tail_exp < 0)
            throw std::invalid_argument("beta family: tail exponent < 0 means beta > 1");
    }
};

enum class Kakutani { Equivalent, Singular, Inconclusive };

struct KakutaniReport {
    Kakutani verdict = Kakutani::Inconclusive;
    Rat product;            // exact value of the full product when it stabilizes
    std::vector<Rat> partial_exponents; // exponent of s in P_N for N = 1..inspected
    long certificate_N = -1; // first N with P_N below the tolerance, when singular
    std::string text() const {
        switch (verdict) {
            case Kakutani::Equivalent: return "equivalent";
            case Kakutani::Singular: return "singular";
            default: return "inconclusive";
        }
    }
};

inline KakutaniReport kakutani_classify(const BetaFamily& fam, long inspect_N = 12,
                                        const Rat& tol_exp = Rat(40)) {
    fam.validate();
    KakutaniReport r;
    Rat acc = 0;
    for (long N = 1; N <= inspect_N; ++N) {
        Rat e = (size_t)N <= fam.head.size() ? fam.head[N - 1] : (fam.complete ? fam.tail_exp : Rat(0));
        acc += e;
        r.partial_exponents.push_back(acc);
    }
    Rat head_sum = 0;
    for (const Rat& e : fam.head) head_sum += e;
    if (fam.complete && fam.tail_exp == 0) {
        r.verdict = Kakutani::Equivalent;
        // P = s^(-sum of exponents), reported as the exponent itself
        r.product = -head_sum;
        return r;
    }
    if (fam.complete && fam.tail_exp > 0) {
        r.verdict = Kakutani::Singular;
        // find first N with exponent sum >= tol_exp; beyond the head each step adds tail_exp
        Rat need = tol_exp - head_sum;
        long N = (long)fam.head.size();
        if (need > 0) {
            Rat steps = need / fam.tail_exp;
            long extra = static_cast<long>(num(steps) / den(steps));
            while (Rat(extra) * fam.tail_exp < need) ++extra;
            N += extra;
        }
        r.certificate_N = std::max(N, 1L);
        return r;
    }
    r.verdict = Kakutani::Inconclusive;
    return r;
}

// ---- pushforward by an invertible matrix ----

inline Rat mat_det(std::vector<std::vector<Rat>> a) {
    size_t n = a.size();
    Rat det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) { std::swap(a[piv], a[col]); det = -det; }
        det *= a[col][col];
        for (size_t row = col + 1; row < n; ++row) {
            if (a[row][col] == 0) continue;
            Rat f = a[row][col] / a[col][col];
            for (size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
        }
    }
    return det;
}

inline std::vector<std::vector<Rat>> mat_inv(std::vector<std::vector<Rat>> a) {
    size_t n = a.size();
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::domain_error("mat_inv: singular");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rat d = a[col][col];
        for (size_t j = 0; j < n; ++j) { a[col][j] /= d; inv[col][j] /= d; }
        for (size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            Rat f = a[row][col];
            for (size_t j = 0; j < n; ++j) {
                a[row][j] -= f * a[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline std::vector<Rat> mat_apply(const std::vector<std::vector<Rat>>& a,
                                  const std::vector<Rat>& x) {
    std::vector<Rat> y(a.size(), Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

// most negative ord over the entries; 0 for integral matrices
inline long mat_min_ord(const Int& p, const std::vector<std::vector<Rat>>& a) {
    long m = 0;
    for (const auto& row : a)
        for (const Rat& x : row)
            if (x != 0) m = std::min(m, ord_rat(p, x));
    return m;
}

// preimage U^(-1)(cell) as an exact clopen set, one lattice coset at a time
inline ClopenSet preimage_cell(const PrimePair& P, const std::vector<std::vector<Rat>>& U,
                               const std::vector<std::vector<Rat>>& Uinv, const Ball& cell) {
    size_t n = cell.dim();
    long G = cell.k[0];
    for (long ki : cell.k)
        if (ki != G) throw std::invalid_argument("preimage_cell: cube required");
    long w = std::max(0L, -mat_min_ord(P.p, U));     // U * p^(G+w) Z^n inside p^G Z^n
    long wi = std::max(0L, -mat_min_ord(P.p, Uinv)); // preimage lattice inside p^(G-wi) Z^n
    std::vector<Rat> base = mat_apply(Uinv, cell.c);
    // enumerate representatives of p^(G-wi) / p^(G+w) per coordinate
    long span = w + wi;
    Int reps = ipow(P.p, span);
    std::vector<Ball> out;
    std::vector<Int> idx(n, 0);
    while (true) {
        std::vector<Rat> t(n);
        for (size_t i = 0; i < n; ++i) t[i] = Rat(idx[i]) * rpow(P.p, G - wi);
        // keep the coset when U maps it into the cell's lattice
        std::vector<Rat> img = mat_apply(U, t);
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i)
            if (img[i] != 0 && ord_rat(P.p, img[i]) < G) ok = false;
        if (ok) {
            std::vector<Rat> ctr(n);
            for (size_t i = 0; i < n; ++i) ctr[i] = base[i] + t[i];
            out.push_back(Ball{ctr, std::vector<long>(n, G + w)});
        }
        size_t i = 0;
        while (i < n && ++idx[i] == reps) idx[i++] = 0;
        if (i == n) break;
    }
    return ClopenSet::disjoint_union(P.p, std::move(out));
}

struct TransformResult {
    CellMeasure formula;   // density |det U|^(-1) * f(U^(-1) x) painted on a grid
    CellMeasure oracle;    // cell masses measured through exact preimages
    bool agree = false;
};

// nu(A) = mu(U^(-1) A) materialized on cubes of level G, two independent ways
inline TransformResult transform_density(const CellMeasure& mu,
                                         const std::vector<std::vector<Rat>>& U, long G) {
    const PrimePair& P = mu.P;
    size_t n = mu.dim();
    Rat det = mat_det(U);
    if (det == 0) throw std::domain_error("transform_density: singular matrix");
    auto Uinv = mat_inv(U);
    Rat det_norm_inv = rpow(P.p, ord_rat(P.p, det)); // |det|_K^(-1) = p^(ord det)
    long w = std::max(0L, -mat_min_ord(P.p, U));
    // bounding exponent of the support of nu: image of the mu support
    long lo = 0;
    for (const auto& [b, d] : mu.cells)
        for (size_t i = 0; i < n; ++i) {
            long m = b.c[i] != 0 ? std::min(ord_rat(P.p, b.c[i]), b.k[i]) : b.k[i];
            lo = std::min(lo, m);
        }
    long bound = lo - w; // supp nu inside B(0, bound)^n
    if (G < bound) throw std::invalid_argument("transform_density: grid coarser than support");
    // walk the level-G cubes of B(0,bound)^n
    Int reps = ipow(P.p, G - bound);
    std::vector<std::pair<Ball, Rat>> formula_cells, oracle_cells;
    std::vector<Int> idx(n, 0);
    Rat cube_haar = rpow(P.p, -G * (long)n);
    while (true) {
        std::vector<Rat> ctr(n);
        for (size_t i = 0; i < n; ++i) ctr[i] = Rat(idx[i]) * rpow(P.p, bound);
        Ball cube{ctr, std::vector<long>(n, G)};
        std::vector<Rat> pre = mat_apply(Uinv, ctr);
        Rat fdens = det_norm_inv * mu.density_at(pre);
        if (fdens != 0) formula_cells.push_back({cube, fdens});
        Rat mass = mu.measure_of(preimage_cell(P, U, Uinv, cube));
        if (mass != 0) oracle_cells.push_back({cube, mass / cube_haar});
        size_t i = 0;
        while (i < n && ++idx[i] == reps) idx[i++] = 0;
        if (i == n) break;
    }
    TransformResult r{CellMeasure::make(P, std::move(formula_cells)),
                      CellMeasure::make(P, std::move(oracle_cells)), false};
    r.agree = r.formula.same_measure(r.oracle);
    return r;
}

} // namespace uml

#endif
