#ifndef UML_FOURIER_HPP
#define UML_FOURIER_HPP

#include "cyclo.hpp"
#include "measures.hpp"

namespace uml {

// chi_xi(x): additive character through the fractional part of the pairing
inline CycloValue character_value(const PrimePair& P, const std::vector<Rat>& xi,
                                  const std::vector<Rat>& x) {
    Rat t = 0;
    for (size_t i = 0; i < xi.size(); ++i) t += xi[i] * x[i];
    Rat fr = fractional_part(P.p, t);
    if (fr == 0) return CycloValue::constant(P.p, 0, Rat(1));
    long k = ord_int(P.p, den(fr));
    return CycloValue::root_power(P.p, k, num(fr));
}

// integral of chi_xi over one polydisc: center character times coordinate factors
// (each coordinate contributes p^-k when ord(xi_i) >= -k_i, else the cell cancels)
inline CycloValue cell_character_integral(const PrimePair& P, const std::vector<Rat>& xi,
                                          const Ball& b) {
    Rat vol = 1;
    for (size_t i = 0; i < b.dim(); ++i) {
        if (xi[i] != 0 && ord_rat(P.p, xi[i]) < -b.k[i])
            return CycloValue::constant(P.p, 0, Rat(0));
        vol *= rpow(P.p, -b.k[i]);
    }
    return character_value(P, xi, b.c).scaled(vol);
}

// transform value theta_mu(xi) = integral of chi_xi d mu, exact
inline CycloValue theta(const CellMeasure& mu, const std::vector<Rat>& xi) {
    CycloValue acc = CycloValue::constant(mu.P.p, 0, Rat(0));
    for (const auto& [b, d] : mu.cells)
        acc = acc.plus(cell_character_integral(mu.P, xi, b).scaled(d));
    return acc.compressed();
}

// all dual-grid points b/p^m, b ranging over [0, p^m)^n
inline std::vector<std::vector<Rat>> dual_grid(const Int& p, long m, size_t n) {
    Int pm = ipow(p, m);
    std::vector<std::vector<Rat>> out;
    std::vector<Int> idx(n, 0);
    while (true) {
        std::vector<Rat> xi;
        for (const Int& b : idx) xi.push_back(Rat(b, pm));
        out.push_back(std::move(xi));
        size_t i = 0;
        while (i < n && ++idx[i] == pm) idx[i++] = 0;
        if (i == n) break;
    }
    return out;
}

struct ThetaTable {
    long level = 0;
    size_t n = 0;
    std::vector<CycloValue> values; // indexed like dual_grid order
};

inline ThetaTable theta_table(const CellMeasure& mu, long m) {
    ThetaTable t;
    t.level = m;
    t.n = mu.dim();
    for (const auto& xi : dual_grid(mu.P.p, m, t.n)) t.values.push_back(theta(mu, xi));
    return t;
}

// reconstruct the level-m cell measure on Z_p^n from its transform table;
// the inverse sum must come out rational on every cell
inline CellMeasure invert_theta(const PrimePair& P, const ThetaTable& t) {
    Int pm = ipow(P.p, t.level);
    auto grid = dual_grid(P.p, t.level, t.n);
    if (grid.size() != t.values.size())
        throw std::invalid_argument("invert_theta: table size mismatch");
    std::vector<std::pair<Ball, Rat>> cells;
    Rat cellvol = rpow(P.p, -(long)(t.level * t.n));
    for (const auto& a : grid) {
        // a is the cell center scaled by p^-m: recover integer vector
        CycloValue acc = CycloValue::constant(P.p, 0, Rat(0));
        for (size_t bi = 0; bi < grid.size(); ++bi) {
            // exponent -<b, a*p^m> mod p^m
            Rat dot = 0;
            for (size_t i = 0; i < t.n; ++i) dot += grid[bi][i] * (a[i] * Rat(pm));
            Rat fr = fractional_part(P.p, -dot);
            CycloValue rot = t.values[bi];
            if (fr != 0) {
                long kk = ord_int(P.p, den(fr));
                rot = rot.times(CycloValue::root_power(P.p, kk, num(fr)));
            }
            acc = acc.plus(rot);
        }
        acc = acc.scaled(Rat(Int(1), ipow(pm, (long)t.n)));
        if (!acc.is_rational())
            throw std::domain_error("invert_theta: non-rational cell mass");
        Rat mass = acc.rational_part();
        if (mass != 0) {
            std::vector<Rat> ctr;
            std::vector<long> ke(t.n, t.level);
            for (const Rat& ai : a) ctr.push_back(ai * Rat(pm));
            cells.push_back({Ball{ctr, ke}, mass / cellvol});
        }
    }
    return CellMeasure::make(P, std::move(cells));
}

// multiplicativity of the transform on independent blocks, checked on full grids
inline bool check_product(const CellMeasure& mu, const CellMeasure& nu, long m) {
    CellMeasure pr = mu.product(nu);
    for (const auto& xi1 : dual_grid(mu.P.p, m, mu.dim()))
        for (const auto& xi2 : dual_grid(mu.P.p, m, nu.dim())) {
            std::vector<Rat> xi = xi1;
            xi.insert(xi.end(), xi2.begin(), xi2.end());
            if (!theta(pr, xi).equals(theta(mu, xi1).times(theta(nu, xi2))))
                return false;
        }
    return true;
}

// transform of a convolution against the pointwise product, on the full grid
inline bool check_convolution(const CellMeasure& mu, const CellMeasure& nu, long m) {
    CellMeasure cv = mu.convolve(nu);
    for (const auto& xi : dual_grid(mu.P.p, m, mu.dim()))
        if (!theta(cv, xi).equals(theta(mu, xi).times(theta(nu, xi))))
            return false;
    return true;
}

// quadratic pairing diagnostic: |<z, S z>|_K against the unit window
struct SazonovReport {
    Rat pairing;
    NormVal norm;
    bool inside;
};

inline SazonovReport sazonov_gap(const PrimePair& P, const std::vector<std::vector<Rat>>& S,
                                 const std::vector<Rat>& z) {
    size_t n = z.size();
    Rat w = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) w += z[i] * S[i][j] * z[j];
    NormVal nv = k_norm(P, w);
    bool inside = nv < NormVal::pow_of(P.p, Rat(0));
    return {w, nv, inside};
}

} // namespace uml

#endif
