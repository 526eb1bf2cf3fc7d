#ifndef UML_MEASURES_HPP
#define UML_MEASURES_HPP

#include "shells.hpp"

namespace uml {

// overlapping (ball, value) contributions -> disjoint cells with summed values
inline std::vector<std::pair<Ball, Rat>> accumulate_cells(
        const Int& p, const std::vector<std::pair<Ball, Rat>>& contrib) {
    std::vector<Ball> balls;
    for (const auto& [b, v] : contrib) balls.push_back(b);
    std::vector<std::pair<Ball, Rat>> out;
    for (const Ball& leaf : arrangement_leaves(p, balls)) {
        Rat v = 0;
        for (const auto& [b, val] : contrib)
            if (b.contains(p, leaf)) v += val;
        if (v != 0) out.push_back({leaf, v});
    }
    detail::merge_siblings(p, out);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return cell_less(a.first, b.first); });
    return out;
}

// leaves of the joint arrangement with the value each side takes there
inline std::vector<std::tuple<Ball, Rat, Rat>> overlay_cells(
        const Int& p,
        const std::vector<std::pair<Ball, Rat>>& lhs,
        const std::vector<std::pair<Ball, Rat>>& rhs) {
    std::vector<Ball> balls;
    for (const auto& [b, v] : lhs) balls.push_back(b);
    for (const auto& [b, v] : rhs) balls.push_back(b);
    std::vector<std::tuple<Ball, Rat, Rat>> out;
    for (const Ball& leaf : arrangement_leaves(p, balls)) {
        Rat a = 0, b2 = 0;
        for (const auto& [b, val] : lhs)
            if (b.contains(p, leaf)) a += val;
        for (const auto& [b, val] : rhs)
            if (b.contains(p, leaf)) b2 += val;
        out.push_back({leaf, a, b2});
    }
    return out;
}

// rational-valued step function, zero outside its pieces
struct StepFunction {
    std::vector<std::pair<Ball, Rat>> pieces; // disjoint

    size_t dim() const { return pieces.empty() ? 0 : pieces.front().first.dim(); }

    static StepFunction make(const Int& p, std::vector<std::pair<Ball, Rat>> in) {
        for (auto& [b, v] : in) b = b.canonical(p);
        for (size_t a = 0; a < in.size(); ++a)
            for (size_t b = a + 1; b < in.size(); ++b)
                if (!in[a].first.disjoint(p, in[b].first))
                    throw std::invalid_argument("StepFunction: pieces overlap");
        std::erase_if(in, [](const auto& pr) { return pr.second == 0; });
        detail::merge_siblings(p, in);
        std::sort(in.begin(), in.end(),
                  [](const auto& a, const auto& b) { return cell_less(a.first, b.first); });
        return StepFunction{std::move(in)};
    }

    static StepFunction indicator(const ClopenSet& s) {
        StepFunction f;
        for (const Ball& b : s.cells) f.pieces.push_back({b, Rat(1)});
        return f;
    }

    Rat value_at(const Int& p, const std::vector<Rat>& x) const {
        for (const auto& [b, v] : pieces)
            if (b.contains_point(p, x)) return v;
        return 0;
    }

    StepFunction scaled(const Rat& a) const {
        StepFunction f = *this;
        if (a == 0) { f.pieces.clear(); return f; }
        for (auto& [b, v] : f.pieces) v *= a;
        return f;
    }

    StepFunction plus(const Int& p, const StepFunction& o) const {
        std::vector<std::pair<Ball, Rat>> contrib = pieces;
        contrib.insert(contrib.end(), o.pieces.begin(), o.pieces.end());
        return StepFunction{accumulate_cells(p, contrib)};
    }

    // f(x - t)
    StepFunction shifted(const Int& p, const std::vector<Rat>& t) const {
        StepFunction f = *this;
        for (auto& [b, v] : f.pieces) b = b.shifted(p, t);
        std::sort(f.pieces.begin(), f.pieces.end(),
                  [](const auto& a, const auto& b) { return cell_less(a.first, b.first); });
        return f;
    }

    ClopenSet support(const Int& p) const {
        std::vector<Ball> balls;
        for (const auto& [b, v] : pieces) balls.push_back(b);
        return ClopenSet::of(p, std::move(balls));
    }
};

// measure with constant rational density on finitely many disjoint cells
struct CellMeasure {
    PrimePair P;
    std::vector<std::pair<Ball, Rat>> cells; // disjoint, densities nonzero

    size_t dim() const { return cells.empty() ? 0 : cells.front().first.dim(); }

    static CellMeasure make(const PrimePair& P, std::vector<std::pair<Ball, Rat>> in) {
        for (auto& [b, v] : in) b = b.canonical(P.p);
        for (size_t a = 0; a < in.size(); ++a) {
            for (size_t b = a + 1; b < in.size(); ++b) {
                if (in[a].first.dim() != in[b].first.dim())
                    throw std::invalid_argument("CellMeasure: dimension mismatch");
                if (!in[a].first.disjoint(P.p, in[b].first))
                    throw std::invalid_argument("CellMeasure: cells overlap");
            }
        }
        std::erase_if(in, [](const auto& pr) { return pr.second == 0; });
        detail::merge_siblings(P.p, in);
        std::sort(in.begin(), in.end(),
                  [](const auto& a, const auto& b) { return cell_less(a.first, b.first); });
        return CellMeasure{P, std::move(in)};
    }

    // density 1 on the unit polydisc: normalized additive volume there
    static CellMeasure haar_unit(const PrimePair& P, size_t n) {
        return make(P, {{Ball::unit(n), Rat(1)}});
    }
    static CellMeasure uniform_on(const PrimePair& P, const Ball& b, const Rat& total) {
        return make(P, {{b, total / b.haar(P.p)}});
    }

    Rat mass() const {
        Rat t = 0;
        for (const auto& [b, d] : cells) t += d * b.haar(P.p);
        return t;
    }

    Rat measure_of(const Ball& a) const {
        Rat t = 0;
        for (const auto& [b, d] : cells)
            if (!b.disjoint(P.p, a)) t += d * intersect_balls(b, a).haar(P.p);
        return t;
    }
    Rat measure_of(const ClopenSet& s) const {
        Rat t = 0;
        for (const Ball& a : s.cells) t += measure_of(a);
        return t;
    }

    Rat density_at(const std::vector<Rat>& x) const {
        for (const auto& [b, d] : cells)
            if (b.contains_point(P.p, x)) return d;
        return 0;
    }

    // pointwise s-size of the density
    NormVal density_norm_at(const std::vector<Rat>& x) const {
        return s_norm(P, density_at(x));
    }

    // sup-norm of the density over everything, or over a window
    NormVal sup_norm() const {
        NormVal m = NormVal::zero_of(P.s);
        for (const auto& [b, d] : cells) m = std::max(m, s_norm(P, d));
        return m;
    }
    NormVal sup_norm_on(const ClopenSet& s) const {
        NormVal m = NormVal::zero_of(P.s);
        for (const auto& [b, d] : cells)
            for (const Ball& a : s.cells)
                if (!b.disjoint(P.p, a)) m = std::max(m, s_norm(P, d));
        return m;
    }

    Rat integrate(const StepFunction& f) const {
        Rat t = 0;
        for (const auto& [g, v] : f.pieces)
            for (const auto& [b, d] : cells)
                if (!g.disjoint(P.p, b)) t += v * d * intersect_balls(g, b).haar(P.p);
        return t;
    }

    ClopenSet support() const {
        std::vector<Ball> balls;
        for (const auto& [b, d] : cells) balls.push_back(b);
        return ClopenSet::of(P.p, std::move(balls));
    }

    CellMeasure scaled(const Rat& a) const {
        if (a == 0) return CellMeasure{P, {}};
        CellMeasure m = *this;
        for (auto& [b, d] : m.cells) d *= a;
        return m;
    }

    CellMeasure plus(const CellMeasure& o) const {
        std::vector<std::pair<Ball, Rat>> contrib = cells;
        contrib.insert(contrib.end(), o.cells.begin(), o.cells.end());
        return CellMeasure{P, accumulate_cells(P.p, contrib)};
    }

    CellMeasure normalized() const {
        Rat m = mass();
        if (m == 0) throw std::domain_error("normalized: zero mass");
        return scaled(Rat(1) / m);
    }

    CellMeasure restricted(const ClopenSet& s) const {
        std::vector<std::pair<Ball, Rat>> out;
        for (const auto& [b, d] : cells)
            for (const Ball& a : s.cells)
                if (!b.disjoint(P.p, a)) out.push_back({intersect_balls(b, a), d});
        return make(P, std::move(out));
    }

    // product measure on the concatenated coordinates
    CellMeasure product(const CellMeasure& o) const {
        std::vector<std::pair<Ball, Rat>> out;
        for (const auto& [b1, d1] : cells)
            for (const auto& [b2, d2] : o.cells) {
                Ball b = b1;
                b.c.insert(b.c.end(), b2.c.begin(), b2.c.end());
                b.k.insert(b.k.end(), b2.k.begin(), b2.k.end());
                out.push_back({b, d1 * d2});
            }
        return make(P, std::move(out));
    }

    // additive convolution: cell pair lands on the coarser ball at the summed center
    CellMeasure convolve(const CellMeasure& o) const {
        if (dim() != o.dim() && !cells.empty() && !o.cells.empty())
            throw std::invalid_argument("convolve: dimension mismatch");
        std::vector<std::pair<Ball, Rat>> contrib;
        for (const auto& [b1, d1] : cells)
            for (const auto& [b2, d2] : o.cells) {
                Ball b = b1;
                Rat scale = 1;
                for (size_t i = 0; i < b.dim(); ++i) {
                    b.c[i] = b1.c[i] + b2.c[i];
                    b.k[i] = std::min(b1.k[i], b2.k[i]);
                    scale *= rpow(P.p, -std::max(b1.k[i], b2.k[i]));
                }
                contrib.push_back({b.canonical(P.p), d1 * d2 * scale});
            }
        return CellMeasure{P, accumulate_cells(P.p, contrib)};
    }

    // image under x -> scale*x + shift, coordinatewise; mass is preserved
    CellMeasure image_affine(const std::vector<Rat>& scale, const std::vector<Rat>& shift) const {
        std::vector<std::pair<Ball, Rat>> out;
        for (const auto& [b0, d] : cells) {
            Ball b = b0;
            Rat dens = d;
            for (size_t i = 0; i < b.dim(); ++i) {
                if (scale[i] == 0) throw std::invalid_argument("image_affine: zero scale");
                long o = ord_rat(P.p, scale[i]);
                b.c[i] = scale[i] * b0.c[i] + shift[i];
                b.k[i] = b0.k[i] + o;
                dens *= rpow(P.p, o);
            }
            out.push_back({b, dens});
        }
        return make(P, std::move(out));
    }

    CellMeasure shifted(const std::vector<Rat>& t) const {
        return image_affine(std::vector<Rat>(dim(), Rat(1)), t);
    }

    bool same_measure(const CellMeasure& o) const {
        return plus(o.scaled(Rat(-1))).cells.empty();
    }
};

} // namespace uml

#endif
