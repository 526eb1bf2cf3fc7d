#ifndef UML_BALLS_HPP
#define UML_BALLS_HPP

#include "padic.hpp"
#include <algorithm>
#include <map>
#include <vector>

namespace uml {

// canonical representative of c modulo p^k Z_p: digit expansion cut at position k
inline Rat canonical_center(const Int& p, const Rat& c, long k) {
    if (c == 0) return 0;
    long o = ord_rat(p, c);
    if (o >= k) return 0;
    Int pw_n = 1, pw_d = 1;
    if (o >= 0) pw_n = ipow(p, o); else pw_d = ipow(p, -o);
    Rat unit = c * Rat(pw_d, pw_n); // p-free numerator and denominator
    Int m = ipow(p, k - o);
    Int u = mod_pos(num(unit) * mod_inverse(den(unit), m), m);
    return Rat(u * pw_n, pw_d);
}

// closed polydisc in K^n: coordinate i ranges over c[i] + p^(k[i]) Z_p
struct Ball {
    std::vector<Rat> c;
    std::vector<long> k;

    size_t dim() const { return c.size(); }

    static Ball unit(size_t n) {
        return Ball{std::vector<Rat>(n, Rat(0)), std::vector<long>(n, 0)};
    }
    static Ball at(std::vector<Rat> ctr, std::vector<long> ke) {
        if (ctr.size() != ke.size()) throw std::invalid_argument("Ball: size mismatch");
        return Ball{std::move(ctr), std::move(ke)};
    }

    Ball canonical(const Int& p) const {
        Ball b = *this;
        for (size_t i = 0; i < dim(); ++i) b.c[i] = canonical_center(p, c[i], k[i]);
        return b;
    }

    bool contains_point(const Int& p, const std::vector<Rat>& x) const {
        for (size_t i = 0; i < dim(); ++i) {
            Rat d = x[i] - c[i];
            if (d != 0 && ord_rat(p, d) < k[i]) return false;
        }
        return true;
    }

    bool contains(const Int& p, const Ball& o) const {
        for (size_t i = 0; i < dim(); ++i) {
            if (o.k[i] < k[i]) return false;
            Rat d = o.c[i] - c[i];
            if (d != 0 && ord_rat(p, d) < k[i]) return false;
        }
        return true;
    }

    bool disjoint(const Int& p, const Ball& o) const {
        for (size_t i = 0; i < dim(); ++i) {
            Rat d = o.c[i] - c[i];
            if (d != 0 && ord_rat(p, d) < std::min(k[i], o.k[i])) return true;
        }
        return false;
    }

    Rat haar(const Int& p) const {
        long tot = 0;
        for (long ki : k) tot += ki;
        return rpow(p, -tot);
    }

    // the p children along coordinate i
    std::vector<Ball> split(const Int& p, size_t i) const {
        std::vector<Ball> out;
        Rat step = rpow(p, k[i]);
        for (Int d = 0; d < p; ++d) {
            Ball b = *this;
            b.c[i] = c[i] + Rat(d) * step;
            b.k[i] += 1;
            out.push_back(b);
        }
        return out;
    }

    Ball shifted(const Int& p, const std::vector<Rat>& t) const {
        Ball b = *this;
        for (size_t i = 0; i < dim(); ++i) b.c[i] += t[i];
        return b.canonical(p);
    }

    bool operator==(const Ball& o) const { return c == o.c && k == o.k; }
};

// deterministic cell order: finer radius exponents first, then centers ascending
inline bool cell_less(const Ball& a, const Ball& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    for (size_t i = 0; i < a.dim(); ++i)
        if (a.k[i] != b.k[i]) return a.k[i] > b.k[i];
    for (size_t i = 0; i < a.dim(); ++i)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}
struct CellLess {
    bool operator()(const Ball& a, const Ball& b) const { return cell_less(a, b); }
};

// intersection of non-disjoint polydiscs: the finer part per coordinate
inline Ball intersect_balls(const Ball& a, const Ball& b) {
    Ball r = a;
    for (size_t i = 0; i < a.dim(); ++i)
        if (b.k[i] > a.k[i]) { r.k[i] = b.k[i]; r.c[i] = b.c[i]; }
    return r;
}

// pieces of a \ b via coordinate splitting; nothing emitted when b covers a
inline void subtract_ball(const Int& p, const Ball& a, const Ball& b, std::vector<Ball>& out) {
    if (a.disjoint(p, b)) { out.push_back(a); return; }
    if (b.contains(p, a)) return;
    for (size_t i = 0; i < a.dim(); ++i) {
        if (b.k[i] > a.k[i]) {
            for (const Ball& ch : a.split(p, i)) subtract_ball(p, ch, b, out);
            return;
        }
    }
    throw std::logic_error("subtract_ball: overlap without finer coordinate");
}

// split a until each piece is contained in or disjoint from b; keep everything
inline void refine_cell(const Int& p, const Ball& a, const Ball& b, std::vector<Ball>& out) {
    if (a.disjoint(p, b) || b.contains(p, a)) { out.push_back(a); return; }
    for (size_t i = 0; i < a.dim(); ++i) {
        if (b.k[i] > a.k[i]) {
            for (const Ball& ch : a.split(p, i)) refine_cell(p, ch, b, out);
            return;
        }
    }
    throw std::logic_error("refine_cell: overlap without finer coordinate");
}

namespace detail {

// fold complete p-sibling families (equal tags) into their parent until stable
template <class Tag>
inline void merge_siblings(const Int& p, std::vector<std::pair<Ball, Tag>>& cells) {
    bool merged = true;
    while (merged) {
        merged = false;
        if (cells.empty()) return;
        size_t n = cells.front().first.dim();
        for (size_t i = 0; i < n && !merged; ++i) {
            std::map<Ball, std::vector<size_t>, CellLess> groups;
            for (size_t a = 0; a < cells.size(); ++a) {
                Ball parent = cells[a].first;
                parent.k[i] -= 1;
                parent.c[i] = canonical_center(p, parent.c[i], parent.k[i]);
                groups[parent].push_back(a);
            }
            for (auto& [parent, idx] : groups) {
                if (Int(idx.size()) != p) continue;
                bool same_tag = true;
                for (size_t j = 1; j < idx.size(); ++j)
                    if (!(cells[idx[j]].second == cells[idx[0]].second)) { same_tag = false; break; }
                if (!same_tag) continue;
                Tag tag = cells[idx[0]].second;
                std::vector<size_t> dead(idx.begin(), idx.end());
                std::sort(dead.rbegin(), dead.rend());
                for (size_t d : dead) cells.erase(cells.begin() + d);
                cells.push_back({parent, tag});
                merged = true;
                break;
            }
        }
    }
}

} // namespace detail

// finite disjoint union of polydiscs, kept sorted with sibling families folded
struct ClopenSet {
    std::vector<Ball> cells;

    bool empty() const { return cells.empty(); }
    size_t dim() const { return cells.empty() ? 0 : cells.front().dim(); }

    Rat haar(const Int& p) const {
        Rat t = 0;
        for (const Ball& b : cells) t += b.haar(p);
        return t;
    }

    bool contains_point(const Int& p, const std::vector<Rat>& x) const {
        for (const Ball& b : cells)
            if (b.contains_point(p, x)) return true;
        return false;
    }

    // build from arbitrary (possibly overlapping) balls
    static ClopenSet of(const Int& p, std::vector<Ball> in) {
        for (Ball& b : in) b = b.canonical(p);
        std::sort(in.begin(), in.end(), cell_less);
        std::vector<Ball> kept;
        for (const Ball& b : in) {
            std::vector<Ball> pieces{b};
            for (const Ball& k : kept) {
                std::vector<Ball> next;
                for (const Ball& piece : pieces) subtract_ball(p, piece, k, next);
                pieces = std::move(next);
                if (pieces.empty()) break;
            }
            for (Ball& piece : pieces) kept.push_back(piece);
        }
        return normalized(p, std::move(kept));
    }

    // cells already pairwise disjoint (checked): fold + sort only
    static ClopenSet disjoint_union(const Int& p, std::vector<Ball> in) {
        for (Ball& b : in) b = b.canonical(p);
        for (size_t a = 0; a < in.size(); ++a)
            for (size_t b = a + 1; b < in.size(); ++b)
                if (!in[a].disjoint(p, in[b]))
                    throw std::invalid_argument("disjoint_union: cells overlap");
        return normalized(p, std::move(in));
    }

    ClopenSet unite(const Int& p, const ClopenSet& o) const {
        std::vector<Ball> all = cells;
        all.insert(all.end(), o.cells.begin(), o.cells.end());
        return of(p, std::move(all));
    }

    ClopenSet intersect(const Int& p, const ClopenSet& o) const {
        std::vector<Ball> out;
        for (const Ball& a : cells)
            for (const Ball& b : o.cells)
                if (!a.disjoint(p, b)) out.push_back(intersect_balls(a, b));
        return normalized(p, std::move(out));
    }

    ClopenSet subtract(const Int& p, const ClopenSet& o) const {
        std::vector<Ball> pieces = cells;
        for (const Ball& b : o.cells) {
            std::vector<Ball> next;
            for (const Ball& piece : pieces) subtract_ball(p, piece, b, next);
            pieces = std::move(next);
        }
        return normalized(p, std::move(pieces));
    }

    bool subset_of(const Int& p, const ClopenSet& o) const {
        return subtract(p, o).empty();
    }
    bool same_set(const Int& p, const ClopenSet& o) const {
        return subset_of(p, o) && o.subset_of(p, *this);
    }

    ClopenSet shifted(const Int& p, const std::vector<Rat>& t) const {
        std::vector<Ball> out;
        for (const Ball& b : cells) out.push_back(b.shifted(p, t));
        return normalized(p, std::move(out));
    }

private:
    static ClopenSet normalized(const Int& p, std::vector<Ball> in) {
        std::vector<std::pair<Ball, int>> tagged;
        for (Ball& b : in) tagged.push_back({b.canonical(p), 0});
        detail::merge_siblings(p, tagged);
        ClopenSet s;
        for (auto& [b, t] : tagged) s.cells.push_back(b);
        std::sort(s.cells.begin(), s.cells.end(), cell_less);
        return s;
    }
};

// partition of the union region in which every input ball is a union of leaves
inline std::vector<Ball> arrangement_leaves(const Int& p, const std::vector<Ball>& balls) {
    ClopenSet u = ClopenSet::of(p, balls);
    std::vector<Ball> leaves = u.cells;
    for (const Ball& b : balls) {
        std::vector<Ball> next;
        for (const Ball& leaf : leaves) refine_cell(p, leaf, b, next);
        leaves = std::move(next);
    }
    return leaves;
}

} // namespace uml

#endif
