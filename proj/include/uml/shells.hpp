#ifndef UML_SHELLS_HPP
#define UML_SHELLS_HPP

#include "balls.hpp"

namespace uml {

// 1-dim ball {ord >= k} about 0
inline Ball ord_ball(long k) { return Ball{{Rat(0)}, {k}}; }

// sphere {ord == j} about 0: the p-1 level-(j+1) cells with unit leading digit
inline ClopenSet sphere(const Int& p, long j) {
    std::vector<Ball> cells;
    Rat step = rpow(p, j);
    for (Int d = 1; d < p; ++d)
        cells.push_back(Ball{{Rat(d) * step}, {j + 1}});
    return ClopenSet::disjoint_union(p, std::move(cells));
}

inline Rat sphere_haar(const Int& p, long j) {
    return rpow(p, -j) * (Rat(1) - Rat(1, p));
}

// ord of a point relative to a center, as used for radial densities
inline std::optional<long> rel_ord(const Int& p, const Rat& x, const Rat& x0) {
    return ord_opt(p, x - x0);
}

} // namespace uml

#endif
