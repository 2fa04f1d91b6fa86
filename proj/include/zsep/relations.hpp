#pragma once

#include "zsep/group.hpp"
#include "zsep/intmat.hpp"

namespace zsep {

/// The relation lattice {u in Z^k : sum u_i * a_i = 0 in H} as a canonical
/// HNF basis. Computed from the Smith transform of the coordinate matrix of
/// the a_i stacked on the diagonal of invariant factors; the result always
/// has full rank k.
inline IntLattice relation_lattice(const AbelianGroup& h,
                                   const std::vector<GroupElement>& elems) {
    i64 k = static_cast<i64>(elems.size());
    i64 r = h.rank();
    for (const auto& e : elems) h.require(e);
    if (r == 0 || k == 0) return full_lattice(k);

    IntMatrix m(k + r, r);
    for (i64 i = 0; i < k; ++i)
        for (i64 j = 0; j < r; ++j) m(i, j) = elems[static_cast<size_t>(i)].res[static_cast<size_t>(j)];
    for (i64 j = 0; j < r; ++j) m(k + j, j) = h.factors()[static_cast<size_t>(j)];

    // Left-kernel rows are (u, v) with u*A + v*D = 0; the u-part is exactly a
    // relation, and the projection is injective because D has no zero factor.
    auto kernel = left_kernel(m);
    std::vector<std::vector<i64>> projected;
    projected.reserve(kernel.size());
    for (const auto& row : kernel)
        projected.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k));
    IntLattice lat = sublattice_from_generators(k, projected);
    if (lat.rank() != k)
        throw std::logic_error("relation_lattice: kernel projection lost rank");
    return lat;
}

/// Invariant-factor structure of the subgroup generated by `gens`:
/// <gens> is Z^k modulo the relation lattice, so its chain is the Smith
/// diagonal of that lattice's basis with unit entries dropped.
inline AbelianGroup subgroup_generated(const AbelianGroup& g,
                                       const std::vector<GroupElement>& gens) {
    if (gens.empty()) return AbelianGroup{};
    IntLattice rel = relation_lattice(g, gens);
    SmithResult s = snf(rel.basis);
    std::vector<i64> orders;
    for (i64 d : s.diag)
        if (d > 1) orders.push_back(d);
    return AbelianGroup::from_orders(orders);
}

}  // namespace zsep
