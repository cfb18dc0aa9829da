#pragma once

#include <cstddef>
#include <vector>

#include "gdd/design.hpp"
#include "gdd/library.hpp"

namespace gdd {

// Weighted inflation of a master GDD (any block size). Point p becomes
// weights[p] copies; each master block is overlaid with a 4-GDD from the
// library whose type is the multiset of its nonzero weights. Blocks with at
// most one weighted point contribute nothing.
Design wfc_inflate(const Design& master, const std::vector<int>& weights, DesignLibrary& lib);

// Inflates every point of a 4-GDD by h*u and overlays each block with a
// 4-DGDD of type (hu, h^u)^4. Copy slot j of every point lands in hole j.
Design wfc_inflate_dgdd(const Design& master, int h, int u, const Design& dgdd);

// Adjoins m points and overlays each hole plus the new points with a 4-GDD
// whose groups are the hole's cells (hole ∩ group) and one group of size m.
// The result keeps the DGDD's groups and adds the new group.
Design fill_holes(const Design& dgdd, int m, DesignLibrary& lib);

// The same overlay applied to the groups instead: each group plus the m new
// points is filled, and the holes become the groups of the result.
Design adjoin(const Design& dgdd, int m, DesignLibrary& lib);

// Replaces one group by the groups of a filler on the same number of points.
Design fill_group(const Design& design, std::size_t group_index, const Design& filler);

// Inflates every point by r and overlays each block with a 4-GDD of type r^4.
Design inflate_uniform(const Design& design, int r, DesignLibrary& lib);

// Drops one parallel class; its blocks become the holes.
Design remove_parallel_class(const Design& rgdd, std::size_t class_index);

// All sums of q elements of D (with repetition), ascending.
std::vector<int> reachable_sums(const std::vector<int>& d, int q);

}  // namespace gdd
