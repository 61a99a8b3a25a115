#pragma once

#include <utility>
#include <vector>

#include "mforge/matroid.hpp"

namespace mforge {

// Common universe for two-matroid operations: left operand's ground order,
// then the right operand's extra labels in its order.
Labels joint_ground(const Matroid& a, const Matroid& b);

// Realign/extend a handle onto `universe` (a superset of its ground): missing
// elements become loops (rank 0) or coloops (rank 1 each).
Matroid pad_with_loops(const Matroid& m, const Labels& universe);
Matroid pad_with_coloops(const Matroid& m, const Labels& universe);

// Matroid union. Overlapping grounds are allowed: each operand is padded
// with loops on the other's extra elements first. A set is independent iff
// it splits into one part independent per (padded) operand; rank queries run
// the matroid partition algorithm, so no exponential minimization.
Matroid union_matroid(const Matroid& a, const Matroid& b);

// Wedge: dual(union(dual a, dual b)), with coloop padding on extras.
Matroid wedge_matroid(const Matroid& a, const Matroid& b);

// Greedy maximal partition of x into (I1, I2) with I1 independent in a and
// I2 in b (same bit space required). Elements are offered in `insertion`
// order (bit indices), then remaining bits of x ascending; |I1|+|I2| equals
// the union rank of x regardless of order. Deterministic.
std::pair<Mask, Mask> partition_max(const Matroid& a, const Matroid& b, Mask x,
                                    const std::vector<int>& insertion);

// Extend an independent start set to a maximal independent subset of
// start | universe, scanning candidate bits ascending (or in `order`).
Mask greedy_extend(const Matroid& m, Mask start, Mask universe);
Mask greedy_extend_ordered(const Matroid& m, Mask start, const std::vector<int>& order);

// Maximum common independent set of two matroids on the same ground set,
// via exchange-graph augmenting paths. Mask is in a's bit space.
Mask max_common_independent(const Matroid& a, const Matroid& b);

struct DistantBasePair {
  Labels ground;  // bit space of the masks below (joint ground)
  Mask b1, b2;    // base of (padded) a resp. b
  int union_rank; // |b1 | b2|
};

// A base pair maximizing |b1 union b2| (= rank of union_matroid(a, b)).
// Bits of prefer_first (in joint-ground bit space) are offered to the
// partition stage first, so any prefer_first set independent in the union
// ends up inside b1 union b2. Deterministic ascending tie-break.
DistantBasePair maximally_distant_bases(const Matroid& a, const Matroid& b,
                                        Mask prefer_first = 0);

}  // namespace mforge
