#pragma once

#include <optional>

#include "mforge/mlink.hpp"

namespace mforge {

// Definitional computations by exhaustive scan. These are the independent
// ground truth the lazy handles are tested against; none of them is used on
// any production path.

// All maximal unions of one base per operand (operands padded onto the joint
// ground with rank-0 extras first).
ExplicitBases brute_union(const Matroid& a, const Matroid& b);

// Minimal traces of the union's bases on the non-overlap labels.
ExplicitBases brute_link(const LinkInstance& inst);

// Base-exchange validation of an explicit family; nullopt when it passes.
std::optional<ExchangeWitness> brute_exchange_check(const ExplicitBases& eb);

// Rank-difference domination over every nested pair of subsets.
bool brute_quotient(const Matroid& m1, const Matroid& m2);

}  // namespace mforge
