#pragma once

#include "mforge/vspace.hpp"

namespace mforge {

// A composition pair: left on S⊎P, right on P⊎Q, sharing exactly P.
template <class K>
struct SpacePair {
  Space<K> left;
  Space<K> right;
  Labels overlap;
};

template <class K>
SpacePair<K> make_space_pair(Space<K> left, Space<K> right) {
  Labels P = shared_columns(left, right);
  return SpacePair<K>{std::move(left), std::move(right), std::move(P)};
}

template <class K>
Space<K> compose(const SpacePair<K>& pr) {
  return matched_compose(pr.left, pr.right);
}

// Shrinks the overlap without changing the composition. First deletes the
// P-columns outside a column base of (left+right)∘P, then contracts away a
// column base of the restricted pair's intersection contracted to P. The
// final overlap size is rank(left+right) − rank(left∩right).
template <class K>
SpacePair<K> min_overlap(const SpacePair<K>& pr) {
  const Labels& P = pr.overlap;
  Labels S = minus(pr.left.cols(), P);
  Labels Q = minus(pr.right.cols(), P);

  Space<K> sum = ext_sum(pr.left, pr.right);
  Space<K> inter = ext_intersect(pr.left, pr.right);
  int target = sum.rank() - inter.rank();

  Labels p2 = column_base(restrict_to(sum, P));
  Space<K> left2 = restrict_to(pr.left, intersection(pr.left.cols(), concat(S, p2)));
  Space<K> right2 = restrict_to(pr.right, intersection(pr.right.cols(), concat(p2, Q)));

  Labels dropped = column_base(contract_to(ext_intersect(left2, right2), p2));
  Labels p_final = minus(p2, dropped);

  Space<K> left3 = contract_to(left2, intersection(left2.cols(), concat(S, p_final)));
  Space<K> right3 = contract_to(right2, intersection(right2.cols(), concat(p_final, Q)));

  if (static_cast<int>(p_final.size()) != target)
    throw InternalError("min_overlap: overlap size " + std::to_string(p_final.size()) +
                        " != rank(sum)-rank(intersection) = " + std::to_string(target));
  return SpacePair<K>{std::move(left3), std::move(right3), std::move(p_final)};
}

// V_SQ linked with its own primed copy over S; acts as an identity for
// composition up to V's restriction/contraction data on Q.
template <class K>
Space<K> pseudo_identity(const Space<K>& V, const Labels& S) {
  Labels Q = minus(V.cols(), S);
  for (const auto& x : S) V.col_index(x);  // validate membership
  return matched_compose(V, primed_copy(V, Q));
}

template <class K>
struct Decomposition {
  SpacePair<K> pair;  // left on S⊎P, right on P⊎Q with P ⊆ primed Q copies
};

// Minimal-overlap factorization of V across the column partition (S, Q):
// compose the primed copy with the pseudo-identity, then minimize. The final
// overlap has size rank(V∘S) − rank(V×S).
template <class K>
Decomposition<K> space_decompose(const Space<K>& V, const Labels& S) {
  Labels Q = minus(V.cols(), S);
  Space<K> left = primed_copy(V, Q);          // on S⊎Q'
  Space<K> vqq = pseudo_identity(V, S);       // on Q⊎Q'
  SpacePair<K> pair0 = make_space_pair(left, vqq);
  SpacePair<K> minimized = min_overlap(pair0);

  int lambda = restrict_to(V, S).rank() - contract_to(V, S).rank();
  if (static_cast<int>(minimized.overlap.size()) != lambda)
    throw InternalError("space_decompose: overlap " +
                        std::to_string(minimized.overlap.size()) +
                        " != rank(restriction)-rank(contraction) = " +
                        std::to_string(lambda));
  return Decomposition<K>{std::move(minimized)};
}

// Connectivity of the column split (S, rest): rank(V∘S) − rank(V×S).
template <class K>
int space_connectivity(const Space<K>& V, const Labels& S) {
  return restrict_to(V, S).rank() - contract_to(V, S).rank();
}

}  // namespace mforge
