#pragma once

#include "mforge/mlink.hpp"

namespace mforge {

// Side classification of a complete matroid's base family. Every base meets
// the chosen side in an independent set; grouping those traces by which
// complementary traces complete them to a base yields a partition:
//   - crossing blocks: traces strictly between the contraction rank and the
//     restriction rank of the side,
//   - restriction_bases: traces that are bases of the side restriction,
//   - contraction_bases: traces that are bases of the side contraction.
// All members and blocks are kept in canonical (shortlex) order so equality
// of partitions is plain field equality.
struct BlockPartition {
  Labels side;
  std::vector<std::vector<Labels>> crossing;
  std::vector<Labels> restriction_bases;
  std::vector<Labels> contraction_bases;
};

bool operator==(const BlockPartition& a, const BlockPartition& b);
bool operator!=(const BlockPartition& a, const BlockPartition& b);

// Certificate that a base of the completed matroid is forced by the original:
// base_bb, base_hb, base_bh are bases of the original whose side traces force
// the queried fourth corner.
struct CompletionWitness {
  Labels base_bb;  // b_S + b_Q
  Labels base_hb;  // candidate's S-part + b_Q
  Labels base_bh;  // b_S + candidate's Q-part
};

// Does every forced fourth corner of the base family already lie in it?
// (Whenever bS+bQ, cS+bQ and bS+cQ are bases, cS+cQ must be one too.)
bool is_complete(const Matroid& m, const Labels& S, const Labels& Q);

// The completed matroid as a lazy handle. Independence of T splits T by side,
// requires both halves independent, and reduces the forced-corner test to a
// maximum-common-independent-set computation between two derived rank
// functions on a mirrored copy of the ground set; rank queries run that test
// greedily. Cost per independence query is O(n^2 log n) rank calls on m.
Matroid completion(const Matroid& m, const Labels& S, const Labels& Q);

// One independence query against the completed matroid, exposed so callers
// can meter the rank-call budget of a single reduction.
bool completion_independent(const Matroid& m, const Labels& S, const Labels& Q,
                            const Labels& T);

// Definitional route: enumerate bases and add every forced fourth corner
// once. Agreement with the lazy handle is a standing test elsewhere.
ExplicitBases completion_bruteforce(const Matroid& m, const Labels& S,
                                    const Labels& Q);

// For a base of the completed matroid, recover three bases of the original
// that force it, from the certificate of the same reduction.
CompletionWitness completion_witness(const Matroid& m, const Labels& S,
                                     const Labels& Q, const Labels& candidate);

// The side classification described at BlockPartition. Errors unless the
// matroid is complete with respect to {side, rest}.
BlockPartition equivalence_classes(const Matroid& m, const Labels& side);

// Two complete matroids sharing exactly the overlap of their grounds are
// compatible when the overlap classification of the left operand's dual
// equals the right operand's, tags included.
bool is_compatible(const Matroid& m_sp, const Matroid& m_pq);

// Link of a compatible pair; the result is checked complete with both side
// classifications inherited from the operands.
Matroid compose_compatible(const Matroid& m_sp, const Matroid& m_pq);

// Recover the right factor from a link and its left factor: candidate is
// dual(left) linked with the composite over their shared labels. Requires the
// refinement condition: every overlap block of the candidate is a union of
// overlap blocks of dual(left).
Matroid invert_link(const Matroid& m_sp, const Matroid& m_sq);

// Minimal decomposition of a complete matroid: split through mirrored copies
// (left keeps S with a mirrored Q; right is the mirrored-S copy linked with
// the mirrored dual), then shrink the overlap by conditional minimization.
// The result overlap has size lambda(S), both factors are complete and
// mutually compatible.
LinkInstance decompose_complete(const Matroid& m, const Labels& S,
                                const Labels& Q);

// Three-factor variant: (left on S+P1) and (right on P2+Q) coupled through a
// port on P1+P2, each factor complete, |P1| = |P2| = lambda(S).
MultiportInstance multiport_decompose_complete(const Matroid& m,
                                               const Labels& S,
                                               const Labels& Q);

// Truncated direct sum: bases are unions of an independent set per operand
// with total size k_max. Requires max(r1,r2) <= k_max <= r1+r2.
Matroid free_rr(const Matroid& ms, const Matroid& mq, int k_max);

// Dual form: dual(free_rr(dual(ms), dual(mq), k_max)).
Matroid free_cc(const Matroid& ms, const Matroid& mq, int k_max);

// Free product: bases are unions of an independent set of ms and a spanning
// set of mq with total size r(ms)+r(mq). Restriction to the first ground is
// ms; contraction to the second is mq.
Matroid free_rc(const Matroid& ms, const Matroid& mq);

// Union of mq with an extension of ms that grows rank along the flat spanned
// by A by at most one per element of B (B is shared with mq's ground):
// r(X + B1) = r_ms(X) + min(r_ms(X u A) - r_ms(X), |B1|).
Matroid principal_sum(const Matroid& ms, const Matroid& mq, const Labels& A,
                      const Labels& B);

}  // namespace mforge
