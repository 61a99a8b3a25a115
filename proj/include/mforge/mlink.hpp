#pragma once

#include "mforge/munion.hpp"

namespace mforge {

// Two matroids joined along a shared overlap: left lives on S + P, right on
// P + Q, and the grounds intersect exactly in P (so S and Q are disjoint).
struct LinkInstance {
  Matroid left;
  Matroid right;
  Labels overlap;
};

LinkInstance make_link_instance(Matroid left, Matroid right, Labels overlap);
LinkInstance make_link_instance(Matroid left, Matroid right);

Labels link_side_s(const LinkInstance& inst);  // left-only labels
Labels link_side_q(const LinkInstance& inst);  // right-only labels

// The link: union of the operands contracted to S + Q. The wedge route
// (wedge restricted to S + Q) is an independent verification path; the two
// must always agree.
Matroid link(const LinkInstance& inst);
Matroid link(const Matroid& left, const Matroid& right);
Matroid link_wedge_route(const LinkInstance& inst);

// lambda(S) = r(M restricted to S) - r(M contracted to S).
int connectivity(const Matroid& m, const Labels& s);

// Shrink the overlap without changing the link, for arbitrary operands.
// The result overlap P' satisfies |P'| = r(union) - r(wedge) and the new
// operands carry disjoint bases covering P'.
LinkInstance general_minimize(const LinkInstance& inst);

// Does left restricted/contracted to P match the dual of right on P
// (both the restriction pair and the contraction pair)?
bool check_condition(const LinkInstance& inst);

// Overlap minimization when check_condition holds: contract a base of
// left-contracted-to-P out of the left, a disjoint base of
// right-contracted-to-P out of the right, and drop both from the overlap.
// The result reaches the connectivity lower bound |P^| = lambda(S).
LinkInstance conditional_minimize(const LinkInstance& inst);

// (left ⊕ right) linked through a coupling matroid on P1 + P2.
struct MultiportInstance {
  Matroid left;   // on S + P1
  Matroid right;  // on P2 + Q
  Matroid port;   // on P1 + P2
  Labels p1, p2;
};

MultiportInstance make_multiport_instance(Matroid left, Matroid right, Matroid port);
Matroid multiport_compose(const MultiportInstance& inst);
MultiportInstance multiport_minimize(const MultiportInstance& inst);

// Three-way link: union of the three operands contracted to the labels that
// occur in exactly one operand. Requires every label to occur at most twice.
Matroid triple_link(const Matroid& a, const Matroid& b, const Matroid& c);

// m1 >= m2: every base of a restriction of m1 contains a base of the same
// restriction of m2, and every such base of m2 extends to one of m1.
bool matroid_geq(const Matroid& m1, const Matroid& m2);

// m2 is a quotient of m1 (rank differences of m1 dominate those of m2 on
// all nested pairs). Equivalent to matroid_geq(m1, m2).
bool is_quotient(const Matroid& m1, const Matroid& m2);

}  // namespace mforge
