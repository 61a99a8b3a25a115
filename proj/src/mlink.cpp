#include "mforge/mlink.hpp"

#include <algorithm>
#include <map>

namespace mforge {

namespace {

Mask bit(int i) { return Mask{1} << i; }

Labels filter_by_mask(const Labels& order, const Matroid& space, Mask m) {
  Labels out;
  for (const auto& l : order)
    if (m & bit(space.bit_of(l))) out.push_back(l);
  return out;
}

}  // namespace

LinkInstance make_link_instance(Matroid left, Matroid right, Labels overlap) {
  require_distinct(overlap, "link overlap");
  Labels shared = intersection(left.ground(), right.ground());
  if (!same_label_set(shared, overlap))
    throw PreconditionError(
        "link overlap must equal the intersection of the two ground sets");
  return LinkInstance{std::move(left), std::move(right), std::move(overlap)};
}

LinkInstance make_link_instance(Matroid left, Matroid right) {
  Labels shared = intersection(left.ground(), right.ground());
  return make_link_instance(std::move(left), std::move(right), std::move(shared));
}

Labels link_side_s(const LinkInstance& inst) {
  return minus(inst.left.ground(), inst.overlap);
}

Labels link_side_q(const LinkInstance& inst) {
  return minus(inst.right.ground(), inst.overlap);
}

Matroid link(const LinkInstance& inst) {
  Matroid u = union_matroid(inst.left, inst.right);
  return contract_to(u, concat(link_side_s(inst), link_side_q(inst)));
}

Matroid link(const Matroid& left, const Matroid& right) {
  return link(make_link_instance(left, right));
}

Matroid link_wedge_route(const LinkInstance& inst) {
  Matroid w = wedge_matroid(inst.left, inst.right);
  return restrict_to(w, concat(link_side_s(inst), link_side_q(inst)));
}

int connectivity(const Matroid& m, const Labels& s) {
  Mask sm = m.mask_of(s);
  // r(M restricted to S) - [r(ground) - r(ground - S)]
  return m.rank(sm) - (m.rank_all() - m.rank(m.full_mask() & ~sm));
}

LinkInstance general_minimize(const LinkInstance& inst) {
  const Labels s = link_side_s(inst), q = link_side_q(inst);
  Matroid u = union_matroid(inst.left, inst.right);
  Mask pmask = u.mask_of(inst.overlap);
  // Base of the union restricted to the overlap, greedily.
  Mask p2mask = greedy_extend(u, 0, pmask);
  DistantBasePair db = maximally_distant_bases(inst.left, inst.right, p2mask);
  if (db.ground != u.ground())
    throw InternalError("distant-base universe mismatch in general_minimize");
  if (((db.b1 | db.b2) & pmask) != p2mask)
    throw InternalError("distant bases do not trace the union base of the overlap");
  Mask p3 = db.b1 & db.b2 & pmask;
  Mask pprime_mask = p2mask & ~p3;

  Labels p2 = filter_by_mask(inst.overlap, u, p2mask);
  Labels pprime = filter_by_mask(inst.overlap, u, pprime_mask);
  Matroid newleft = contract_to(restrict_to(inst.left, concat(s, p2)), concat(s, pprime));
  Matroid newright = contract_to(restrict_to(inst.right, concat(p2, q)), concat(pprime, q));

  Matroid w = wedge_matroid(inst.left, inst.right);
  int by_overlap = popcount(p2mask) -
                   (w.rank_all() - w.rank(w.full_mask() & ~pmask));
  int by_total = u.rank_all() - w.rank_all();
  if (static_cast<int>(pprime.size()) != by_overlap ||
      static_cast<int>(pprime.size()) != by_total)
    throw InternalError("minimized overlap size misses the union/wedge rank gap");

  // The surviving halves of the distant bases must be disjoint bases of the
  // new operands covering the new overlap.
  Mask keep1 = u.mask_of(concat(s, pprime));
  Mask keep2 = u.mask_of(concat(pprime, q));
  Mask b1p = (db.b1 & ~p3) & keep1;
  Mask b2p = (db.b2 & ~p3) & keep2;
  if (b1p & b2p) throw InternalError("surviving distant bases overlap");
  if ((pprime_mask & ~(b1p | b2p)) != 0)
    throw InternalError("surviving distant bases do not cover the new overlap");
  Mask nb1 = newleft.mask_of(u.labels_of(b1p));
  Mask nb2 = newright.mask_of(u.labels_of(b2p));
  if (newleft.rank(nb1) != popcount(nb1) || popcount(nb1) != newleft.rank_all() ||
      newright.rank(nb2) != popcount(nb2) || popcount(nb2) != newright.rank_all())
    throw InternalError("surviving distant halves are not bases of the new operands");

  return LinkInstance{newleft, newright, pprime};
}

bool check_condition(const LinkInstance& inst) {
  Matroid rdual = dual(inst.right);
  const Labels& p = inst.overlap;
  return matroid_equal(restrict_to(inst.left, p), restrict_to(rdual, p)) &&
         matroid_equal(contract_to(inst.left, p), contract_to(rdual, p));
}

LinkInstance conditional_minimize(const LinkInstance& inst) {
  if (!check_condition(inst))
    throw PreconditionError(
        "overlap minors of the operands do not match dually; use general_minimize");
  const Labels s = link_side_s(inst), q = link_side_q(inst);
  const Labels& p = inst.overlap;

  Matroid lx = contract_to(inst.left, p);
  Matroid rx = contract_to(inst.right, p);  // same bit space: ground order = p
  Mask b3 = greedy_extend(lx, 0, lx.full_mask());
  Mask b4 = greedy_extend(rx, 0, rx.full_mask() & ~b3);
  if (popcount(b4) != rx.rank_all())
    throw InternalError("no disjoint base pair inside the overlap contractions");

  Labels p_minus_b3 = filter_by_mask(p, lx, lx.full_mask() & ~b3);
  Labels p_minus_b4 = filter_by_mask(p, lx, lx.full_mask() & ~b4);
  Labels phat = filter_by_mask(p, lx, lx.full_mask() & ~(b3 | b4));

  Matroid newleft =
      restrict_to(contract_to(inst.left, concat(s, p_minus_b3)), concat(s, phat));
  Matroid newright =
      restrict_to(contract_to(inst.right, concat(p_minus_b4, q)), concat(phat, q));
  LinkInstance out{newleft, newright, phat};

  // Disjoint bases covering the overlap, before and after.
  auto check_cover = [](const LinkInstance& li) {
    Matroid u = union_matroid(li.left, li.right);
    Mask pm = u.mask_of(li.overlap);
    DistantBasePair db = maximally_distant_bases(li.left, li.right, pm);
    if ((db.b1 & db.b2) != 0 || (pm & ~(db.b1 | db.b2)) != 0)
      throw InternalError("no disjoint base pair covers the overlap");
  };
  check_cover(inst);
  check_cover(out);

  if (!check_condition(out))
    throw InternalError("overlap minor condition lost by conditional minimization");

  // The shrunk overlap sits inside a base and a cobase of both new operands.
  for (const Matroid* m : {&newleft, &newright}) {
    Mask pm = m->mask_of(phat);
    if (!m->indep(pm) || !dual(*m).indep(pm))
      throw InternalError("shrunk overlap not inside a base and a cobase");
  }

  int lam = connectivity(inst.left, s);
  Matroid lk_old = link(inst), lk_new = link(out);
  int lam_link_s = connectivity(lk_old, s);
  int lam_link_q = connectivity(lk_old, link_side_q(inst));
  int lam_right = connectivity(inst.right, q);
  if (static_cast<int>(phat.size()) != lam || lam != lam_link_s ||
      lam_link_s != lam_link_q || lam_link_q != lam_right)
    throw InternalError("shrunk overlap size misses the connectivity bound");
  if (lk_old.rank_all() != lk_new.rank_all())
    throw InternalError("conditional minimization changed the link rank");
  return out;
}

MultiportInstance make_multiport_instance(Matroid left, Matroid right, Matroid port) {
  Labels p1 = intersection(left.ground(), port.ground());
  Labels p2 = intersection(right.ground(), port.ground());
  if (!disjoint(left.ground(), right.ground()))
    throw PreconditionError("multiport side matroids must have disjoint grounds");
  if (!same_label_set(port.ground(), concat(p1, p2)))
    throw PreconditionError("port ground must split into the two side overlaps");
  return MultiportInstance{std::move(left), std::move(right), std::move(port),
                           std::move(p1), std::move(p2)};
}

Matroid multiport_compose(const MultiportInstance& inst) {
  return link(make_link_instance(direct_sum(inst.left, inst.right), inst.port));
}

MultiportInstance multiport_minimize(const MultiportInstance& inst) {
  Matroid pdual = dual(inst.port);
  auto minors_match = [&](const Matroid& side, const Labels& pp) {
    return matroid_equal(restrict_to(side, pp), restrict_to(pdual, pp)) &&
           matroid_equal(contract_to(side, pp), contract_to(pdual, pp));
  };
  if (!minors_match(inst.left, inst.p1) || !minors_match(inst.right, inst.p2))
    throw PreconditionError(
        "side matroids do not match the dual port on their overlaps");

  const Labels s = minus(inst.left.ground(), inst.p1);
  const Labels q = minus(inst.right.ground(), inst.p2);

  Matroid lx1 = contract_to(inst.left, inst.p1);
  Matroid px1 = contract_to(inst.port, inst.p1);
  Mask b13 = greedy_extend(lx1, 0, lx1.full_mask());
  Mask b14 = greedy_extend(px1, 0, px1.full_mask() & ~b13);
  if (popcount(b14) != px1.rank_all())
    throw InternalError("no disjoint base pair inside the left port contraction");

  Matroid px2 = contract_to(inst.port, inst.p2);
  Matroid rx2 = contract_to(inst.right, inst.p2);
  Mask b23 = greedy_extend(px2, 0, px2.full_mask());
  Mask b24 = greedy_extend(rx2, 0, rx2.full_mask() & ~b23);
  if (popcount(b24) != rx2.rank_all())
    throw InternalError("no disjoint base pair inside the right port contraction");

  Labels p1_keep = filter_by_mask(inst.p1, lx1, lx1.full_mask() & ~b13);
  Labels p1_hat = filter_by_mask(inst.p1, lx1, lx1.full_mask() & ~(b13 | b14));
  Labels p1_noloop = filter_by_mask(inst.p1, lx1, lx1.full_mask() & ~b14);
  Labels p2_keep = filter_by_mask(inst.p2, px2, px2.full_mask() & ~b24);
  Labels p2_hat = filter_by_mask(inst.p2, px2, px2.full_mask() & ~(b23 | b24));
  Labels p2_noloop = filter_by_mask(inst.p2, px2, px2.full_mask() & ~b23);

  Matroid newleft =
      restrict_to(contract_to(inst.left, concat(s, p1_keep)), concat(s, p1_hat));
  Matroid newright =
      restrict_to(contract_to(inst.right, concat(p2_keep, q)), concat(p2_hat, q));
  Matroid newport = restrict_to(
      contract_to(inst.port, concat(p1_noloop, p2_noloop)), concat(p1_hat, p2_hat));
  MultiportInstance out{newleft, newright, newport, p1_hat, p2_hat};

  Matroid composed = multiport_compose(inst);
  int lam = connectivity(composed, s);
  int lam_left = connectivity(inst.left, s);
  if (static_cast<int>(p1_hat.size()) != lam ||
      static_cast<int>(p2_hat.size()) != lam || lam != lam_left)
    throw InternalError("shrunk port sizes miss the connectivity bound");
  if (multiport_compose(out).rank_all() != composed.rank_all())
    throw InternalError("multiport minimization changed the composed rank");
  return out;
}

Matroid triple_link(const Matroid& a, const Matroid& b, const Matroid& c) {
  std::map<Label, int> count;
  for (const Matroid* m : {&a, &b, &c})
    for (const auto& l : m->ground()) ++count[l];
  for (const auto& [l, n] : count)
    if (n > 2)
      throw PreconditionError("label '" + l + "' occurs in all three operands");
  Matroid u = union_matroid(union_matroid(a, b), c);
  Labels once;
  for (const auto& l : u.ground())
    if (count.at(l) == 1) once.push_back(l);
  return contract_to(u, once);
}

bool matroid_geq(const Matroid& m1, const Matroid& m2) {
  if (!same_label_set(m1.ground(), m2.ground()))
    throw PreconditionError("matroid inequality requires identical ground sets");
  check_guard(m1.size(), oracle_guard(), "matroid inequality ground set");
  Matroid b = m1.ground() == m2.ground() ? m2 : restrict_to(m2, m1.ground());
  Mask full = m1.full_mask();
  for (Mask t = 0;; ++t) {
    int r1t = m1.rank(t), r2t = b.rank(t);
    // Scan subsets x of t: bases of m1 restricted to t must span in m2;
    // bases of m2 restricted to t must be independent in m1.
    Mask x = t;
    for (;;) {
      int px = popcount(x);
      if (px == r1t && m1.rank(x) == r1t && b.rank(x) != r2t) return false;
      if (px == r2t && b.rank(x) == r2t && m1.rank(x) != px) return false;
      if (x == 0) break;
      x = (x - 1) & t;
    }
    if (t == full) break;
  }
  return true;
}

bool is_quotient(const Matroid& m1, const Matroid& m2) {
  if (!same_label_set(m1.ground(), m2.ground()))
    throw PreconditionError("quotient check requires identical ground sets");
  check_guard(m1.size(), oracle_guard(), "quotient check ground set");
  Matroid b = m1.ground() == m2.ground() ? m2 : restrict_to(m2, m1.ground());
  Mask full = m1.full_mask();
  for (Mask t2 = 0;; ++t2) {
    int r1b = m1.rank(t2), r2b = b.rank(t2);
    Mask t1 = t2;
    for (;;) {
      if (r1b - m1.rank(t1) < r2b - b.rank(t1)) return false;
      if (t1 == 0) break;
      t1 = (t1 - 1) & t2;
    }
    if (t2 == full) break;
  }
  return true;
}

}  // namespace mforge
