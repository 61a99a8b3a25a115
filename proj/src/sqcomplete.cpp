#include "mforge/sqcomplete.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace mforge {
namespace {

// Validate that S and Q partition m's ground set; return their masks.
std::pair<Mask, Mask> partition_masks(const Matroid& m, const Labels& S,
                                      const Labels& Q) {
  require_distinct(S, "side split");
  require_distinct(Q, "side split");
  if (!disjoint(S, Q))
    throw PreconditionError("side split: the two sides overlap");
  if (!same_label_set(concat(S, Q), m.ground()))
    throw PreconditionError(
        "side split: the two sides must cover the ground set exactly");
  Mask smask = m.mask_of(S);
  return {smask, m.full_mask() & ~smask};
}

// Shortlex-by-size order on canonical label lists.
bool labels_lt(const Labels& a, const Labels& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return shortlex_less(a[i], b[i]);
  return false;
}

// Group the S-side traces of a base family by the family of Q-side traces
// completing them. nullopt when a Q-trace completes traces from two distinct
// groups — exactly the failure of the forced-fourth-corner property.
struct FiberGroups {
  std::vector<std::vector<Mask>> s_parts;  // per group, ascending
  std::vector<std::vector<Mask>> fibers;   // per group, ascending q-traces
};

std::optional<FiberGroups> fiber_groups(const std::vector<Mask>& bases,
                                        Mask smask, Mask qmask) {
  std::map<Mask, std::vector<Mask>> fib;
  for (Mask b : bases) fib[b & smask].push_back(b & qmask);
  std::map<std::vector<Mask>, std::vector<Mask>> groups;
  for (auto& [s, v] : fib) {
    std::sort(v.begin(), v.end());
    groups[v].push_back(s);
  }
  std::map<Mask, int> owner;
  int gid = 0;
  for (const auto& [fiber, parts] : groups) {
    for (Mask q : fiber) {
      auto [it, inserted] = owner.emplace(q, gid);
      if (!inserted && it->second != gid) return std::nullopt;
    }
    ++gid;
  }
  FiberGroups out;
  for (auto& [fiber, parts] : groups) {
    std::sort(parts.begin(), parts.end());
    out.s_parts.push_back(parts);
    out.fibers.push_back(fiber);
  }
  return out;
}

// Maximum common independent set certifying whether the forced-corner
// extension of t (split by smask/qmask, both halves independent in m) reaches
// full rank. Works on a mirrored copy of the ground set whose bits align with
// m's; the left matroid ranks mirror elements against the opposite half of t,
// the right one ranks them as m does.
Mask completion_mci(const Matroid& m, Mask smask, Mask qmask, Mask t) {
  Mask ts = t & smask, tq = t & qmask;
  int rts = popcount(ts), rtq = popcount(tq);
  Labels mirror = primed_all(m.ground());
  auto fn_c = [m, smask, qmask, ts, tq, rts, rtq](Mask x) {
    Mask us = x & smask, uq = x & qmask;
    return (m.rank(ts | uq) - rts) + (m.rank(tq | us) - rtq);
  };
  auto fn_p = [m](Mask x) { return m.rank(x); };
  Matroid mc = Matroid::from_rank_fn(mirror, fn_c, "corner-extension");
  Matroid mp = Matroid::from_rank_fn(mirror, fn_p, "mirror");
  return max_common_independent(mc, mp);
}

bool completion_indep_mask(const Matroid& m, Mask smask, Mask qmask, int r,
                           Mask t) {
  if (popcount(t) > r) return false;
  if (!m.indep(t & smask) || !m.indep(t & qmask)) return false;
  return popcount(completion_mci(m, smask, qmask, t)) == r;
}

std::vector<Labels> canonical_members(const Matroid& m,
                                      const std::vector<Mask>& parts) {
  std::vector<Labels> out;
  out.reserve(parts.size());
  for (Mask s : parts) out.push_back(sorted_shortlex(m.labels_of(s)));
  std::sort(out.begin(), out.end(), labels_lt);
  return out;
}

// All blocks of a side classification as one deduplicated list.
std::vector<std::vector<Labels>> all_blocks(const BlockPartition& bp) {
  std::vector<std::vector<Labels>> out = bp.crossing;
  out.push_back(bp.restriction_bases);
  out.push_back(bp.contraction_bases);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string side_text(const Labels& S) { return "{" + join(S, ",") + "}"; }

}  // namespace

bool operator==(const BlockPartition& a, const BlockPartition& b) {
  return a.side == b.side && a.crossing == b.crossing &&
         a.restriction_bases == b.restriction_bases &&
         a.contraction_bases == b.contraction_bases;
}

bool operator!=(const BlockPartition& a, const BlockPartition& b) {
  return !(a == b);
}

bool is_complete(const Matroid& m, const Labels& S, const Labels& Q) {
  auto [smask, qmask] = partition_masks(m, S, Q);
  ExplicitBases eb = enumerate_bases(m);
  return fiber_groups(eb.bases, smask, qmask).has_value();
}

bool completion_independent(const Matroid& m, const Labels& S, const Labels& Q,
                            const Labels& T) {
  auto [smask, qmask] = partition_masks(m, S, Q);
  return completion_indep_mask(m, smask, qmask, m.rank_all(), m.mask_of(T));
}

Matroid completion(const Matroid& m, const Labels& S, const Labels& Q) {
  auto [smask, qmask] = partition_masks(m, S, Q);
  int r = m.rank_all();
  auto fn = [m, smask = smask, qmask = qmask, r](Mask x) {
    if (completion_indep_mask(m, smask, qmask, r, x)) return popcount(x);
    Mask cur = 0;
    int cnt = 0;
    for (int i = 0; (x >> i) != 0; ++i) {
      if (!((x >> i) & 1)) continue;
      Mask cand = cur | (Mask{1} << i);
      if (completion_indep_mask(m, smask, qmask, r, cand)) {
        cur = cand;
        ++cnt;
      }
    }
    return cnt;
  };
  return Matroid::from_rank_fn(m.ground(), fn,
                               "completion(" + m.describe() + ")");
}

ExplicitBases completion_bruteforce(const Matroid& m, const Labels& S,
                                    const Labels& Q) {
  auto [smask, qmask] = partition_masks(m, S, Q);
  ExplicitBases eb = enumerate_bases(m);
  std::map<Mask, std::vector<Mask>> fibQ, fibS;
  for (Mask b : eb.bases) {
    fibQ[b & smask].push_back(b & qmask);
    fibS[b & qmask].push_back(b & smask);
  }
  std::set<Mask> out(eb.bases.begin(), eb.bases.end());
  for (Mask b : eb.bases)
    for (Mask shat : fibS[b & qmask])
      for (Mask qhat : fibQ[b & smask]) out.insert(shat | qhat);
  return ExplicitBases{eb.ground, {out.begin(), out.end()}};
}

CompletionWitness completion_witness(const Matroid& m, const Labels& S,
                                     const Labels& Q, const Labels& candidate) {
  auto [smask, qmask] = partition_masks(m, S, Q);
  int r = m.rank_all();
  Mask t = m.mask_of(candidate);
  if (popcount(t) != r || !completion_indep_mask(m, smask, qmask, r, t))
    throw PreconditionError(
        "witness request: candidate is not a base of the completed matroid");
  Mask mci = completion_mci(m, smask, qmask, t);
  if (popcount(mci) != r)
    throw InternalError("witness recovery lost the certificate for {" +
                        join(candidate, ",") + "}");
  Mask bs = mci & smask, bq = mci & qmask;
  Mask corners[3] = {bs | bq, (t & smask) | bq, bs | (t & qmask)};
  for (Mask w : corners)
    if (popcount(w) != r || !m.indep(w))
      throw InternalError("witness corner {" + join(m.labels_of(w), ",") +
                          "} is not a base of the original matroid");
  return CompletionWitness{sorted_shortlex(m.labels_of(corners[0])),
                           sorted_shortlex(m.labels_of(corners[1])),
                           sorted_shortlex(m.labels_of(corners[2]))};
}

BlockPartition equivalence_classes(const Matroid& m, const Labels& side) {
  Labels rest = minus(m.ground(), side);
  auto [smask, qmask] = partition_masks(m, side, rest);
  ExplicitBases eb = enumerate_bases(m);
  auto fg = fiber_groups(eb.bases, smask, qmask);
  if (!fg)
    throw PreconditionError("side classification of " + side_text(side) +
                            " requires the forced-fourth-corner property");
  int r_rest = m.rank(smask);
  int r_con = m.rank_all() - m.rank(qmask);
  BlockPartition bp;
  bp.side = sorted_shortlex(side);
  for (std::size_t g = 0; g < fg->s_parts.size(); ++g) {
    const auto& parts = fg->s_parts[g];
    int sz = popcount(parts.front());
    for (Mask s : parts)
      if (popcount(s) != sz)
        throw InternalError("mixed-size block in side classification of " +
                            side_text(side));
    auto members = canonical_members(m, parts);
    bool tagged = false;
    if (sz == r_rest) {
      if (!bp.restriction_bases.empty())
        throw InternalError("two restriction-base blocks for " +
                            side_text(side));
      bp.restriction_bases = members;
      tagged = true;
    }
    if (sz == r_con) {
      if (!bp.contraction_bases.empty())
        throw InternalError("two contraction-base blocks for " +
                            side_text(side));
      bp.contraction_bases = members;
      tagged = true;
    }
    if (!tagged) bp.crossing.push_back(std::move(members));
  }
  if (bp.restriction_bases.empty() || bp.contraction_bases.empty())
    throw InternalError("side classification of " + side_text(side) +
                        " lost an extreme block");
  std::sort(bp.crossing.begin(), bp.crossing.end());
  return bp;
}

bool is_compatible(const Matroid& m_sp, const Matroid& m_pq) {
  Labels P = intersection(m_sp.ground(), m_pq.ground());
  BlockPartition left = equivalence_classes(dual(m_sp), P);
  BlockPartition right = equivalence_classes(m_pq, P);
  return left == right;
}

Matroid compose_compatible(const Matroid& m_sp, const Matroid& m_pq) {
  if (!is_compatible(m_sp, m_pq))
    throw PreconditionError(
        "compose: operands disagree on the shared-overlap classification");
  LinkInstance li = make_link_instance(m_sp, m_pq);
  Labels S = link_side_s(li), Q = link_side_q(li);
  Matroid lk = link(li);
  if (!is_complete(lk, S, Q))
    throw InternalError("composite of a compatible pair is not complete");
  if (equivalence_classes(lk, S) != equivalence_classes(m_sp, S))
    throw InternalError("composite changed the left side classification");
  if (equivalence_classes(lk, Q) != equivalence_classes(m_pq, Q))
    throw InternalError("composite changed the right side classification");
  return lk;
}

Matroid invert_link(const Matroid& m_sp, const Matroid& m_sq) {
  Labels S = intersection(m_sp.ground(), m_sq.ground());
  Labels P = minus(m_sp.ground(), S);
  Labels Q = minus(m_sq.ground(), S);
  Matroid cand = link(dual(m_sp), m_sq);
  if (!is_complete(cand, P, Q))
    throw PreconditionError(
        "inversion candidate is not complete over its overlap/rest split");
  BlockPartition coarse = equivalence_classes(cand, P);
  BlockPartition fine = equivalence_classes(dual(m_sp), P);
  std::map<Labels, int> fine_of;
  auto fine_blocks = all_blocks(fine);
  for (std::size_t i = 0; i < fine_blocks.size(); ++i)
    for (const auto& x : fine_blocks[i]) fine_of.emplace(x, i);
  for (const auto& block : all_blocks(coarse)) {
    std::set<Labels> cover(block.begin(), block.end());
    for (const auto& x : block) {
      auto it = fine_of.find(x);
      if (it == fine_of.end())
        throw PreconditionError("refinement condition fails: trace {" +
                                join(x, ",") +
                                "} has no block in the left factor's dual");
      for (const auto& y : fine_blocks[it->second])
        if (!cover.count(y))
          throw PreconditionError(
              "refinement condition fails: block containing {" + join(x, ",") +
              "} is not a union of left-dual blocks");
    }
  }
  return cand;
}

LinkInstance decompose_complete(const Matroid& m, const Labels& S,
                                const Labels& Q) {
  partition_masks(m, S, Q);
  if (!is_complete(m, S, Q))
    throw PreconditionError(
        "decomposition requires the forced-fourth-corner property");
  Matroid left = primed_copy(m, Q);                          // S + Q'
  Matroid right = link(primed_copy(m, S),                    // S' + Q
                       primed_copy(dual(m), m.ground()));    // S' + Q'
  LinkInstance li = make_link_instance(left, right);
  if (!check_condition(li))
    throw InternalError("mirror split lost the overlap minor condition");
  LinkInstance out = conditional_minimize(li);
  int lam = connectivity(m, S);
  if (static_cast<int>(out.overlap.size()) != lam)
    throw InternalError("decomposition overlap size " +
                        std::to_string(out.overlap.size()) +
                        " differs from connectivity " + std::to_string(lam));
  if (!is_complete(out.left, link_side_s(out), out.overlap))
    throw InternalError("left decomposition factor is not complete");
  if (!is_complete(out.right, out.overlap, link_side_q(out)))
    throw InternalError("right decomposition factor is not complete");
  if (!is_compatible(out.left, out.right))
    throw InternalError("decomposition factors are not compatible");
  return out;
}

MultiportInstance multiport_decompose_complete(const Matroid& m,
                                               const Labels& S,
                                               const Labels& Q) {
  partition_masks(m, S, Q);
  if (!is_complete(m, S, Q))
    throw PreconditionError(
        "decomposition requires the forced-fourth-corner property");
  Matroid left = primed_copy(m, Q);                        // S + Q'
  Matroid right = primed_copy(m, S);                       // S' + Q
  Matroid port = primed_copy(dual(m), m.ground());         // S' + Q'
  MultiportInstance mi = make_multiport_instance(left, right, port);
  MultiportInstance out = multiport_minimize(mi);
  int lam = connectivity(m, S);
  if (static_cast<int>(out.p1.size()) != lam ||
      static_cast<int>(out.p2.size()) != lam)
    throw InternalError("port sizes differ from connectivity " +
                        std::to_string(lam));
  if (!is_complete(out.left, minus(out.left.ground(), out.p1), out.p1))
    throw InternalError("left multiport factor is not complete");
  if (!is_complete(out.right, out.p2, minus(out.right.ground(), out.p2)))
    throw InternalError("right multiport factor is not complete");
  if (!is_complete(out.port, out.p1, out.p2))
    throw InternalError("port coupling matroid is not complete");
  return out;
}

Matroid free_rr(const Matroid& ms, const Matroid& mq, int k_max) {
  if (!disjoint(ms.ground(), mq.ground()))
    throw PreconditionError("product operands need disjoint ground sets");
  int r1 = ms.rank_all(), r2 = mq.rank_all();
  if (k_max < std::max(r1, r2) || k_max > r1 + r2)
    throw PreconditionError("size parameter " + std::to_string(k_max) +
                            " outside [" + std::to_string(std::max(r1, r2)) +
                            ", " + std::to_string(r1 + r2) + "]");
  Matroid ds = direct_sum(ms, mq);
  auto fn = [ds, k_max](Mask x) { return std::min(ds.rank(x), k_max); };
  return Matroid::from_rank_fn(
      ds.ground(), fn,
      "rr(" + ms.describe() + "," + mq.describe() + ";" +
          std::to_string(k_max) + ")");
}

Matroid free_cc(const Matroid& ms, const Matroid& mq, int k_max) {
  return dual(free_rr(dual(ms), dual(mq), k_max));
}

Matroid free_rc(const Matroid& ms, const Matroid& mq) {
  if (!disjoint(ms.ground(), mq.ground()))
    throw PreconditionError("product operands need disjoint ground sets");
  int rs = ms.rank_all(), rq = mq.rank_all();
  int na = ms.size(), nq = mq.size();
  Labels g = concat(ms.ground(), mq.ground());
  auto fn = [ms, mq, rs, rq, na, nq](Mask x) {
    Mask xs = x & ((na == 0) ? 0 : (~Mask{0} >> (64 - na)));
    Mask xq = x >> na;
    int szq = popcount(xq);
    int n0 = szq - mq.rank(xq);  // surplus of the second-ground part
    // Dropping one surplus element trades one unit of size for one unit of
    // headroom; the feasible minimum of drops is forced by the spanning-set
    // and headroom constraints.
    int kstar = std::max({0, rq + n0 - nq, n0 - rs});
    return std::min(ms.rank(xs), rs - n0 + kstar) + szq - kstar;
  };
  return Matroid::from_rank_fn(
      g, fn, "rc(" + ms.describe() + "," + mq.describe() + ")");
}

Matroid principal_sum(const Matroid& ms, const Matroid& mq, const Labels& A,
                      const Labels& B) {
  if (!disjoint(ms.ground(), mq.ground()))
    throw PreconditionError("sum operands need disjoint ground sets");
  require_distinct(A, "flat selector");
  require_distinct(B, "extension selector");
  for (const auto& a : A)
    if (!contains_label(ms.ground(), a))
      throw PreconditionError("flat selector label '" + a +
                              "' is not in the first ground set");
  for (const auto& b : B)
    if (!contains_label(mq.ground(), b))
      throw PreconditionError("extension selector label '" + b +
                              "' is not in the second ground set");
  Labels extg = concat(ms.ground(), B);
  int na = ms.size();
  Mask amask = ms.mask_of(A);
  auto fn = [ms, na, amask](Mask x) {
    Mask xs = x & ((na == 0) ? 0 : (~Mask{0} >> (64 - na)));
    int b1 = popcount(x >> na);
    int rx = ms.rank(xs);
    int boost = ms.rank(xs | amask) - rx;
    return rx + std::min(boost, b1);
  };
  Matroid msb = Matroid::from_rank_fn(
      extg, fn, "flat-extension(" + ms.describe() + ")");
  return union_matroid(msb, mq);
}

}  // namespace mforge
