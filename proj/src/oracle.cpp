#include "mforge/oracle.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace mforge {
namespace {

Mask remap(Mask x, const std::vector<int>& bit_map) {
  Mask out = 0;
  for (std::size_t i = 0; i < bit_map.size(); ++i)
    if ((x >> i) & 1) out |= Mask{1} << bit_map[i];
  return out;
}

}  // namespace

ExplicitBases brute_union(const Matroid& a, const Matroid& b) {
  Labels universe = joint_ground(a, b);
  check_guard(universe.size(), oracle_guard(), "exhaustive union ground set");
  ExplicitBases ea = enumerate_bases(pad_with_loops(a, universe));
  ExplicitBases eb = enumerate_bases(pad_with_loops(b, universe));
  std::set<Mask> unions;
  int best = 0;
  for (Mask x : ea.bases)
    for (Mask y : eb.bases) {
      Mask u = x | y;
      best = std::max(best, popcount(u));
      unions.insert(u);
    }
  ExplicitBases out;
  out.ground = universe;
  for (Mask u : unions)
    if (popcount(u) == best) out.bases.push_back(u);
  return out;
}

ExplicitBases brute_link(const LinkInstance& inst) {
  ExplicitBases un = brute_union(inst.left, inst.right);
  Mask keep = 0;
  std::vector<int> bit_map(un.ground.size(), -1);
  Labels kept;
  for (std::size_t i = 0; i < un.ground.size(); ++i) {
    if (contains_label(inst.overlap, un.ground[i])) continue;
    keep |= Mask{1} << i;
    bit_map[i] = static_cast<int>(kept.size());
    kept.push_back(un.ground[i]);
  }
  int best = popcount(keep) + 1;
  std::set<Mask> traces;
  for (Mask u : un.bases) best = std::min(best, popcount(u & keep));
  for (Mask u : un.bases) {
    Mask t = u & keep;
    if (popcount(t) == best) traces.insert(remap(t, bit_map));
  }
  return ExplicitBases{kept, {traces.begin(), traces.end()}};
}

std::optional<ExchangeWitness> brute_exchange_check(const ExplicitBases& eb) {
  check_guard(eb.ground.size(), oracle_guard(), "exchange scan ground set");
  return exchange_violation(eb.ground, eb.bases);
}

bool brute_quotient(const Matroid& m1, const Matroid& m2) {
  if (!same_label_set(m1.ground(), m2.ground()))
    throw PreconditionError("quotient scan requires identical ground sets");
  check_guard(m1.ground().size(), oracle_guard(), "quotient scan ground set");
  std::vector<int> map2;
  map2.reserve(m1.ground().size());
  for (const auto& l : m1.ground()) map2.push_back(m2.bit_of(l));
  Mask full = m1.full_mask();
  for (Mask t2 = 0;; ++t2) {
    Mask t1 = t2;
    for (;;) {
      int lhs = m1.rank(t2) - m1.rank(t1);
      int rhs = m2.rank(remap(t2, map2)) - m2.rank(remap(t1, map2));
      if (lhs < rhs) return false;
      if (t1 == 0) break;
      t1 = (t1 - 1) & t2;
    }
    if (t2 == full) break;
  }
  return true;
}

}  // namespace mforge
