#include "mforge/munion.hpp"

#include <array>

namespace mforge {

namespace {

Mask bit(int i) { return Mask{1} << i; }

// Place x into the partition (i1, i2) if possible, rearranging via a
// shortest displacement sequence (BFS, ascending tie-break). Returns false
// when i1 + i2 is already a maximum partitionable subset w.r.t. x.
bool partition_augment(const Matroid& a, const Matroid& b, Mask& i1, Mask& i2, int x) {
  std::array<int, 64> par_from{}, par_side{};
  Mask visited = bit(x);
  std::vector<int> queue{x};
  int sink = -1, sink_side = -1;
  for (size_t qi = 0; qi < queue.size() && sink < 0; ++qi) {
    int e = queue[qi];
    for (int side = 0; side < 2 && sink < 0; ++side) {
      const Matroid& m = side ? b : a;
      Mask I = side ? i2 : i1;
      if (I & bit(e)) continue;
      if (m.indep(I | bit(e))) {
        sink = e;
        sink_side = side;
        break;
      }
      for (int y = 0; I >> y; ++y) {
        if (!((I >> y) & 1) || (visited & bit(y))) continue;
        if (m.indep((I & ~bit(y)) | bit(e))) {
          visited |= bit(y);
          par_from[y] = e;
          par_side[y] = side;
          queue.push_back(y);
        }
      }
    }
  }
  if (sink < 0) return false;
  Mask before = i1 | i2;
  (sink_side ? i2 : i1) |= bit(sink);
  for (int cur = sink; cur != x;) {
    int f = par_from[cur], s = par_side[cur];
    Mask& I = s ? i2 : i1;
    I = (I & ~bit(cur)) | bit(f);
    cur = f;
  }
  if (!a.indep(i1) || !b.indep(i2) || (i1 & i2) || (i1 | i2) != (before | bit(x)))
    throw InternalError("partition augmentation produced an invalid partition");
  return true;
}

Matroid align_same(const Matroid& a, const Matroid& b) {
  if (!same_label_set(a.ground(), b.ground()))
    throw PreconditionError("operation requires identical ground sets");
  return a.ground() == b.ground() ? b : restrict_to(b, a.ground());
}

}  // namespace

Labels joint_ground(const Matroid& a, const Matroid& b) {
  return concat(a.ground(), minus(b.ground(), a.ground()));
}

Matroid pad_with_loops(const Matroid& m, const Labels& universe) {
  Labels extra = minus(universe, m.ground());
  Matroid padded = extra.empty() ? m : direct_sum(m, zero_matroid(extra));
  return padded.ground() == universe ? padded : restrict_to(padded, universe);
}

Matroid pad_with_coloops(const Matroid& m, const Labels& universe) {
  Labels extra = minus(universe, m.ground());
  Matroid padded = extra.empty() ? m : direct_sum(m, free_matroid(extra));
  return padded.ground() == universe ? padded : restrict_to(padded, universe);
}

std::pair<Mask, Mask> partition_max(const Matroid& a, const Matroid& b, Mask x,
                                    const std::vector<int>& insertion) {
  if (a.ground() != b.ground())
    throw InternalError("partition_max operands must share a bit space");
  Mask i1 = 0, i2 = 0, offered = 0;
  auto offer = [&](int e) {
    if (!((x >> e) & 1) || (offered & bit(e))) return;
    offered |= bit(e);
    partition_augment(a, b, i1, i2, e);
  };
  for (int e : insertion) offer(e);
  for (int e = 0; x >> e; ++e)
    if ((x >> e) & 1) offer(e);
  return {i1, i2};
}

Matroid union_matroid(const Matroid& a, const Matroid& b) {
  Labels universe = joint_ground(a, b);
  Matroid pa = pad_with_loops(a, universe);
  Matroid pb = pad_with_loops(b, universe);
  auto fn = [pa, pb](Mask x) {
    auto [i1, i2] = partition_max(pa, pb, x, {});
    return popcount(i1) + popcount(i2);
  };
  return Matroid::from_rank_fn(universe, fn,
                               "union(" + a.describe() + "," + b.describe() + ")");
}

Matroid wedge_matroid(const Matroid& a, const Matroid& b) {
  Labels universe = joint_ground(a, b);
  Matroid pa = pad_with_coloops(a, universe);
  Matroid pb = pad_with_coloops(b, universe);
  return dual(union_matroid(dual(pa), dual(pb)));
}

Mask greedy_extend(const Matroid& m, Mask start, Mask universe) {
  std::vector<int> order;
  for (int e = 0; universe >> e; ++e)
    if ((universe >> e) & 1) order.push_back(e);
  return greedy_extend_ordered(m, start, order);
}

Mask greedy_extend_ordered(const Matroid& m, Mask start, const std::vector<int>& order) {
  if (!m.indep(start))
    throw PreconditionError("greedy extension start set is dependent");
  Mask cur = start;
  for (int e : order) {
    if (cur & bit(e)) continue;
    if (m.indep(cur | bit(e))) cur |= bit(e);
  }
  return cur;
}

Mask max_common_independent(const Matroid& a, const Matroid& b) {
  Matroid b2 = align_same(a, b);
  Mask I = 0;
  Mask full = a.full_mask();
  for (;;) {
    std::array<int, 64> par{};
    par.fill(-1);
    Mask visited = 0;
    std::vector<int> queue;
    int target = -1;
    auto discover = [&](int z, int parent) {
      if (visited & bit(z)) return;
      visited |= bit(z);
      par[z] = parent;
      queue.push_back(z);
      if (target < 0 && !((I >> z) & 1) && b2.indep(I | bit(z))) target = z;
    };
    for (int e = 0; e < a.size() && target < 0; ++e)
      if (!((I >> e) & 1) && ((full >> e) & 1) && a.indep(I | bit(e)))
        discover(e, -2);
    for (size_t qi = 0; qi < queue.size() && target < 0; ++qi) {
      int e = queue[qi];
      if ((I >> e) & 1) {
        for (int z = 0; z < a.size() && target < 0; ++z)
          if (!((I >> z) & 1) && ((full >> z) & 1) && !(visited & bit(z)) &&
              a.indep((I & ~bit(e)) | bit(z)))
            discover(z, e);
      } else {
        for (int z = 0; z < a.size() && target < 0; ++z)
          if (((I >> z) & 1) && !(visited & bit(z)) && b2.indep((I & ~bit(z)) | bit(e)))
            discover(z, e);
      }
    }
    if (target < 0) break;
    Mask before = I;
    for (int cur = target; cur >= 0; cur = par[cur]) I ^= bit(cur);
    if (!a.indep(I) || !b2.indep(I) || popcount(I) != popcount(before) + 1)
      throw InternalError("common-independent augmentation produced an invalid set");
  }
  return I;
}

DistantBasePair maximally_distant_bases(const Matroid& a, const Matroid& b,
                                        Mask prefer_first) {
  Labels universe = joint_ground(a, b);
  Matroid pa = pad_with_loops(a, universe);
  Matroid pb = pad_with_loops(b, universe);
  std::vector<int> order;
  for (int e = 0; prefer_first >> e; ++e)
    if ((prefer_first >> e) & 1) order.push_back(e);
  auto [i1, i2] = partition_max(pa, pb, pa.full_mask(), order);
  Mask b1 = greedy_extend(pa, i1, pa.full_mask());
  Mask b2 = greedy_extend(pb, i2, pb.full_mask());
  if (popcount(b1) != pa.rank_all() || popcount(b2) != pb.rank_all() ||
      popcount(b1 | b2) != popcount(i1) + popcount(i2))
    throw InternalError("distant-base extension lost partition coverage");
  return DistantBasePair{universe, b1, b2, popcount(b1 | b2)};
}

}  // namespace mforge
