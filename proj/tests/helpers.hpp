#pragma once

// Shared test utilities: deterministic random generators for spaces, graphs
// and matroids, small fixed instances, definitional brute-force checks for
// the prime-field linear algebra, and an exhaustive GF(2) subspace
// enumerator. Header-only and Catch2-free so both the unit suites and the
// acceptance runner can use it.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mforge/graph.hpp"
#include "mforge/matroid.hpp"
#include "mforge/mlink.hpp"
#include "mforge/munion.hpp"
#include "mforge/oracle.hpp"
#include "mforge/sqcomplete.hpp"
#include "mforge/vcompose.hpp"
#include "mforge/vspace.hpp"

namespace mtest {

using namespace mforge;

using Rng = std::mt19937_64;

inline int rnd_int(Rng& rng, int lo, int hi) {  // inclusive bounds
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Labels ground_n(int n, const std::string& prefix = "e") {
  Labels g;
  g.reserve(n);
  for (int i = 1; i <= n; ++i) g.push_back(prefix + std::to_string(i));
  return g;
}

inline Labels shuffled(Rng& rng, Labels v) {
  for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
    std::swap(v[i], v[rnd_int(rng, 0, i)]);
  return v;
}

// Random split of a label set into (first s_size after shuffling, rest).
inline std::pair<Labels, Labels> random_split(Rng& rng, const Labels& g, int s_size) {
  Labels sh = shuffled(rng, g);
  Labels s(sh.begin(), sh.begin() + s_size);
  Labels q(sh.begin() + s_size, sh.end());
  return {sorted_shortlex(s), sorted_shortlex(q)};
}

// ---------------------------------------------------------------------------
// Spaces
// ---------------------------------------------------------------------------

inline QSpace qspace(Labels cols, std::vector<std::vector<long>> irows) {
  std::vector<std::vector<Rat>> rows;
  rows.reserve(irows.size());
  for (const auto& r : irows) {
    std::vector<Rat> row;
    row.reserve(r.size());
    for (long v : r) row.emplace_back(v);
    rows.push_back(std::move(row));
  }
  return QSpace::make(rational_field(), std::move(cols), std::move(rows));
}

inline PSpace pspace(std::int64_t p, Labels cols, std::vector<std::vector<long>> irows) {
  std::vector<std::vector<Gfp>> rows;
  rows.reserve(irows.size());
  for (const auto& r : irows) {
    std::vector<Gfp> row;
    row.reserve(r.size());
    for (long v : r) row.emplace_back(v, p);
    rows.push_back(std::move(row));
  }
  return PSpace::make(gf(p), std::move(cols), std::move(rows));
}

template <class K>
Space<K> random_space(Rng& rng, const FieldDesc& fd, const Labels& cols, int nrows) {
  std::vector<std::vector<K>> rows(nrows,
                                   std::vector<K>(cols.size(), zero_scalar<K>(fd)));
  for (auto& r : rows)
    for (auto& e : r) {
      if constexpr (std::is_same_v<K, Rat>) {
        Rat v(rnd_int(rng, -4, 4));
        if (rnd_int(rng, 0, 3) == 0) v /= 2;
        e = v;
      } else {
        e = Gfp(rnd_int(rng, 0, static_cast<int>(fd.p) - 1), fd.p);
      }
    }
  return Space<K>::make(fd, cols, std::move(rows));
}

// ---------------------------------------------------------------------------
// Definitional prime-field checks. A space is treated as its member set;
// every claim below is verified by scanning vectors, never by row algebra.
// ---------------------------------------------------------------------------

// All p^rank members of the space (linear combinations of the stored rows).
inline std::vector<std::vector<Gfp>> all_members(const PSpace& V) {
  const auto& rows = V.matrix();
  const int n = static_cast<int>(V.cols().size());
  const std::int64_t p = V.field().p;
  std::vector<std::vector<Gfp>> out;
  std::vector<int> coef(rows.size(), 0);
  while (true) {
    std::vector<Gfp> v(n, Gfp(0, p));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (coef[i] == 0) continue;
      Gfp c(coef[i], p);
      for (int j = 0; j < n; ++j) v[j] = v[j] + c * rows[i][j];
    }
    out.push_back(std::move(v));
    std::size_t i = 0;
    while (i < coef.size() && ++coef[i] == p) coef[i] = 0, ++i;
    if (i == coef.size()) break;
  }
  return out;
}

// All p^n vectors of length n.
inline std::vector<std::vector<Gfp>> all_vectors(std::int64_t p, int n) {
  std::vector<std::vector<Gfp>> out;
  std::vector<int> c(n, 0);
  while (true) {
    std::vector<Gfp> v;
    v.reserve(n);
    for (int j = 0; j < n; ++j) v.emplace_back(c[j], p);
    out.push_back(std::move(v));
    int i = 0;
    while (i < n && ++c[i] == p) c[i] = 0, ++i;
    if (i == n) break;
  }
  return out;
}

inline std::vector<std::int64_t> vec_key(const std::vector<Gfp>& v) {
  std::vector<std::int64_t> k;
  k.reserve(v.size());
  for (const auto& e : v) k.push_back(e.v);
  return k;
}

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// claimed == { proj_T(v) : v in V } ?
inline bool check_restrict(const PSpace& claimed, const PSpace& V, const Labels& T) {
  std::set<std::vector<std::int64_t>> seen;
  for (const auto& v : all_members(V)) {
    std::vector<Gfp> pr;
    pr.reserve(T.size());
    for (const auto& x : T) pr.push_back(v[V.col_index(x)]);
    seen.insert(vec_key(pr));
    if (!member_of(detail::align_to(claimed, T), pr)) return false;
  }
  return static_cast<std::int64_t>(seen.size()) == ipow(V.field().p, claimed.rank());
}

// claimed == { proj_T(v) : v in V, v zero outside T } ?
inline bool check_contract(const PSpace& claimed, const PSpace& V, const Labels& T) {
  std::set<std::vector<std::int64_t>> seen;
  for (const auto& v : all_members(V)) {
    bool zero_out = true;
    for (std::size_t j = 0; j < V.cols().size(); ++j)
      if (!contains_label(T, V.cols()[j]) && v[j].v != 0) {
        zero_out = false;
        break;
      }
    if (!zero_out) continue;
    std::vector<Gfp> pr;
    pr.reserve(T.size());
    for (const auto& x : T) pr.push_back(v[V.col_index(x)]);
    seen.insert(vec_key(pr));
    if (!member_of(detail::align_to(claimed, T), pr)) return false;
  }
  return static_cast<std::int64_t>(seen.size()) == ipow(V.field().p, claimed.rank());
}

// claimed == { u : u.v = 0 for every v in V } ?  (full p^n scan)
inline bool check_orthogonal(const PSpace& claimed, const PSpace& V) {
  const std::int64_t p = V.field().p;
  const int n = static_cast<int>(V.cols().size());
  std::int64_t count = 0;
  PSpace ca = detail::align_to(claimed, V.cols());
  for (const auto& u : all_vectors(p, n)) {
    bool orth = true;
    for (const auto& row : V.matrix()) {
      Gfp dot(0, p);
      for (int j = 0; j < n; ++j) dot = dot + u[j] * row[j];
      if (dot.v != 0) {
        orth = false;
        break;
      }
    }
    if (orth) {
      ++count;
      if (!member_of(ca, u)) return false;
    }
  }
  return count == ipow(p, claimed.rank());
}

// claimed == { padded v + padded w : v in V, w in W } on claimed's columns?
inline bool check_ext_sum(const PSpace& claimed, const PSpace& V, const PSpace& W) {
  const std::int64_t p = V.field().p;
  std::set<std::vector<std::int64_t>> seen;
  auto pad = [&](const PSpace& sp, const std::vector<Gfp>& v) {
    std::vector<Gfp> out(claimed.cols().size(), Gfp(0, p));
    for (std::size_t j = 0; j < sp.cols().size(); ++j)
      out[claimed.col_index(sp.cols()[j])] = v[j];
    return out;
  };
  for (const auto& v : all_members(V))
    for (const auto& w : all_members(W)) {
      auto pv = pad(V, v), pw = pad(W, w);
      for (std::size_t j = 0; j < pv.size(); ++j) pv[j] = pv[j] + pw[j];
      seen.insert(vec_key(pv));
      if (!member_of(claimed, pv)) return false;
    }
  return static_cast<std::int64_t>(seen.size()) == ipow(p, claimed.rank());
}

// claimed == { x : proj of x onto each operand's columns is a member } ?
inline bool check_ext_intersect(const PSpace& claimed, const PSpace& V, const PSpace& W) {
  const std::int64_t p = V.field().p;
  const int n = static_cast<int>(claimed.cols().size());
  std::int64_t count = 0;
  auto proj_in = [&](const PSpace& sp, const std::vector<Gfp>& x) {
    std::vector<Gfp> pr;
    pr.reserve(sp.cols().size());
    for (const auto& c : sp.cols()) pr.push_back(x[claimed.col_index(c)]);
    return member_of(sp, pr);
  };
  for (const auto& x : all_vectors(p, n)) {
    if (!proj_in(V, x) || !proj_in(W, x)) continue;
    ++count;
    if (!member_of(claimed, x)) return false;
  }
  return count == ipow(p, claimed.rank());
}

// claimed == { (v on S, w on Q) : v in V, w in W, v and w agree on P } ?
inline bool check_compose(const PSpace& claimed, const PSpace& V, const PSpace& W) {
  const std::int64_t p = V.field().p;
  Labels P = shared_columns(V, W);
  std::set<std::vector<std::int64_t>> seen;
  auto wmem = all_members(W);
  for (const auto& v : all_members(V))
    for (const auto& w : wmem) {
      bool match = true;
      for (const auto& x : P)
        if (v[V.col_index(x)] != w[W.col_index(x)]) {
          match = false;
          break;
        }
      if (!match) continue;
      std::vector<Gfp> out;
      out.reserve(claimed.cols().size());
      for (const auto& c : claimed.cols())
        out.push_back(contains_label(V.cols(), c) && !contains_label(P, c)
                          ? v[V.col_index(c)]
                          : w[W.col_index(c)]);
      seen.insert(vec_key(out));
      if (!member_of(claimed, out)) return false;
    }
  return static_cast<std::int64_t>(seen.size()) == ipow(p, claimed.rank());
}

// ---------------------------------------------------------------------------
// Compact GF(2) subspace calculus on <= 6 coordinates: a space is the 64-bit
// set of its member vectors (bit v set <=> the coordinate mask v is a
// member). Powers the exhaustive small-ground scans.
// ---------------------------------------------------------------------------

using Gf2Members = std::uint64_t;

inline Gf2Members gf2_span(const std::vector<unsigned>& rows) {
  Gf2Members mem = 1;  // the zero vector
  for (unsigned r : rows) {
    if ((mem >> r) & 1) continue;
    Gf2Members grown = mem;
    for (unsigned v = 0; v < 64; ++v)
      if ((mem >> v) & 1) grown |= Gf2Members{1} << (v ^ r);
    mem = grown;
  }
  return mem;
}

inline int gf2_dim(Gf2Members m) {
  int c = popcount(m);
  int d = 0;
  while ((1 << d) < c) ++d;
  return d;
}

// Projection onto the listed coordinates (coords[i] becomes bit i).
inline Gf2Members gf2_project(Gf2Members m, int n, const std::vector<int>& coords) {
  Gf2Members out = 0;
  for (unsigned v = 0; v < (1u << n); ++v) {
    if (!((m >> v) & 1)) continue;
    unsigned pv = 0;
    for (std::size_t i = 0; i < coords.size(); ++i)
      if ((v >> coords[i]) & 1) pv |= 1u << i;
    out |= Gf2Members{1} << pv;
  }
  return out;
}

// Members vanishing outside the listed coordinates, projected onto them.
inline Gf2Members gf2_section(Gf2Members m, int n, const std::vector<int>& coords) {
  unsigned keep = 0;
  for (int c : coords) keep |= 1u << c;
  Gf2Members out = 0;
  for (unsigned v = 0; v < (1u << n); ++v) {
    if (!((m >> v) & 1) || (v & ~keep)) continue;
    unsigned pv = 0;
    for (std::size_t i = 0; i < coords.size(); ++i)
      if ((v >> coords[i]) & 1) pv |= 1u << i;
    out |= Gf2Members{1} << pv;
  }
  return out;
}

// Every subspace of GF(2)^n, one member set each (echelon-structure scan).
inline std::vector<Gf2Members> gf2_all_subspaces(int n) {
  std::vector<Gf2Members> out;
  for (unsigned pm = 0; pm < (1u << n); ++pm) {
    std::vector<int> piv, rest;
    for (int j = 0; j < n; ++j) ((pm >> j) & 1 ? piv : rest).push_back(j);
    std::vector<std::pair<int, int>> free_pos;  // (row, coordinate)
    for (std::size_t i = 0; i < piv.size(); ++i)
      for (int j : rest)
        if (j > piv[i]) free_pos.emplace_back(static_cast<int>(i), j);
    for (unsigned asg = 0; asg < (1u << free_pos.size()); ++asg) {
      std::vector<unsigned> rows(piv.size());
      for (std::size_t i = 0; i < piv.size(); ++i) rows[i] = 1u << piv[i];
      for (std::size_t k = 0; k < free_pos.size(); ++k)
        if ((asg >> k) & 1) rows[free_pos[k].first] |= 1u << free_pos[k].second;
      out.push_back(gf2_span(rows));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

inline Graph random_graph(Rng& rng, const Labels& edge_labels, int nv) {
  std::vector<Vertex> vs;
  for (int i = 1; i <= nv; ++i) vs.push_back("w" + std::to_string(i));
  std::vector<Edge> es;
  es.reserve(edge_labels.size());
  for (const auto& l : edge_labels)
    es.push_back({l, vs[rnd_int(rng, 0, nv - 1)], vs[rnd_int(rng, 0, nv - 1)]});
  return Graph::make(std::move(vs), std::move(es));
}

// Triangle with every edge doubled: rank-2 graphic matroid on six elements
// with parallel pairs {e1,e6}, {e2,e4}, {e3,e5}.
inline Graph doubled_triangle_graph() {
  return Graph::make({"a", "b", "c"}, {{"e1", "a", "b"},
                                       {"e2", "b", "c"},
                                       {"e3", "c", "a"},
                                       {"e4", "b", "c"},
                                       {"e5", "c", "a"},
                                       {"e6", "a", "b"}});
}

inline Matroid doubled_triangle() { return graphic_matroid(doubled_triangle_graph()); }
inline Labels dtri_S() { return {"e1", "e2", "e3"}; }
inline Labels dtri_Q() { return {"e4", "e5", "e6"}; }

// Two triangles sharing the ports p1, p2; linking them yields a rank-2
// matroid on e1..e6 whose base list is pinned in the link suite.
inline Graph link_left_graph() {
  return Graph::make({"u1", "u2", "u3"}, {{"e1", "u1", "u2"},
                                          {"e2", "u2", "u3"},
                                          {"e3", "u1", "u3"},
                                          {"p1", "u1", "u2"},
                                          {"p2", "u1", "u3"}});
}

inline Graph link_right_graph() {
  return Graph::make({"v1", "v2", "v3"}, {{"p1", "v1", "v2"},
                                          {"p2", "v2", "v3"},
                                          {"e4", "v1", "v3"},
                                          {"e5", "v2", "v3"},
                                          {"e6", "v1", "v2"}});
}

// Seven-edge two-connected graph whose S/Q split has connectivity 2 but no
// two-port graphic decomposition; contracting Q fuses {a,c,g} and {b,d,f},
// contracting S fuses {a,b}, {c,d}, {f,g}.
inline Graph seven_edge_graph() {
  return Graph::make({"a", "b", "c", "d", "f", "g"}, {{"s1", "a", "b"},
                                                      {"s2", "c", "d"},
                                                      {"s3", "f", "g"},
                                                      {"q1", "a", "c"},
                                                      {"q2", "c", "g"},
                                                      {"q3", "b", "d"},
                                                      {"q4", "d", "f"}});
}

inline Labels seven_S() { return {"s1", "s2", "s3"}; }
inline Labels seven_Q() { return {"q1", "q2", "q3", "q4"}; }

// ---------------------------------------------------------------------------
// Matroids
// ---------------------------------------------------------------------------

inline Matroid random_matroid(Rng& rng, const Labels& ground, int depth = 0) {
  const int n = static_cast<int>(ground.size());
  int kind = rnd_int(rng, 0, depth == 0 ? 7 : 4);
  switch (kind) {
    case 0:
      return uniform_matroid(ground, rnd_int(rng, 0, n));
    case 1:
      return linear_matroid(
          random_space<Gfp>(rng, gf(2), ground, rnd_int(rng, 1, std::max(1, n))));
    case 2:
      return linear_matroid(
          random_space<Gfp>(rng, gf(7), ground, rnd_int(rng, 1, std::max(1, n))));
    case 3:
      return graphic_matroid(random_graph(rng, ground, rnd_int(rng, 2, n + 1)));
    case 4:
      return rnd_int(rng, 0, 1) ? free_matroid(ground) : zero_matroid(ground);
    case 5:
      return dual(random_matroid(rng, ground, depth + 1));
    default: {
      if (n < 2) return uniform_matroid(ground, rnd_int(rng, 0, n));
      int cut = rnd_int(rng, 1, n - 1);
      Labels a(ground.begin(), ground.begin() + cut);
      Labels b(ground.begin() + cut, ground.end());
      return direct_sum(random_matroid(rng, a, depth + 1),
                        random_matroid(rng, b, depth + 1));
    }
  }
}

// Same distribution, re-materialized as an explicit base list so that heavy
// downstream rank traffic stays cheap.
inline Matroid random_explicit_matroid(Rng& rng, const Labels& ground) {
  return explicit_matroid(enumerate_bases(random_matroid(rng, ground)));
}

inline std::set<Labels> base_sets(const ExplicitBases& eb) {
  std::set<Labels> out;
  for (Mask b : eb.bases) out.insert(sorted_shortlex(eb.labels(b)));
  return out;
}

inline bool same_bases(const ExplicitBases& a, const ExplicitBases& b) {
  return same_label_set(a.ground, b.ground) && base_sets(a) == base_sets(b);
}

// Right operand := dual of the left with every non-overlap label renamed via
// rename(x). The restriction and contraction minors on the overlap then match
// the dual pair by construction.
inline LinkInstance paired_dual_instance(const Matroid& m_sp, const Labels& P,
                                         const std::string& suffix = "r") {
  Labels S = minus(m_sp.ground(), P);
  std::vector<std::pair<Label, Label>> map;
  map.reserve(S.size());
  for (const auto& s : S) map.emplace_back(s, s + "_" + suffix);
  return make_link_instance(m_sp, relabel(dual(m_sp), map));
}

// Vector-space analogue: right := left with non-shared columns renamed, so
// the two operands have identical restriction and contraction on the overlap.
template <class K>
SpacePair<K> paired_relabel_pair(const Space<K>& v_sp, const Labels& P,
                                 const std::string& suffix = "r") {
  Labels S = minus(v_sp.cols(), P);
  std::vector<std::pair<Label, Label>> map;
  map.reserve(S.size());
  for (const auto& s : S) map.emplace_back(s, s + "_" + suffix);
  return make_space_pair(v_sp, relabel(v_sp, map));
}

// Exhaustive scan for two-element-overlap factorizations of a rank-2 target
// on {e1..e6} with S = {e1,e2,e3}, Q = {e4,e5,e6}.  A factor pair achieving
// the connectivity lower bound |P| = 2 is forced to consist of rank-2
// matroids in which the overlap pair is a base (overlap restriction has full
// rank) and some side pair is a base (overlap contraction has rank zero):
// with coloop padding, the shrunk-overlap size 8 - r(left) - r(right) must
// still be at least 2.  Candidates are therefore all exchange-valid families
// of two-element bases over five elements meeting those two filters.  The
// target is given as its set of bases; returns how many candidate pairs link
// to exactly that base set.
inline long long count_port2_factorizations(const std::set<Labels>& target) {
  uint64_t want = 0;
  Labels six = ground_n(6);
  for (const Labels& b : target) {
    unsigned mask = 0;
    for (const Label& l : b)
      for (size_t i = 0; i < six.size(); ++i)
        if (six[i] == l) mask |= 1u << i;
    want |= uint64_t{1} << mask;
  }

  std::vector<Mask> pairs5;
  for_each_subset_of_size(0b11111, 2, [&](Mask m) { pairs5.push_back(m); });
  Labels g5 = ground_n(5);  // label names are irrelevant to the scan

  // enumerate exchange-valid rank-2 base families containing pMask and at
  // least one base inside sideMask
  auto candidates = [&](Mask pMask, Mask sideMask) {
    std::vector<std::vector<Mask>> out;
    for (unsigned fam = 1; fam < (1u << pairs5.size()); ++fam) {
      std::vector<Mask> bases;
      bool hasP = false, hasSide = false;
      for (size_t i = 0; i < pairs5.size(); ++i)
        if (fam & (1u << i)) {
          bases.push_back(pairs5[i]);
          if (pairs5[i] == pMask) hasP = true;
          if ((pairs5[i] & ~sideMask) == 0) hasSide = true;
        }
      if (!hasP || !hasSide) continue;
      if (brute_exchange_check(ExplicitBases{g5, bases}).has_value()) continue;
      out.push_back(std::move(bases));
    }
    return out;
  };

  // left bits: e1,e2,e3,p1,p2 ; right bits: p1,p2,e4,e5,e6
  auto lefts = candidates(0b11000, 0b00111);
  auto rights = candidates(0b00011, 0b11100);

  long long hits = 0;
  for (const auto& L : lefts)
    for (const auto& R : rights) {
      uint64_t acc = 0;
      for (Mask bl : L)
        for (Mask br : R) {
          unsigned pl = static_cast<unsigned>(bl >> 3);
          unsigned pr = static_cast<unsigned>(br & 3);
          if ((pl | pr) != 3 || (pl & pr) != 0) continue;
          unsigned combo = static_cast<unsigned>(bl & 7) |
                           (static_cast<unsigned>((br >> 2) & 7) << 3);
          acc |= uint64_t{1} << combo;
        }
      if (acc == want) ++hits;
    }
  return hits;
}

struct CompletedFixture {
  Matroid m;  // explicit base list, closed under the forced-corner rule
  Labels S, Q;
};

inline CompletedFixture random_completed(Rng& rng, int n) {
  Labels g = ground_n(n);
  auto [S, Q] = random_split(rng, g, rnd_int(rng, 1, n - 1));
  Matroid m0 = random_matroid(rng, g);
  Matroid mc = explicit_matroid(completion_bruteforce(m0, S, Q));
  return {std::move(mc), std::move(S), std::move(Q)};
}

}  // namespace mtest
