#include "mforge/matroid.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace mforge {

Matroid Matroid::from_rank_fn(Labels ground, std::function<int(Mask)> rank_fn,
                              std::string desc, bool memoize) {
  if (ground.size() > 62)
    throw PreconditionError("matroid ground set exceeds 62 elements");
  require_distinct(ground, "matroid ground set");
  Matroid m;
  m.n_ = std::make_shared<Node>();
  m.n_->ground = std::move(ground);
  m.n_->rank_fn = std::move(rank_fn);
  m.n_->desc = std::move(desc);
  m.n_->memoize = memoize;
  return m;
}

int Matroid::rank(Mask x) const {
  if (!n_) throw InternalError("rank() on empty matroid handle");
  if (x & ~full_mask()) throw InternalError("rank mask outside ground set");
  if (n_->memoize) {
    std::lock_guard<std::mutex> lg(n_->mtx);
    auto it = n_->memo.find(x);
    if (it != n_->memo.end()) return it->second;
  }
  int r = n_->rank_fn(x);
  if (n_->memoize) {
    std::lock_guard<std::mutex> lg(n_->mtx);
    n_->memo.emplace(x, r);
  }
  return r;
}

int Matroid::bit_of(const Label& x) const {
  for (size_t i = 0; i < n_->ground.size(); ++i)
    if (n_->ground[i] == x) return static_cast<int>(i);
  throw PreconditionError("label '" + x + "' not in matroid ground set");
}

Mask Matroid::mask_of(const Labels& x) const {
  Mask m = 0;
  for (const auto& l : x) {
    Mask bit = Mask{1} << bit_of(l);
    if (m & bit) throw PreconditionError("duplicate label '" + l + "' in subset");
    m |= bit;
  }
  return m;
}

Labels Matroid::labels_of(Mask m) const {
  Labels out;
  for (size_t i = 0; i < n_->ground.size(); ++i)
    if ((m >> i) & 1) out.push_back(n_->ground[i]);
  return out;
}

Labels ExplicitBases::labels(Mask b) const {
  Labels s;
  for (size_t i = 0; i < ground.size(); ++i)
    if ((b >> i) & 1) s.push_back(ground[i]);
  return s;
}

std::vector<Labels> ExplicitBases::as_label_sets() const {
  std::vector<Labels> out;
  out.reserve(bases.size());
  for (Mask b : bases) out.push_back(labels(b));
  return out;
}

std::optional<ExchangeWitness> exchange_violation(const Labels& ground,
                                                  const std::vector<Mask>& bases) {
  if (bases.empty())
    return ExchangeWitness{{}, {}, "", "base list is empty"};
  std::unordered_set<Mask> bset(bases.begin(), bases.end());
  int sz = popcount(bases.front());
  auto labels_of = [&](Mask m) {
    Labels out;
    for (size_t i = 0; i < ground.size(); ++i)
      if ((m >> i) & 1) out.push_back(ground[i]);
    return out;
  };
  for (Mask b : bases) {
    if (popcount(b) != sz)
      return ExchangeWitness{labels_of(bases.front()), labels_of(b), "",
                             "bases of different sizes"};
    if (!ground.empty() && (b & ~(~Mask{0} >> (64 - ground.size()))))
      return ExchangeWitness{labels_of(b), {}, "", "base uses bits outside ground"};
  }
  for (Mask b1 : bases) {
    for (Mask b2 : bases) {
      Mask only1 = b1 & ~b2;
      for (int i = 0; only1 >> i; ++i) {
        if (!((only1 >> i) & 1)) continue;
        Mask removed = b1 & ~(Mask{1} << i);
        bool ok = false;
        Mask only2 = b2 & ~b1;
        for (int j = 0; only2 >> j && !ok; ++j)
          if ((only2 >> j) & 1 && bset.count(removed | (Mask{1} << j))) ok = true;
        if (!ok)
          return ExchangeWitness{labels_of(b1), labels_of(b2), ground[i],
                                 "no exchange partner in b2-b1"};
      }
    }
  }
  return std::nullopt;
}

Matroid explicit_matroid(ExplicitBases eb) {
  check_guard(eb.ground.size(), core_guard(), "explicit matroid ground set");
  require_distinct(eb.ground, "matroid ground set");
  std::sort(eb.bases.begin(), eb.bases.end());
  eb.bases.erase(std::unique(eb.bases.begin(), eb.bases.end()), eb.bases.end());
  if (auto w = exchange_violation(eb.ground, eb.bases)) {
    std::string msg = "base list fails the exchange axiom: " + w->reason;
    if (!w->b1.empty()) msg += " (b1={" + join(w->b1, ",") + "}";
    if (!w->b2.empty()) msg += ", b2={" + join(w->b2, ",") + "}";
    if (!w->e1.empty()) msg += ", e1=" + w->e1;
    if (!w->b1.empty()) msg += ")";
    throw PreconditionError(msg);
  }
  auto bases = std::make_shared<std::vector<Mask>>(eb.bases);
  auto fn = [bases](Mask x) {
    int best = 0;
    for (Mask b : *bases) best = std::max(best, popcount(b & x));
    return best;
  };
  return Matroid::from_rank_fn(eb.ground, fn,
                               "explicit(" + std::to_string(eb.ground.size()) +
                                   " elements, " + std::to_string(bases->size()) +
                                   " bases)");
}

Matroid explicit_matroid(const Labels& ground, const std::vector<Labels>& bases) {
  ExplicitBases eb;
  eb.ground = ground;
  auto idx = [&](const Label& l) {
    for (size_t i = 0; i < ground.size(); ++i)
      if (ground[i] == l) return i;
    throw PreconditionError("base uses label '" + l + "' outside ground set");
  };
  for (const auto& b : bases) {
    Mask m = 0;
    for (const auto& l : b) m |= Mask{1} << idx(l);
    eb.bases.push_back(m);
  }
  return explicit_matroid(std::move(eb));
}

Matroid graphic_matroid(const Graph& g) {
  std::map<Vertex, int> vidx;
  for (const auto& v : g.vertices()) vidx.emplace(v, static_cast<int>(vidx.size()));
  struct E { int t, h; };
  auto edges = std::make_shared<std::vector<E>>();
  for (const auto& e : g.edges())
    edges->push_back({vidx.at(e.tail), vidx.at(e.head)});
  int nv = static_cast<int>(vidx.size());
  auto fn = [edges, nv](Mask x) {
    std::vector<int> parent(nv);
    for (int i = 0; i < nv; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    int r = 0;
    for (int i = 0; x >> i; ++i) {
      if (!((x >> i) & 1)) continue;
      int a = find((*edges)[i].t), b = find((*edges)[i].h);
      if (a != b) {
        parent[a] = b;
        ++r;
      }
    }
    return r;
  };
  return Matroid::from_rank_fn(g.edge_labels(), fn,
                               "graphic(" + std::to_string(edges->size()) + " edges)");
}

Matroid uniform_matroid(Labels ground, int k) {
  if (k < 0 || k > static_cast<int>(ground.size()))
    throw PreconditionError("uniform matroid rank out of range");
  auto fn = [k](Mask x) { return std::min(k, popcount(x)); };
  std::string d = "uniform(" + std::to_string(ground.size()) + "," + std::to_string(k) + ")";
  return Matroid::from_rank_fn(std::move(ground), fn, d, /*memoize=*/false);
}

Matroid free_matroid(Labels ground) {
  int n = static_cast<int>(ground.size());
  return uniform_matroid(std::move(ground), n);
}

Matroid zero_matroid(Labels ground) { return uniform_matroid(std::move(ground), 0); }

Matroid dual(const Matroid& m) {
  Mask full = m.full_mask();
  int rs = m.rank_all();
  auto fn = [m, full, rs](Mask x) { return popcount(x) - rs + m.rank(full & ~x); };
  return Matroid::from_rank_fn(m.ground(), fn, "dual(" + m.describe() + ")");
}

namespace {

// Bit-translation table from a sub-ground (ordered label list) into a parent
// handle's mask space.
std::vector<int> bit_map(const Matroid& parent, const Labels& sub) {
  std::vector<int> map;
  map.reserve(sub.size());
  for (const auto& l : sub) map.push_back(parent.bit_of(l));
  return map;
}

Mask translate(Mask x, const std::vector<int>& map) {
  Mask out = 0;
  for (size_t i = 0; i < map.size(); ++i)
    if ((x >> i) & 1) out |= Mask{1} << map[i];
  return out;
}

}  // namespace

Matroid restrict_to(const Matroid& m, const Labels& T) {
  require_distinct(T, "restriction scope");
  auto map = bit_map(m, T);
  auto fn = [m, map](Mask x) { return m.rank(translate(x, map)); };
  return Matroid::from_rank_fn(T, fn, "restrict(" + m.describe() + ")");
}

Matroid contract_to(const Matroid& m, const Labels& T) {
  require_distinct(T, "contraction scope");
  auto map = bit_map(m, T);
  Mask tmask = 0;
  for (int b : map) tmask |= Mask{1} << b;
  Mask rest = m.full_mask() & ~tmask;
  int base = m.rank(rest);
  auto fn = [m, map, rest, base](Mask x) {
    return m.rank(translate(x, map) | rest) - base;
  };
  return Matroid::from_rank_fn(T, fn, "contract(" + m.describe() + ")");
}

Matroid minor_of(const Matroid& m, const Labels& T1, const Labels& T2) {
  for (const auto& l : T2)
    if (!contains_label(T1, l))
      throw PreconditionError("minor scope: inner set not inside outer set");
  return contract_to(restrict_to(m, T1), T2);
}

Matroid direct_sum(const Matroid& a, const Matroid& b) {
  if (!disjoint(a.ground(), b.ground()))
    throw PreconditionError("direct sum requires disjoint ground sets");
  Labels g = concat(a.ground(), b.ground());
  int na = a.size();
  auto fn = [a, b, na](Mask x) {
    Mask xa = x & ((na == 0) ? 0 : (~Mask{0} >> (64 - na)));
    return a.rank(xa) + b.rank(x >> na);
  };
  return Matroid::from_rank_fn(g, fn,
                               "sum(" + a.describe() + "," + b.describe() + ")");
}

Matroid relabel(const Matroid& m, const std::vector<std::pair<Label, Label>>& map) {
  Labels g = m.ground();
  Labels seen;
  for (const auto& [from, to] : map) {
    if (contains_label(seen, from))
      throw PreconditionError("relabel map repeats source '" + from + "'");
    seen.push_back(from);
    int i = m.bit_of(from);
    g[i] = to;
  }
  require_distinct(g, "relabeled ground set");
  auto fn = [m](Mask x) { return m.rank(x); };
  return Matroid::from_rank_fn(g, fn, m.describe());
}

Matroid primed_copy(const Matroid& m, const Labels& T) {
  std::vector<std::pair<Label, Label>> map;
  for (const auto& l : T) map.emplace_back(l, primed(l));
  return relabel(m, map);
}

void for_each_subset_of_size(Mask universe, int k, const std::function<void(Mask)>& f) {
  int n = popcount(universe);
  if (k < 0 || k > n) return;
  std::vector<int> bits;
  for (int i = 0; universe >> i; ++i)
    if ((universe >> i) & 1) bits.push_back(i);
  if (k == 0) {
    f(0);
    return;
  }
  // Gosper's hack over the compacted k-of-n index space, mapped back out.
  Mask c = (Mask{1} << k) - 1;
  Mask limit = Mask{1} << n;
  while (c < limit) {
    Mask out = 0;
    for (int i = 0; i < n; ++i)
      if ((c >> i) & 1) out |= Mask{1} << bits[i];
    f(out);
    Mask lo = c & -c;
    Mask lz = (c + lo) & ~c;
    c |= lz;
    c &= ~(lz - 1);
    c |= (lz / lo / 2) - 1;
  }
}

ExplicitBases enumerate_bases(const Matroid& m) {
  check_guard(m.size(), core_guard(), "base enumeration ground set");
  ExplicitBases eb;
  eb.ground = m.ground();
  int r = m.rank_all();
  for_each_subset_of_size(m.full_mask(), r, [&](Mask x) {
    if (m.indep(x)) eb.bases.push_back(x);
  });
  return eb;
}

bool matroid_equal(const Matroid& a, const Matroid& b) {
  if (!same_label_set(a.ground(), b.ground()))
    throw PreconditionError("matroid comparison requires identical ground sets");
  check_guard(a.size(), core_guard(), "matroid comparison ground set");
  ExplicitBases ea = enumerate_bases(a);
  std::vector<int> map;  // bit i of a -> bit of b
  map.reserve(ea.ground.size());
  for (const auto& l : ea.ground) map.push_back(b.bit_of(l));
  std::vector<Mask> translated;
  translated.reserve(ea.bases.size());
  for (Mask x : ea.bases) translated.push_back(translate(x, map));
  std::sort(translated.begin(), translated.end());
  ExplicitBases ebb = enumerate_bases(b);
  return translated == ebb.bases;
}

Matroid counting_adapter(const Matroid& m,
                         std::shared_ptr<std::atomic<long long>> counter) {
  auto fn = [m, counter](Mask x) {
    counter->fetch_add(1, std::memory_order_relaxed);
    return m.rank(x);
  };
  return Matroid::from_rank_fn(m.ground(), fn, "counted(" + m.describe() + ")",
                               /*memoize=*/false);
}

}  // namespace mforge
