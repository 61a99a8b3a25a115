#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mforge/core.hpp"
#include "mforge/graph.hpp"
#include "mforge/vspace.hpp"

namespace mforge {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }

// Matroid as an immutable rank oracle over a labeled ground set. Derived
// handles (duals, minors, unions, ...) stack rank functions; every handle
// memoizes by subset bitmask, so deep derivations stay polynomial per query.
class Matroid {
 public:
  Matroid() = default;

  static Matroid from_rank_fn(Labels ground, std::function<int(Mask)> rank_fn,
                              std::string desc, bool memoize = true);

  const Labels& ground() const { return n_->ground; }
  int size() const { return static_cast<int>(n_->ground.size()); }
  const std::string& describe() const { return n_->desc; }

  int rank(Mask x) const;
  int rank(const Labels& x) const { return rank(mask_of(x)); }
  int rank_all() const { return rank(full_mask()); }
  bool indep(Mask x) const { return rank(x) == popcount(x); }
  bool indep(const Labels& x) const { return indep(mask_of(x)); }

  Mask full_mask() const {
    return n_->ground.empty() ? 0 : (~Mask{0} >> (64 - n_->ground.size()));
  }
  Mask mask_of(const Labels& x) const;
  Labels labels_of(Mask m) const;
  int bit_of(const Label& x) const;

  bool valid() const { return static_cast<bool>(n_); }

 private:
  struct Node {
    Labels ground;
    std::function<int(Mask)> rank_fn;
    std::string desc;
    bool memoize = true;
    mutable std::mutex mtx;
    mutable std::unordered_map<Mask, int> memo;
  };
  std::shared_ptr<Node> n_;
};

struct ExplicitBases {
  Labels ground;
  std::vector<Mask> bases;  // sorted ascending, bits follow ground order

  Labels labels(Mask b) const;
  std::vector<Labels> as_label_sets() const;
};

struct ExchangeWitness {
  Labels b1, b2;
  Label e1;
  std::string reason;
};

// Base-exchange validation: for every b1, b2 and e1 in b1-b2 there must be
// e2 in b2-b1 with b1-e1+e2 a base. Returns a witness on failure.
std::optional<ExchangeWitness> exchange_violation(const Labels& ground,
                                                  const std::vector<Mask>& bases);

Matroid explicit_matroid(const Labels& ground, const std::vector<Labels>& bases);
Matroid explicit_matroid(ExplicitBases eb);

Matroid graphic_matroid(const Graph& g);
Matroid uniform_matroid(Labels ground, int k);
Matroid free_matroid(Labels ground);
Matroid zero_matroid(Labels ground);

Matroid dual(const Matroid& m);
Matroid restrict_to(const Matroid& m, const Labels& T);
Matroid contract_to(const Matroid& m, const Labels& T);
Matroid minor_of(const Matroid& m, const Labels& T1, const Labels& T2);
Matroid direct_sum(const Matroid& a, const Matroid& b);
Matroid relabel(const Matroid& m, const std::vector<std::pair<Label, Label>>& map);
Matroid primed_copy(const Matroid& m, const Labels& T);

// Column-independence matroid of a labeled row space.
template <class K>
Matroid linear_matroid(const Space<K>& V) {
  auto cols = V.cols();
  auto mat = V.matrix();
  FieldDesc fd = V.field();
  auto fn = [mat, fd](Mask x) {
    std::vector<std::vector<K>> sel;  // selected columns as rows
    for (int j = 0; x >> j; ++j) {
      if (!((x >> j) & 1)) continue;
      std::vector<K> col;
      col.reserve(mat.size());
      for (const auto& r : mat) col.push_back(r[j]);
      sel.push_back(std::move(col));
    }
    return static_cast<int>(rref(std::move(sel)).rows.size());
  };
  return Matroid::from_rank_fn(cols, fn, "linear(" + std::to_string(cols.size()) + " cols)");
}

ExplicitBases enumerate_bases(const Matroid& m);
bool matroid_equal(const Matroid& a, const Matroid& b);

// Pass-through handle that counts every rank call made through it (no memo),
// used to measure oracle-call budgets.
Matroid counting_adapter(const Matroid& m, std::shared_ptr<std::atomic<long long>> counter);

// Iterate all size-k submasks of `universe` in increasing numeric order.
void for_each_subset_of_size(Mask universe, int k, const std::function<void(Mask)>& f);

}  // namespace mforge
