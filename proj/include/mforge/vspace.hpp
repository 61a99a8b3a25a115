#pragma once

#include <type_traits>
#include <utility>
#include <vector>

#include "mforge/core.hpp"
#include "mforge/field.hpp"

namespace mforge {

template <class K>
K zero_scalar(const FieldDesc& fd) {
  if constexpr (std::is_same_v<K, Rat>)
    return Rat(0);
  else
    return Gfp(0, fd.p);
}

template <class K>
K one_scalar(const FieldDesc& fd) {
  if constexpr (std::is_same_v<K, Rat>)
    return Rat(1);
  else
    return Gfp(1, fd.p);
}

template <class K>
struct RrefResult {
  std::vector<std::vector<K>> rows;
  std::vector<int> pivots;  // column index per row, strictly increasing
};

// Reduced row echelon form: leading entry 1, pivot columns cleared above and
// below, zero rows dropped, rows ordered by pivot column.
template <class K>
RrefResult<K> rref(std::vector<std::vector<K>> m) {
  RrefResult<K> out;
  if (m.empty()) return out;
  const std::size_t ncols = m[0].size();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < ncols && lead < m.size(); ++col) {
    std::size_t sel = lead;
    while (sel < m.size() && is_zero(m[sel][col])) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[lead], m[sel]);
    K piv_inv = inv(m[lead][col]);
    for (auto& e : m[lead]) e = e * piv_inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == lead || is_zero(m[r][col])) continue;
      K f = m[r][col];
      for (std::size_t c = 0; c < ncols; ++c) m[r][c] = m[r][c] - f * m[lead][c];
    }
    out.pivots.push_back(static_cast<int>(col));
    ++lead;
  }
  m.resize(out.pivots.size());
  out.rows = std::move(m);
  return out;
}

// Row space of a labeled matrix over an exact field, held in canonical RREF.
// Values are immutable; all operations return fresh spaces.
template <class K>
class Space {
 public:
  Space() = default;

  static Space make(FieldDesc fd, Labels cols, std::vector<std::vector<K>> rows) {
    require_distinct(cols, "space columns");
    for (const auto& r : rows)
      if (r.size() != cols.size())
        throw PreconditionError("row length " + std::to_string(r.size()) +
                                " != column count " + std::to_string(cols.size()));
    if constexpr (std::is_same_v<K, Gfp>) {
      if (fd.rational || fd.p < 2)
        throw PreconditionError("gf space requires a prime modulus");
      for (auto& r : rows)
        for (auto& e : r) {
          if (e.p == 0)
            e = Gfp(e.v, fd.p);
          else if (e.p != fd.p)
            throw PreconditionError("mixed gf moduli in space rows");
        }
    }
    Space s;
    s.fd_ = fd;
    s.cols_ = std::move(cols);
    auto rr = rref(std::move(rows));
    s.rows_ = std::move(rr.rows);
    s.pivots_ = std::move(rr.pivots);
    return s;
  }

  const FieldDesc& field() const { return fd_; }
  const Labels& cols() const { return cols_; }
  const std::vector<std::vector<K>>& matrix() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  int col_index(const Label& x) const {
    for (std::size_t i = 0; i < cols_.size(); ++i)
      if (cols_[i] == x) return static_cast<int>(i);
    throw PreconditionError("unknown column label '" + x + "'");
  }

  K zero() const { return zero_scalar<K>(fd_); }

 private:
  FieldDesc fd_{};
  Labels cols_;
  std::vector<std::vector<K>> rows_;
  std::vector<int> pivots_;
};

using QSpace = Space<Rat>;
using PSpace = Space<Gfp>;

inline FieldDesc rational_field() { return FieldDesc{true, 0}; }
inline FieldDesc gf(std::int64_t p) { return FieldDesc{false, p}; }

template <class K>
Space<K> zero_space(FieldDesc fd, Labels cols) {
  return Space<K>::make(fd, std::move(cols), {});
}

template <class K>
Space<K> free_space(FieldDesc fd, Labels cols) {
  std::vector<std::vector<K>> rows(cols.size(),
                                   std::vector<K>(cols.size(), zero_scalar<K>(fd)));
  for (std::size_t i = 0; i < cols.size(); ++i) rows[i][i] = one_scalar<K>(fd);
  return Space<K>::make(fd, std::move(cols), std::move(rows));
}

namespace detail {
template <class K>
std::vector<int> indices_of(const Space<K>& V, const Labels& T) {
  std::vector<int> idx;
  idx.reserve(T.size());
  for (const auto& x : T) idx.push_back(V.col_index(x));
  return idx;
}
}  // namespace detail

// V restricted to T: projections of members onto the T coordinates.
template <class K>
Space<K> restrict_to(const Space<K>& V, const Labels& T) {
  require_distinct(T, "restriction set");
  auto idx = detail::indices_of(V, T);
  std::vector<std::vector<K>> rows;
  rows.reserve(V.matrix().size());
  for (const auto& r : V.matrix()) {
    std::vector<K> row;
    row.reserve(idx.size());
    for (int j : idx) row.push_back(r[j]);
    rows.push_back(std::move(row));
  }
  return Space<K>::make(V.field(), T, std::move(rows));
}

// V contracted to T: members vanishing outside T, projected onto T.
template <class K>
Space<K> contract_to(const Space<K>& V, const Labels& T) {
  require_distinct(T, "contraction set");
  auto tidx = detail::indices_of(V, T);
  std::vector<bool> in_t(V.cols().size(), false);
  for (int j : tidx) in_t[j] = true;
  std::vector<int> cidx;
  for (std::size_t j = 0; j < V.cols().size(); ++j)
    if (!in_t[j]) cidx.push_back(static_cast<int>(j));
  // Eliminate with the complement columns leading; rows vanishing there span
  // the contraction.
  std::vector<std::vector<K>> perm;
  perm.reserve(V.matrix().size());
  for (const auto& r : V.matrix()) {
    std::vector<K> row;
    row.reserve(r.size());
    for (int j : cidx) row.push_back(r[j]);
    for (int j : tidx) row.push_back(r[j]);
    perm.push_back(std::move(row));
  }
  auto rr = rref(std::move(perm));
  std::vector<std::vector<K>> rows;
  const int nc = static_cast<int>(cidx.size());
  for (std::size_t i = 0; i < rr.rows.size(); ++i) {
    if (rr.pivots[i] < nc) continue;
    rows.emplace_back(rr.rows[i].begin() + nc, rr.rows[i].end());
  }
  return Space<K>::make(V.field(), T, std::move(rows));
}

// (V∘T1)×T2; equals the contract-first route, asserted in tests.
template <class K>
Space<K> minor_of(const Space<K>& V, const Labels& T1, const Labels& T2) {
  for (const auto& x : T2)
    if (!contains_label(T1, x))
      throw PreconditionError("minor: '" + x + "' not in the restriction set");
  return contract_to(restrict_to(V, T1), T2);
}

namespace detail {
// Common padded ground for two spaces: left's columns then right's extras.
template <class K>
Labels joint_ground(const Space<K>& V, const Space<K>& W) {
  if (!(V.field() == W.field()))
    throw PreconditionError("field mismatch between spaces");
  return concat(V.cols(), minus(W.cols(), V.cols()));
}

template <class K>
std::vector<std::vector<K>> pad_rows(const Space<K>& V, const Labels& ground) {
  std::vector<std::vector<K>> rows;
  rows.reserve(V.matrix().size());
  std::vector<int> pos(V.cols().size());
  for (std::size_t j = 0; j < V.cols().size(); ++j) {
    auto it = std::find(ground.begin(), ground.end(), V.cols()[j]);
    pos[j] = static_cast<int>(it - ground.begin());
  }
  for (const auto& r : V.matrix()) {
    std::vector<K> row(ground.size(), zero_scalar<K>(V.field()));
    for (std::size_t j = 0; j < r.size(); ++j) row[pos[j]] = r[j];
    rows.push_back(std::move(row));
  }
  return rows;
}
}  // namespace detail

// Extended sum: members are sums of zero-padded members of each operand.
template <class K>
Space<K> ext_sum(const Space<K>& V, const Space<K>& W) {
  Labels g = detail::joint_ground(V, W);
  auto rows = detail::pad_rows(V, g);
  auto wr = detail::pad_rows(W, g);
  rows.insert(rows.end(), wr.begin(), wr.end());
  return Space<K>::make(V.field(), std::move(g), std::move(rows));
}

// All vectors orthogonal to V under the standard dot product.
template <class K>
Space<K> orthogonal(const Space<K>& V) {
  const std::size_t n = V.cols().size();
  std::vector<bool> is_piv(n, false);
  for (int p : V.pivots()) is_piv[p] = true;
  std::vector<std::vector<K>> rows;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_piv[j]) continue;
    std::vector<K> g(n, V.zero());
    g[j] = one_scalar<K>(V.field());
    for (std::size_t i = 0; i < V.matrix().size(); ++i)
      g[V.pivots()[i]] = -V.matrix()[i][j];
    rows.push_back(std::move(g));
  }
  return Space<K>::make(V.field(), V.cols(), std::move(rows));
}

// Extended intersection: members whose projections lie in both operands.
// Computed through orthogonal complements of the padded operands.
template <class K>
Space<K> ext_intersect(const Space<K>& V, const Space<K>& W) {
  return orthogonal(ext_sum(orthogonal(V), orthogonal(W)));
}

template <class K>
Space<K> negate_on(const Space<K>& V, const Labels& Y) {
  auto idx = detail::indices_of(V, Y);
  auto rows = V.matrix();
  for (auto& r : rows)
    for (int j : idx) r[j] = -r[j];
  return Space<K>::make(V.field(), V.cols(), std::move(rows));
}

template <class K>
Space<K> relabel(const Space<K>& V, const std::vector<std::pair<Label, Label>>& map) {
  Labels cols = V.cols();
  std::vector<bool> seen(cols.size(), false);
  for (const auto& [from, to] : map) {
    int j = V.col_index(from);
    if (seen[j]) throw PreconditionError("relabel: duplicate source '" + from + "'");
    seen[j] = true;
    cols[j] = to;
  }
  require_distinct(cols, "relabel result");
  return Space<K>::make(V.field(), std::move(cols), V.matrix());
}

// Primed copy of the labels in T (all columns keep their positions).
template <class K>
Space<K> primed_copy(const Space<K>& V, const Labels& T) {
  std::vector<std::pair<Label, Label>> map;
  map.reserve(T.size());
  for (const auto& x : T) map.emplace_back(x, primed(x));
  return relabel(V, map);
}

template <class K>
Labels shared_columns(const Space<K>& V, const Space<K>& W) {
  return intersection(V.cols(), W.cols());
}

// Matched composition over the shared columns P: pairs (f_S, g_Q) that agree
// with a common h_P in both operands. Canonical route: restrict the extended
// intersection to the non-shared columns.
template <class K>
Space<K> matched_compose(const Space<K>& V, const Space<K>& W) {
  Labels P = shared_columns(V, W);
  Labels T = concat(minus(V.cols(), P), minus(W.cols(), P));
  return restrict_to(ext_intersect(V, W), T);
}

// Verification route for matched composition: contract the extended sum of V
// and the P-negated W. Kept separate so the two derivations stay independent.
template <class K>
Space<K> matched_compose_sum_route(const Space<K>& V, const Space<K>& W) {
  Labels P = shared_columns(V, W);
  Labels T = concat(minus(V.cols(), P), minus(W.cols(), P));
  return contract_to(ext_sum(V, negate_on(W, P)), T);
}

template <class K>
Labels column_base(const Space<K>& V) {
  Labels b;
  b.reserve(V.pivots().size());
  for (int p : V.pivots()) b.push_back(V.cols()[p]);
  return b;
}

namespace detail {
// Re-express W on the column order of "cols" (same label set required).
template <class K>
Space<K> align_to(const Space<K>& W, const Labels& cols) {
  if (W.cols() == cols) return W;
  std::vector<std::vector<K>> rows;
  rows.reserve(W.matrix().size());
  auto idx = indices_of(W, cols);
  for (const auto& r : W.matrix()) {
    std::vector<K> row;
    row.reserve(idx.size());
    for (int j : idx) row.push_back(r[j]);
    rows.push_back(std::move(row));
  }
  return Space<K>::make(W.field(), cols, std::move(rows));
}
}  // namespace detail

// W ⊆ V as sets of vectors (same field and label set required).
template <class K>
bool contains(const Space<K>& V, const Space<K>& W) {
  if (!(V.field() == W.field())) return false;
  if (!same_label_set(V.cols(), W.cols())) return false;
  Space<K> Wa = detail::align_to(W, V.cols());
  auto rows = V.matrix();
  auto extra = Wa.matrix();
  rows.insert(rows.end(), extra.begin(), extra.end());
  auto rr = rref(std::move(rows));
  return static_cast<int>(rr.rows.size()) == V.rank();
}

template <class K>
bool member_of(const Space<K>& V, const std::vector<K>& vec) {
  return contains(V, Space<K>::make(V.field(), V.cols(), {vec}));
}

template <class K>
bool operator==(const Space<K>& V, const Space<K>& W) {
  if (!(V.field() == W.field())) return false;
  if (!same_label_set(V.cols(), W.cols())) return false;
  Space<K> Wa = detail::align_to(W, V.cols());
  return V.matrix() == Wa.matrix();
}

template <class K>
bool operator!=(const Space<K>& V, const Space<K>& W) {
  return !(V == W);
}

}  // namespace mforge
