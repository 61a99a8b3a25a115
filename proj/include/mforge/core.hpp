#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace mforge {

using Label = std::string;
using Labels = std::vector<Label>;

// Error taxonomy; the CLI maps these to exit codes 2/3/4/5.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& m) : std::runtime_error(m) {}
};
struct GuardError : std::runtime_error {
  explicit GuardError(const std::string& m) : std::runtime_error(m) {}
};
// An internal invariant failed; the message carries the witness.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& m) : std::logic_error(m) {}
};

// Enumeration guards. Exhaustive walks over 2^n subsets refuse to start when
// n exceeds the guard. MFORGE_GUARD overrides both defaults.
inline int guard_limit(int fallback) {
  if (const char* e = std::getenv("MFORGE_GUARD")) {
    char* end = nullptr;
    long v = std::strtol(e, &end, 10);
    if (end && *end == '\0' && v > 0 && v <= 62) return static_cast<int>(v);
  }
  return fallback;
}
inline int core_guard() { return guard_limit(22); }
inline int oracle_guard() { return guard_limit(12); }

inline void check_guard(std::size_t n, int limit, const std::string& what) {
  if (static_cast<long>(n) > limit)
    throw GuardError(what + ": ground size " + std::to_string(n) +
                     " exceeds enumeration guard " + std::to_string(limit) +
                     " (set MFORGE_GUARD to raise)");
}

// Shortlex label order: by length, then bytewise. Gives e2 < e10 for numbered
// labels and is total and deterministic for arbitrary tokens.
inline bool shortlex_less(const Label& a, const Label& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline Labels sorted_shortlex(Labels v) {
  std::sort(v.begin(), v.end(), shortlex_less);
  return v;
}

inline bool contains_label(const Labels& v, const Label& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

inline Labels concat(const Labels& a, const Labels& b) {
  Labels r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// a with members of b removed, order preserved.
inline Labels minus(const Labels& a, const Labels& b) {
  Labels r;
  for (const auto& x : a)
    if (!contains_label(b, x)) r.push_back(x);
  return r;
}

inline Labels intersection(const Labels& a, const Labels& b) {
  Labels r;
  for (const auto& x : a)
    if (contains_label(b, x)) r.push_back(x);
  return r;
}

inline bool disjoint(const Labels& a, const Labels& b) {
  for (const auto& x : a)
    if (contains_label(b, x)) return false;
  return true;
}

inline bool same_label_set(const Labels& a, const Labels& b) {
  if (a.size() != b.size()) return false;
  return sorted_shortlex(a) == sorted_shortlex(b);
}

inline void require_distinct(const Labels& v, const std::string& what) {
  Labels s = sorted_shortlex(v);
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == s[i - 1])
      throw PreconditionError(what + ": duplicate label '" + s[i] + "'");
}

// Primed copy x -> x'. Collisions with existing labels are the caller's job
// to rule out; relabel() checks.
inline Label primed(const Label& x) { return x + "'"; }

inline Labels primed_all(const Labels& v) {
  Labels r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(primed(x));
  return r;
}

inline std::string join(const Labels& v, const std::string& sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i];
  }
  return s;
}

}  // namespace mforge
