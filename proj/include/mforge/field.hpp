#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "mforge/core.hpp"

namespace mforge {

// Exact rational scalar. mpq_class keeps values canonical (reduced,
// positive denominator), so equality is bit-exact.
using Rat = mpq_class;

inline Rat rat_zero() { return Rat(0); }
inline std::string to_string(const Rat& x) { return x.get_str(); }

// Prime-field scalar. Every value carries its modulus so arithmetic can be
// checked; spaces only ever mix scalars of one field.
struct Gfp {
  std::int64_t v = 0;  // canonical residue in [0, p)
  std::int64_t p = 0;  // 0 means "unset zero", absorbed by any modulus

  Gfp() = default;
  Gfp(std::int64_t value, std::int64_t mod) : p(mod) {
    if (mod <= 1) throw PreconditionError("gf modulus must be >= 2");
    v = value % mod;
    if (v < 0) v += mod;
  }

  static std::int64_t mod_of(const Gfp& a, const Gfp& b) {
    if (a.p == 0) return b.p;
    if (b.p == 0) return a.p;
    if (a.p != b.p) throw PreconditionError("mixed gf moduli");
    return a.p;
  }

  friend Gfp operator+(const Gfp& a, const Gfp& b) {
    std::int64_t m = mod_of(a, b);
    if (m == 0) return Gfp();
    return Gfp(a.v + b.v, m);
  }
  friend Gfp operator-(const Gfp& a, const Gfp& b) {
    std::int64_t m = mod_of(a, b);
    if (m == 0) return Gfp();
    return Gfp(a.v - b.v, m);
  }
  friend Gfp operator*(const Gfp& a, const Gfp& b) {
    std::int64_t m = mod_of(a, b);
    if (m == 0) return Gfp();
    return Gfp(a.v * b.v, m);
  }
  Gfp operator-() const { return p == 0 ? Gfp() : Gfp(-v, p); }
  friend bool operator==(const Gfp& a, const Gfp& b) {
    if (a.p != 0 && b.p != 0 && a.p != b.p) return false;
    return a.v == b.v;
  }
  friend bool operator!=(const Gfp& a, const Gfp& b) { return !(a == b); }

  Gfp inverse() const {
    if (v == 0) throw PreconditionError("gf inverse of zero");
    // extended Euclid
    std::int64_t a = v, m = p, x0 = 1, x1 = 0;
    while (m) {
      std::int64_t q = a / m;
      std::int64_t t = a - q * m;
      a = m;
      m = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    if (a != 1) throw PreconditionError("gf modulus not prime");
    return Gfp(x0, p);
  }
};

// Uniform scalar protocol used by the templated linear algebra.
inline bool is_zero(const Rat& x) { return x == 0; }
inline bool is_zero(const Gfp& x) { return x.v == 0; }
inline Rat inv(const Rat& x) { return Rat(1) / x; }
inline Gfp inv(const Gfp& x) { return x.inverse(); }
inline Rat make_one(const Rat&) { return Rat(1); }
inline Gfp make_one(const Gfp& ref) { return Gfp(1, ref.p); }
inline std::string to_string(const Gfp& x) { return std::to_string(x.v); }

// Field descriptor for I/O and the CLI's runtime dispatch.
struct FieldDesc {
  bool rational = true;
  std::int64_t p = 0;  // when !rational
  friend bool operator==(const FieldDesc& a, const FieldDesc& b) {
    return a.rational == b.rational && (a.rational || a.p == b.p);
  }
};

}  // namespace mforge
