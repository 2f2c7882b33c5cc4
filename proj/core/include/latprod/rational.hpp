#ifndef LATPROD_RATIONAL_HPP
#define LATPROD_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "latprod/errors.hpp"

namespace latprod {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
  if (sgn(den) == 0) throw domain_error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline Int floor_int(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline Int ceil_int(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

// Nearest integer, ties toward +infinity (deterministic).
inline Int round_int(const Rat& x) { return floor_int(x + Rat(1, 2)); }

// Distance from x to the nearest integer, exact.
inline Rat int_dist(const Rat& x) {
  Rat f = x - Rat(floor_int(x));
  Rat other = 1 - f;
  return f <= other ? f : other;
}

// Rational power with integer exponent (e >= 0, or x != 0).
inline Rat rat_pow(const Rat& x, long e) {
  if (e < 0) {
    if (sgn(x) == 0) throw domain_error("0 to a negative power");
    return rat_pow(Rat(1) / x, -e);
  }
  Rat acc(1), base(x);
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline Rat pow10(long k) { return rat_pow(Rat(10), k); }
inline Rat pow2(long k) { return rat_pow(Rat(2), k); }

// "p/q" or "p"; used everywhere rationals cross a file or CLI boundary.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw config_error("empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0) throw config_error("bad rational literal: " + s);
  r.canonicalize();
  return r;
}

inline std::string format_rat(const Rat& x) { return x.get_str(); }

// Fixed-point decimal with `digits` fractional digits, round half up.
// Deterministic; used for human-readable columns next to exact ones.
inline std::string format_decimal(const Rat& x, int digits) {
  Rat ax = rat_abs(x);
  Int scaled = floor_int(ax * pow10(digits) + Rat(1, 2));
  std::string s = scaled.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  if (sgn(x) < 0 && scaled != 0) s.insert(0, "-");
  return s;
}

inline double to_double(const Rat& x) { return x.get_d(); }

}  // namespace latprod

#endif
