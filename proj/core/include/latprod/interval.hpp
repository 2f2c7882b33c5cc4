#ifndef LATPROD_INTERVAL_HPP
#define LATPROD_INTERVAL_HPP

#include <algorithm>
#include <string>

#include "latprod/rational.hpp"

namespace latprod {

// Closed interval with exact rational endpoints. All arithmetic here is
// exact (no rounding), so enclosures are genuine: if t is in x then f(t)
// is in f(x). Transcendental enclosures (log/exp) round outward through
// MPFR and are implemented in interval.cpp.
struct RatInterval {
  Rat lo, hi;

  RatInterval() : lo(0), hi(0) {}
  explicit RatInterval(const Rat& point) : lo(point), hi(point) {}
  RatInterval(const Rat& l, const Rat& h) : lo(l), hi(h) {
    if (lo > hi) throw domain_error("interval endpoints out of order");
  }

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
  bool excludes_zero() const { return sgn(lo) > 0 || sgn(hi) < 0; }
  // Largest absolute value attained on the interval.
  Rat abs_ub() const { return std::max(rat_abs(lo), rat_abs(hi)); }
  // Smallest absolute value attained (0 if the interval straddles it).
  Rat abs_lb() const {
    if (contains_zero()) return Rat(0);
    return sgn(lo) > 0 ? lo : rat_abs(hi);
  }
};

inline RatInterval operator+(const RatInterval& a, const RatInterval& b) {
  RatInterval r;
  r.lo = a.lo + b.lo;
  r.hi = a.hi + b.hi;
  return r;
}

inline RatInterval operator-(const RatInterval& a) {
  RatInterval r;
  r.lo = -a.hi;
  r.hi = -a.lo;
  return r;
}

inline RatInterval operator-(const RatInterval& a, const RatInterval& b) { return a + (-b); }

inline RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  RatInterval r;
  r.lo = std::min(std::min(p1, p2), std::min(p3, p4));
  r.hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return r;
}

inline RatInterval operator*(const Rat& c, const RatInterval& a) {
  return RatInterval(c) * a;
}

inline RatInterval operator+(const Rat& c, const RatInterval& a) {
  return RatInterval(c) + a;
}

// Reciprocal; requires the interval to exclude zero.
inline RatInterval recip(const RatInterval& a) {
  if (!a.excludes_zero()) throw precision_error("division by an interval containing zero");
  RatInterval r;
  r.lo = Rat(1) / a.hi;
  r.hi = Rat(1) / a.lo;
  return r;
}

inline RatInterval operator/(const RatInterval& a, const RatInterval& b) { return a * recip(b); }

inline RatInterval interval_abs(const RatInterval& a) {
  RatInterval r;
  r.lo = a.abs_lb();
  r.hi = a.abs_ub();
  return r;
}

inline RatInterval hull(const RatInterval& a, const RatInterval& b) {
  RatInterval r;
  r.lo = std::min(a.lo, b.lo);
  r.hi = std::max(a.hi, b.hi);
  return r;
}

inline bool disjoint(const RatInterval& a, const RatInterval& b) {
  return a.hi < b.lo || b.hi < a.lo;
}

// Enclosure of log(x); requires x.lo > 0. `prec` is the MPFR working
// precision in bits; endpoints are rounded outward.
RatInterval log_interval(const RatInterval& x, long prec = 128);

// Enclosure of exp(x).
RatInterval exp_interval(const RatInterval& x, long prec = 128);

// Enclosure of the positive n-th root of a positive interval, computed
// by exact bisection to absolute width <= eps.
RatInterval nth_root_interval(const RatInterval& x, int n, const Rat& eps);

// Enclosure of the distance from x to the nearest integer.
RatInterval int_dist_interval(const RatInterval& x);

std::string format_interval(const RatInterval& x);

}  // namespace latprod

#endif
