#ifndef LATPROD_REALROOT_HPP
#define LATPROD_REALROOT_HPP

#include <vector>

#include "latprod/poly.hpp"

namespace latprod {

// A real algebraic number: squarefree integer polynomial plus an
// isolating rational interval. Either the polynomial changes sign
// across the endpoints, or lo == hi and the root is that rational.
struct RealRoot {
  IntPoly poly;
  RatInterval interval;

  bool is_exact() const { return interval.is_point(); }
  double approx() const { return to_double(interval.mid()); }
};

// All distinct real roots of squarefree p, sorted ascending, in
// pairwise disjoint intervals. Throws domain_error on non-squarefree
// input (reduce by gcd with the derivative first).
std::vector<RealRoot> isolate_roots(const IntPoly& p);

// Bisect until the interval width is <= eps. Idempotent once narrow
// enough; the root never leaves the interval.
RealRoot refine_root(const RealRoot& r, const Rat& eps);

// Interval extension of p by Horner's rule: contains p(t) for every t
// in x. Exact endpoints, no rounding.
RatInterval eval_interval(const RatPoly& p, const RatInterval& x);

// Evaluate p on the root to width <= eps (refines a scratch copy of
// the root interval as needed).
RatInterval eval_at_root(const RatPoly& p, const RealRoot& r, const Rat& eps);

}  // namespace latprod

#endif
