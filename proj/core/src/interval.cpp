#include "latprod/interval.hpp"

#include <mpfr.h>

namespace latprod {

namespace {

// An MPFR number is a dyadic rational; conversion back is exact, so the
// only rounding in these enclosures is the directed rounding of the
// MPFR operation itself.
Rat rat_from_mpfr(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return Rat(0);
  Int m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rat r(m);
  if (e >= 0) {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  r.canonicalize();
  return r;
}

using unary_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

Rat rounded_apply(unary_fn fn, const Rat& x, long prec, mpfr_rnd_t rnd) {
  mpfr_t t;
  mpfr_init2(t, static_cast<mpfr_prec_t>(prec));
  mpfr_set_q(t, x.get_mpq_t(), rnd);
  fn(t, t, rnd);
  Rat out = rat_from_mpfr(t);
  mpfr_clear(t);
  return out;
}

}  // namespace

RatInterval log_interval(const RatInterval& x, long prec) {
  if (sgn(x.lo) <= 0) throw domain_error("log of an interval touching zero");
  RatInterval r;
  r.lo = rounded_apply(mpfr_log, x.lo, prec, MPFR_RNDD);
  r.hi = rounded_apply(mpfr_log, x.hi, prec, MPFR_RNDU);
  return r;
}

RatInterval exp_interval(const RatInterval& x, long prec) {
  RatInterval r;
  r.lo = rounded_apply(mpfr_exp, x.lo, prec, MPFR_RNDD);
  r.hi = rounded_apply(mpfr_exp, x.hi, prec, MPFR_RNDU);
  if (sgn(r.lo) < 0) r.lo = 0;  // exp is positive; guard hopeless precision
  return r;
}

namespace {

// Largest rational r with r^n <= x, to within eps, by bisection.
Rat nth_root_below(const Rat& x, int n, const Rat& eps) {
  if (sgn(x) < 0) throw domain_error("n-th root of a negative number");
  if (sgn(x) == 0) return Rat(0);
  Rat lo(0), hi = std::max(Rat(1), x);
  while (hi - lo > eps) {
    Rat mid = (lo + hi) / 2;
    if (rat_pow(mid, n) <= x)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

Rat nth_root_above(const Rat& x, int n, const Rat& eps) {
  if (sgn(x) <= 0) return sgn(x) == 0 ? Rat(0) : throw domain_error("n-th root of a negative number");
  Rat lo(0), hi = std::max(Rat(1), x);
  while (hi - lo > eps) {
    Rat mid = (lo + hi) / 2;
    if (rat_pow(mid, n) >= x)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

RatInterval nth_root_interval(const RatInterval& x, int n, const Rat& eps) {
  if (n < 1) throw domain_error("root order must be positive");
  if (sgn(x.lo) < 0) throw domain_error("n-th root of an interval with negative part");
  RatInterval r;
  r.lo = nth_root_below(x.lo, n, eps);
  r.hi = nth_root_above(x.hi, n, eps);
  return r;
}

RatInterval int_dist_interval(const RatInterval& x) {
  // <.> has period 1; reduce by the floor of the midpoint then handle
  // the piecewise-linear tent on [-1, 1].
  Int shift = floor_int(x.mid());
  Rat lo = x.lo - Rat(shift), hi = x.hi - Rat(shift);
  if (hi - lo >= 1) return RatInterval(Rat(0), Rat(1, 2));
  // Now lo in (-1, 1) roughly; tent d(t) = min(|t - k|) over integers.
  auto tent = [](const Rat& t) { return int_dist(t); };
  Rat dlo = tent(lo), dhi = tent(hi);
  RatInterval r;
  r.lo = std::min(dlo, dhi);
  r.hi = std::max(dlo, dhi);
  // Interior extrema: d hits 0 at integers, 1/2 at half-integers.
  Int k0 = ceil_int(lo), k1 = floor_int(hi);
  if (k0 <= k1) r.lo = 0;
  Int m0 = ceil_int(lo - Rat(1, 2)), m1 = floor_int(hi - Rat(1, 2));
  if (m0 <= m1) r.hi = Rat(1, 2);
  return r;
}

std::string format_interval(const RatInterval& x) {
  return "[" + format_rat(x.lo) + ", " + format_rat(x.hi) + "]";
}

}  // namespace latprod
