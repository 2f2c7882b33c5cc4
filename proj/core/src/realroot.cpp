#include "latprod/realroot.hpp"

#include <algorithm>

namespace latprod {

namespace {

// Isolate the roots of squarefree p lying in the half-open interval
// (a, b]. Invariant: p(a) != 0. A midpoint that happens to be a root
// ends up isolated as the right endpoint of some sub-interval with
// Sturm count 1 and is emitted as an exact (width zero) root.
void isolate_rec(const IntPoly& p, const std::vector<RatPoly>& chain, const Rat& a,
                 const Rat& b, std::vector<RealRoot>& out) {
  int count = sturm_count(chain, a, b);
  if (count <= 0) return;
  if (count == 1) {
    if (p.sign_at(b) == 0) {
      out.push_back({p, RatInterval(b)});
      return;
    }
    // One simple root strictly inside (a, b): sign change across it.
    out.push_back({p, RatInterval(a, b)});
    return;
  }
  Rat m = (a + b) / 2;
  isolate_rec(p, chain, a, m, out);
  isolate_rec(p, chain, m, b, out);
}

}  // namespace

std::vector<RealRoot> isolate_roots(const IntPoly& p) {
  if (p.degree() < 1) throw domain_error("root isolation needs degree >= 1");
  if (!is_squarefree(p)) throw domain_error("non-squarefree polynomial: " + p.str());
  auto chain = sturm_chain(p);
  Rat bound = root_bound(p);
  // Cauchy bound is strict: the endpoints are never roots.
  std::vector<RealRoot> out;
  isolate_rec(p, chain, -bound, bound, out);
  std::sort(out.begin(), out.end(), [](const RealRoot& x, const RealRoot& y) {
    return x.interval.lo < y.interval.lo;
  });
  return out;
}

RealRoot refine_root(const RealRoot& r, const Rat& eps) {
  if (sgn(eps) <= 0) throw domain_error("refinement width must be positive");
  RealRoot out = r;
  if (out.is_exact()) return out;
  int slo = out.poly.sign_at(out.interval.lo);
  int shi = out.poly.sign_at(out.interval.hi);
  if (slo == 0) return {out.poly, RatInterval(out.interval.lo)};
  if (shi == 0) return {out.poly, RatInterval(out.interval.hi)};
  if (slo * shi > 0) throw domain_error("invalid root interval: no sign change");
  Rat lo = out.interval.lo, hi = out.interval.hi;
  while (hi - lo > eps) {
    Rat m = (lo + hi) / 2;
    int sm = out.poly.sign_at(m);
    if (sm == 0) return {out.poly, RatInterval(m)};
    if (sm == slo)
      lo = m;
    else
      hi = m;
  }
  return {out.poly, RatInterval(lo, hi)};
}

RatInterval eval_interval(const RatPoly& p, const RatInterval& x) {
  RatInterval acc{Rat(0), Rat(0)};
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * x + RatInterval(*it);
  return acc;
}

RatInterval eval_at_root(const RatPoly& p, const RealRoot& r, const Rat& eps) {
  RealRoot scratch = r;
  Rat w = scratch.interval.width();
  if (w > 1) scratch = refine_root(scratch, Rat(1));
  for (;;) {
    RatInterval v = eval_interval(p, scratch.interval);
    if (v.width() <= eps || scratch.is_exact()) return v;
    Rat nw = scratch.interval.width() / 16;
    scratch = refine_root(scratch, nw);
  }
}

}  // namespace latprod
