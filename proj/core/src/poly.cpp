#include "latprod/poly.hpp"

#include <algorithm>
#include <sstream>

namespace latprod {

namespace {

template <class P>
void trim(P& p) {
  while (!p.c.empty() && sgn(p.c.back()) == 0) p.c.pop_back();
}

}  // namespace

IntPoly::IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(*this); }

IntPoly IntPoly::from_longs(const std::vector<long>& coeffs) {
  std::vector<Int> v(coeffs.begin(), coeffs.end());
  return IntPoly(std::move(v));
}

Rat IntPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Rat(*it);
  return acc;
}

IntPoly IntPoly::derivative() const {
  std::vector<Int> d;
  for (size_t i = 1; i < c.size(); ++i) d.push_back(Int(static_cast<long>(i)) * c[i]);
  return IntPoly(std::move(d));
}

std::string IntPoly::str() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& a = c[i];
    if (sgn(a) == 0) continue;
    Int mag = abs(a);
    if (first) {
      if (sgn(a) < 0) os << "-";
      first = false;
    } else {
      os << (sgn(a) < 0 ? " - " : " + ");
    }
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i > 0) {
      if (mag != 1) os << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

RatPoly::RatPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(*this); }

RatPoly RatPoly::from_int(const IntPoly& p) {
  std::vector<Rat> v;
  v.reserve(p.c.size());
  for (const auto& a : p.c) v.emplace_back(a);
  return RatPoly(std::move(v));
}

Rat RatPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatPoly RatPoly::derivative() const {
  std::vector<Rat> d;
  for (size_t i = 1; i < c.size(); ++i) d.push_back(Rat(static_cast<long>(i)) * c[i]);
  return RatPoly(std::move(d));
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rat> v(std::max(a.c.size(), b.c.size()), Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) v[i] += b.c[i];
  return RatPoly(std::move(v));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + Rat(-1) * b; }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly();
  std::vector<Rat> v(a.c.size() + b.c.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
  return RatPoly(std::move(v));
}

RatPoly operator*(const Rat& s, const RatPoly& a) {
  std::vector<Rat> v(a.c);
  for (auto& x : v) x *= s;
  return RatPoly(std::move(v));
}

RatPolyDiv divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw domain_error("polynomial division by zero");
  RatPoly rem = a;
  std::vector<Rat> q(std::max<int>(a.degree() - b.degree() + 1, 0), Rat(0));
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    int k = rem.degree() - b.degree();
    Rat coef = rem.leading() / b.leading();
    q[k] = coef;
    // rem -= coef * x^k * b
    for (size_t i = 0; i < b.c.size(); ++i) rem.c[i + k] -= coef * b.c[i];
    trim(rem);
  }
  return {RatPoly(std::move(q)), rem};
}

RatPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a, y = b;
  while (!y.is_zero()) {
    RatPoly r = divmod(x, y).rem;
    x = y;
    y = r;
  }
  if (!x.is_zero() && x.leading() != 1) x = (Rat(1) / x.leading()) * x;
  return x;
}

Rat resultant(const RatPoly& a, const RatPoly& b) {
  // Euclidean-remainder recursion; exact over the rationals.
  if (a.is_zero() || b.is_zero()) return Rat(0);
  if (b.degree() == 0) return rat_pow(b.c[0], a.degree());
  if (a.degree() == 0) return rat_pow(a.c[0], b.degree());
  RatPoly r = divmod(a, b).rem;
  int da = a.degree(), db = b.degree();
  Rat sign = (static_cast<long long>(da) * db) % 2 == 0 ? Rat(1) : Rat(-1);
  if (r.is_zero()) return Rat(0);
  int dr = r.degree();
  return sign * rat_pow(b.leading(), da - dr) * resultant(b, r);
}

bool is_squarefree(const IntPoly& p) {
  if (p.degree() < 1) return true;
  RatPoly g = poly_gcd(RatPoly::from_int(p), RatPoly::from_int(p.derivative()));
  return g.degree() == 0;
}

IntPoly deflate_rational_root(const IntPoly& p, const Rat& root) {
  if (sgn(p.eval(root)) != 0) throw domain_error("deflation point is not a root");
  // Divide by (den*x - num); the quotient of a primitive-enough integer
  // polynomial stays integral after clearing contents.
  std::vector<Rat> lin = {-Rat(root.get_num()), Rat(root.get_den())};
  RatPolyDiv d = divmod(RatPoly::from_int(p), RatPoly(std::move(lin)));
  if (!d.rem.is_zero()) throw domain_error("non-exact deflation");
  // Clear denominators.
  Int den(1);
  for (const auto& q : d.quot.c) {
    Int l;
    mpz_lcm(l.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    den = l;
  }
  std::vector<Int> ic;
  ic.reserve(d.quot.c.size());
  for (const auto& q : d.quot.c) {
    Rat scaled = q * Rat(den);
    ic.push_back(Int(scaled.get_num()));
  }
  return IntPoly(std::move(ic));
}

std::vector<RatPoly> sturm_chain(const IntPoly& p) {
  std::vector<RatPoly> chain;
  chain.push_back(RatPoly::from_int(p));
  chain.push_back(RatPoly::from_int(p.derivative()));
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    RatPoly r = divmod(chain[chain.size() - 2], chain.back()).rem;
    chain.push_back(Rat(-1) * r);
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

namespace {

int sign_variations_at(const std::vector<RatPoly>& chain, const Rat& x) {
  int var = 0, prev = 0;
  for (const auto& q : chain) {
    int s = sgn(q.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

int sign_variations_at_inf(const std::vector<RatPoly>& chain, int dir) {
  int var = 0, prev = 0;
  for (const auto& q : chain) {
    if (q.is_zero()) continue;
    int s = sgn(q.leading());
    if (dir < 0 && q.degree() % 2 == 1) s = -s;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

}  // namespace

int sturm_count(const std::vector<RatPoly>& chain, const Rat& a, const Rat& b) {
  return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

int sturm_count_all(const IntPoly& p) {
  if (p.degree() < 1) return 0;
  auto chain = sturm_chain(p);
  return sign_variations_at_inf(chain, -1) - sign_variations_at_inf(chain, +1);
}

Rat root_bound(const IntPoly& p) {
  if (p.degree() < 1) return Rat(1);
  Rat maxratio(0);
  Rat lead = Rat(abs(p.leading()));
  for (int i = 0; i < p.degree(); ++i) {
    Rat r = Rat(abs(p.c[i])) / lead;
    if (r > maxratio) maxratio = r;
  }
  return maxratio + 1;
}

}  // namespace latprod
