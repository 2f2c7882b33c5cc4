#ifndef LATPROD_POLY_HPP
#define LATPROD_POLY_HPP

#include <vector>

#include "latprod/interval.hpp"
#include "latprod/rational.hpp"

namespace latprod {

// Univariate polynomial with integer coefficients, ascending degree
// order, leading coefficient nonzero (the zero polynomial has an empty
// coefficient vector).
struct IntPoly {
  std::vector<Int> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs);
  static IntPoly from_longs(const std::vector<long>& coeffs);

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const Int& leading() const { return c.back(); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }

  Rat eval(const Rat& x) const;
  int sign_at(const Rat& x) const { return sgn(eval(x)); }
  IntPoly derivative() const;
  std::string str() const;  // e.g. "x^3 - 3*x - 1"
};

// Same, with rational coefficients.
struct RatPoly {
  std::vector<Rat> c;

  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs);
  static RatPoly from_int(const IntPoly& p);

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const Rat& leading() const { return c.back(); }

  Rat eval(const Rat& x) const;
  RatPoly derivative() const;
};

RatPoly operator+(const RatPoly& a, const RatPoly& b);
RatPoly operator-(const RatPoly& a, const RatPoly& b);
RatPoly operator*(const RatPoly& a, const RatPoly& b);
RatPoly operator*(const Rat& s, const RatPoly& a);

// Euclidean division: a = q*b + r with deg r < deg b.
struct RatPolyDiv {
  RatPoly quot, rem;
};
RatPolyDiv divmod(const RatPoly& a, const RatPoly& b);

// Monic gcd over the rationals.
RatPoly poly_gcd(const RatPoly& a, const RatPoly& b);

// Resultant Res_x(a, b), exact. For monic a this is the product of
// b evaluated at the roots of a.
Rat resultant(const RatPoly& a, const RatPoly& b);

// gcd(p, p') is constant.
bool is_squarefree(const IntPoly& p);

// Exact division of p by the linear factor (den*x - num) where
// num/den is a rational root of p; p must vanish there.
IntPoly deflate_rational_root(const IntPoly& p, const Rat& root);

// Sturm chain of p (signs only are consumed downstream).
std::vector<RatPoly> sturm_chain(const IntPoly& p);

// Number of distinct real roots of squarefree p in the half-open
// interval (a, b]; with the full chain precomputed.
int sturm_count(const std::vector<RatPoly>& chain, const Rat& a, const Rat& b);

// Distinct real roots of squarefree p over the whole line.
int sturm_count_all(const IntPoly& p);

// Cauchy bound: every real root lies in (-B, B).
Rat root_bound(const IntPoly& p);

}  // namespace latprod

#endif
